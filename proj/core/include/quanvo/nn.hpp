// Copyright 2026 The Quanvo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "quanvo/image.hpp"
#include "quanvo/rng.hpp"

namespace quanvo::nn {

/// Layers pass rank-3 tensors (height, width, channels), row-major; flat
/// vectors travel as (1, 1, n).
using Tensor = ImageTensor;

using Shape = std::array<std::size_t, 3>;

/// A named parameter tensor and its gradient accumulator, both owned by
/// the layer the view came from.
struct ParamView {
    std::string name;
    std::vector<double>* value = nullptr;
    std::vector<double>* grad = nullptr;
    std::vector<std::size_t> shape;
};

/// One differentiable layer. forward stores whatever backward needs, so a
/// layer instance serves exactly one sample at a time; backward returns
/// the input gradient and accumulates parameter gradients (zeroed via
/// zero_grad between batches).
class Layer {
  public:
    virtual ~Layer() = default;
    virtual Tensor forward(const Tensor& x, bool training) = 0;
    virtual Tensor backward(const Tensor& grad_out) = 0;
    virtual std::vector<ParamView> params() { return {}; }
    virtual const std::string& name() const = 0;
    virtual const char* kind() const = 0;
};

enum class Padding { Valid, Same };

/// 2-D cross-correlation (no kernel flip). Weights are (kh, kw, in_c,
/// out_c) row-major; "same" padding puts floor((k-1)/2) zeros before each
/// spatial axis so even kernels pad top-left.
class Conv2D : public Layer {
  public:
    Conv2D(std::string name, std::size_t kernel_h, std::size_t kernel_w,
           std::size_t in_channels, std::size_t out_channels, Padding padding,
           Rng& rng);

    Tensor forward(const Tensor& x, bool training) override;
    Tensor backward(const Tensor& grad_out) override;
    std::vector<ParamView> params() override;
    const std::string& name() const override { return name_; }
    const char* kind() const override { return "conv2d"; }

    Shape output_shape(const Shape& in) const;

  private:
    std::string name_;
    std::size_t kh_, kw_, in_c_, out_c_;
    Padding padding_;
    std::vector<double> w_, b_, dw_, db_;
    Tensor x_;
};

/// 2x2 max pooling, stride 2; odd trailing rows/columns are dropped.
/// Backward routes each window's gradient to the first maximum in
/// row-major scan order.
class MaxPool2D : public Layer {
  public:
    explicit MaxPool2D(std::string name);

    Tensor forward(const Tensor& x, bool training) override;
    Tensor backward(const Tensor& grad_out) override;
    const std::string& name() const override { return name_; }
    const char* kind() const override { return "maxpool2d"; }

  private:
    std::string name_;
    Shape in_shape_{};
    std::vector<std::size_t> argmax_;
};

class Flatten : public Layer {
  public:
    explicit Flatten(std::string name);

    Tensor forward(const Tensor& x, bool training) override;
    Tensor backward(const Tensor& grad_out) override;
    const std::string& name() const override { return name_; }
    const char* kind() const override { return "flatten"; }

  private:
    std::string name_;
    Shape in_shape_{};
};

/// Fully connected y = Wx + b on flattened input; W is (units x in) with
/// contiguous rows.
class Dense : public Layer {
  public:
    Dense(std::string name, std::size_t in, std::size_t units, Rng& rng);

    Tensor forward(const Tensor& x, bool training) override;
    Tensor backward(const Tensor& grad_out) override;
    std::vector<ParamView> params() override;
    const std::string& name() const override { return name_; }
    const char* kind() const override { return "dense"; }

  private:
    std::string name_;
    std::size_t in_, units_;
    std::vector<double> w_, b_, dw_, db_;
    Tensor x_;
};

enum class Act { Relu, Tanh, Softmax };

const char* act_name(Act a);

class Activation : public Layer {
  public:
    Activation(std::string name, Act act);

    Tensor forward(const Tensor& x, bool training) override;
    Tensor backward(const Tensor& grad_out) override;
    const std::string& name() const override { return name_; }
    const char* kind() const override { return act_name(act_); }
    Act act() const { return act_; }

  private:
    std::string name_;
    Act act_;
    Tensor x_, y_;
};

/// Inverted dropout: in training each element is zeroed with probability
/// `rate` and survivors are scaled by 1/(1-rate); in eval it is the
/// identity. The mask is redrawn from the layer's own seeded stream per
/// forward call unless frozen (gradient-check hook).
class Dropout : public Layer {
  public:
    Dropout(std::string name, double rate, std::uint64_t seed);

    Tensor forward(const Tensor& x, bool training) override;
    Tensor backward(const Tensor& grad_out) override;
    const std::string& name() const override { return name_; }
    const char* kind() const override { return "dropout"; }

    void set_frozen(bool frozen) { frozen_ = frozen; }

  private:
    std::string name_;
    double rate_;
    Rng rng_;
    bool frozen_ = false;
    bool have_mask_ = false;
    std::vector<double> mask_;
};

enum class ModelName { QNN1, CNN1, QNN2, CNN2 };

const char* model_name_str(ModelName name);
ModelName parse_model_name(const std::string& s);
/// True for the models that consume quanv-transformed input.
bool model_uses_quanv(ModelName name);
Shape model_input_shape(ModelName name);

/// An ordered layer stack ending in Dense(2) + softmax.
class Model {
  public:
    Model(std::string name, Shape input_shape);

    void add(std::unique_ptr<Layer> layer);

    /// Full forward pass including the final softmax.
    Tensor forward(const Tensor& x, bool training = false);

    /// Forward through every layer except the trailing softmax; pairs with
    /// the fused cross-entropy below whose gradient enters at the logits.
    Tensor forward_logits(const Tensor& x, bool training);
    void backward_from_logits(const Tensor& grad_logits);

    std::vector<ParamView> params();
    void zero_grad();

    /// Flat copy of all parameter values, in params() order (best-epoch
    /// snapshots).
    std::vector<double> save_values() const;
    void load_values(const std::vector<double>& values);

    const std::string& name() const { return name_; }
    const Shape& input_shape() const { return input_shape_; }
    std::size_t n_layers() const { return layers_.size(); }
    Layer& layer(std::size_t i) { return *layers_[i]; }

    /// Layer names with output shapes, from a zero forward pass in eval
    /// mode.
    std::vector<std::pair<std::string, Shape>> describe();

  private:
    std::string name_;
    Shape input_shape_;
    std::vector<std::unique_ptr<Layer>> layers_;
};

/// Builds the four architectures with seeded Glorot-uniform weights.
/// Quanv models expect pre-transformed 20x50x4 input; plain CNNs take
/// 40x100x1.
Model build_model(ModelName name, std::uint64_t seed);

std::vector<double> softmax(const std::vector<double>& logits);

struct LossGrad {
    double loss = 0.0;
    std::vector<double> grad_logits;
};

/// Cross-entropy of softmax(logits) against an integer label, evaluated
/// in the fused log-sum-exp form; grad_logits = softmax(logits) - onehot.
LossGrad cross_entropy_with_grad(const std::vector<double>& logits, int label);
double cross_entropy(const std::vector<double>& logits, int label);

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Adam with bias correction over a fixed parameter list. step() reads the
/// gradients currently in the views; a non-finite gradient raises
/// TrainingDiverged.
class Adam {
  public:
    explicit Adam(std::vector<ParamView> params, AdamConfig cfg = {});

    void step();
    void zero_grad();
    std::int64_t t() const { return t_; }

  private:
    std::vector<ParamView> params_;
    AdamConfig cfg_;
    std::int64_t t_ = 0;
    std::vector<std::vector<double>> m_, v_;
};

/// QVWTS1 checkpoint: magic, model name, then every parameter tensor with
/// its name, shape and float64 values, little-endian.
void save_weights(Model& model, const std::string& path);
/// Restores into an identically built model; name or shape mismatches are
/// FormatError.
void load_weights(Model& model, const std::string& path);

} // namespace quanvo::nn
