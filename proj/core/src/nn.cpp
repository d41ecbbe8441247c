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

#include "quanvo/nn.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "quanvo/errors.hpp"

namespace quanvo::nn {

namespace {

std::string shape_str(const Tensor& t) {
    return std::to_string(t.height) + "x" + std::to_string(t.width) + "x" +
           std::to_string(t.channels);
}

double glorot_limit(std::size_t fan_in, std::size_t fan_out) {
    return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

#ifndef NDEBUG
bool all_finite(const Tensor& t) {
    for (double v : t.values) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}
#endif

void write_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    std::memcpy(buf, &v, 4);
    out.write(buf, 4);
}

std::uint32_t read_u32(std::istream& in, const char* what) {
    char buf[4];
    in.read(buf, 4);
    if (!in) {
        throw FormatError(std::string("checkpoint truncated reading ") + what);
    }
    std::uint32_t v;
    std::memcpy(&v, buf, 4);
    return v;
}

void write_lp_string(std::ostream& out, const std::string& s) {
    write_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_lp_string(std::istream& in, const char* what) {
    const std::uint32_t len = read_u32(in, what);
    std::string s(len, '\0');
    in.read(s.data(), len);
    if (!in) {
        throw FormatError(std::string("checkpoint truncated reading ") + what);
    }
    return s;
}

constexpr char kWeightsMagic[6] = {'Q', 'V', 'W', 'T', 'S', '1'};

} // namespace

// ---------------------------------------------------------------------------
// Conv2D

Conv2D::Conv2D(std::string name, std::size_t kernel_h, std::size_t kernel_w,
               std::size_t in_channels, std::size_t out_channels,
               Padding padding, Rng& rng)
    : name_(std::move(name)),
      kh_(kernel_h),
      kw_(kernel_w),
      in_c_(in_channels),
      out_c_(out_channels),
      padding_(padding),
      w_(kernel_h * kernel_w * in_channels * out_channels),
      b_(out_channels, 0.0),
      dw_(w_.size(), 0.0),
      db_(out_channels, 0.0) {
    if (kh_ == 0 || kw_ == 0 || in_c_ == 0 || out_c_ == 0) {
        throw std::invalid_argument("conv2d " + name_ + ": zero-sized kernel or channels");
    }
    const double limit = glorot_limit(kh_ * kw_ * in_c_, kh_ * kw_ * out_c_);
    for (double& w : w_) {
        w = rng.real(-limit, limit);
    }
}

Shape Conv2D::output_shape(const Shape& in) const {
    if (padding_ == Padding::Same) {
        return {in[0], in[1], out_c_};
    }
    return {in[0] - kh_ + 1, in[1] - kw_ + 1, out_c_};
}

Tensor Conv2D::forward(const Tensor& x, bool) {
    if (x.channels != in_c_) {
        throw std::invalid_argument("conv2d " + name_ + ": input " + shape_str(x) +
                                    " has " + std::to_string(x.channels) +
                                    " channels, kernel expects " + std::to_string(in_c_));
    }
    if (padding_ == Padding::Valid && (x.height < kh_ || x.width < kw_)) {
        throw std::invalid_argument("conv2d " + name_ + ": input " + shape_str(x) +
                                    " smaller than kernel " + std::to_string(kh_) + "x" +
                                    std::to_string(kw_));
    }
    x_ = x;
    const std::size_t pad_y = padding_ == Padding::Same ? (kh_ - 1) / 2 : 0;
    const std::size_t pad_x = padding_ == Padding::Same ? (kw_ - 1) / 2 : 0;
    const Shape out_shape = output_shape({x.height, x.width, x.channels});
    Tensor y(out_shape[0], out_shape[1], out_c_);
    std::vector<double> acc(out_c_);
    for (std::size_t oy = 0; oy < y.height; oy++) {
        for (std::size_t ox = 0; ox < y.width; ox++) {
            std::copy(b_.begin(), b_.end(), acc.begin());
            for (std::size_t ky = 0; ky < kh_; ky++) {
                const std::size_t iy = oy + ky;
                if (iy < pad_y || iy - pad_y >= x.height) {
                    continue;
                }
                for (std::size_t kx = 0; kx < kw_; kx++) {
                    const std::size_t ix = ox + kx;
                    if (ix < pad_x || ix - pad_x >= x.width) {
                        continue;
                    }
                    const double* xp =
                        &x.values[((iy - pad_y) * x.width + (ix - pad_x)) * in_c_];
                    const double* wp = &w_[(ky * kw_ + kx) * in_c_ * out_c_];
                    for (std::size_t i = 0; i < in_c_; i++) {
                        const double xi = xp[i];
                        const double* wrow = wp + i * out_c_;
                        for (std::size_t o = 0; o < out_c_; o++) {
                            acc[o] += xi * wrow[o];
                        }
                    }
                }
            }
            std::copy(acc.begin(), acc.end(), &y.values[(oy * y.width + ox) * out_c_]);
        }
    }
    return y;
}

Tensor Conv2D::backward(const Tensor& grad_out) {
    const Tensor& x = x_;
    const std::size_t pad_y = padding_ == Padding::Same ? (kh_ - 1) / 2 : 0;
    const std::size_t pad_x = padding_ == Padding::Same ? (kw_ - 1) / 2 : 0;
    Tensor dx(x.height, x.width, x.channels);
    for (std::size_t oy = 0; oy < grad_out.height; oy++) {
        for (std::size_t ox = 0; ox < grad_out.width; ox++) {
            const double* gp = &grad_out.values[(oy * grad_out.width + ox) * out_c_];
            for (std::size_t o = 0; o < out_c_; o++) {
                db_[o] += gp[o];
            }
            for (std::size_t ky = 0; ky < kh_; ky++) {
                const std::size_t iy = oy + ky;
                if (iy < pad_y || iy - pad_y >= x.height) {
                    continue;
                }
                for (std::size_t kx = 0; kx < kw_; kx++) {
                    const std::size_t ix = ox + kx;
                    if (ix < pad_x || ix - pad_x >= x.width) {
                        continue;
                    }
                    const std::size_t pixel =
                        ((iy - pad_y) * x.width + (ix - pad_x)) * in_c_;
                    const double* xp = &x.values[pixel];
                    double* dxp = &dx.values[pixel];
                    const std::size_t base = (ky * kw_ + kx) * in_c_ * out_c_;
                    for (std::size_t i = 0; i < in_c_; i++) {
                        const double xi = xp[i];
                        const double* wrow = &w_[base + i * out_c_];
                        double* dwrow = &dw_[base + i * out_c_];
                        double sum = 0.0;
                        for (std::size_t o = 0; o < out_c_; o++) {
                            dwrow[o] += xi * gp[o];
                            sum += wrow[o] * gp[o];
                        }
                        dxp[i] += sum;
                    }
                }
            }
        }
    }
    return dx;
}

std::vector<ParamView> Conv2D::params() {
    return {
        {name_ + ".w", &w_, &dw_, {kh_, kw_, in_c_, out_c_}},
        {name_ + ".b", &b_, &db_, {out_c_}},
    };
}

// ---------------------------------------------------------------------------
// MaxPool2D

MaxPool2D::MaxPool2D(std::string name) : name_(std::move(name)) {}

Tensor MaxPool2D::forward(const Tensor& x, bool) {
    const std::size_t out_h = x.height / 2;
    const std::size_t out_w = x.width / 2;
    if (out_h == 0 || out_w == 0 || x.channels == 0) {
        throw std::invalid_argument("maxpool2d " + name_ + ": input " + shape_str(x) +
                                    " too small to pool");
    }
    in_shape_ = {x.height, x.width, x.channels};
    Tensor y(out_h, out_w, x.channels);
    argmax_.resize(y.size());
    for (std::size_t oy = 0; oy < out_h; oy++) {
        for (std::size_t ox = 0; ox < out_w; ox++) {
            for (std::size_t c = 0; c < x.channels; c++) {
                double best = x.at(2 * oy, 2 * ox, c);
                std::size_t best_idx = ((2 * oy) * x.width + 2 * ox) * x.channels + c;
                for (std::size_t wy = 0; wy < 2; wy++) {
                    for (std::size_t wx = 0; wx < 2; wx++) {
                        const std::size_t iy = 2 * oy + wy;
                        const std::size_t ix = 2 * ox + wx;
                        const double v = x.at(iy, ix, c);
                        if (v > best) {
                            best = v;
                            best_idx = (iy * x.width + ix) * x.channels + c;
                        }
                    }
                }
                const std::size_t out_idx = (oy * out_w + ox) * x.channels + c;
                y.values[out_idx] = best;
                argmax_[out_idx] = best_idx;
            }
        }
    }
    return y;
}

Tensor MaxPool2D::backward(const Tensor& grad_out) {
    Tensor dx(in_shape_[0], in_shape_[1], in_shape_[2]);
    for (std::size_t k = 0; k < grad_out.size(); k++) {
        dx.values[argmax_[k]] += grad_out.values[k];
    }
    return dx;
}

// ---------------------------------------------------------------------------
// Flatten

Flatten::Flatten(std::string name) : name_(std::move(name)) {}

Tensor Flatten::forward(const Tensor& x, bool) {
    in_shape_ = {x.height, x.width, x.channels};
    Tensor y(1, 1, x.size());
    y.values = x.values;
    return y;
}

Tensor Flatten::backward(const Tensor& grad_out) {
    Tensor dx(in_shape_[0], in_shape_[1], in_shape_[2]);
    dx.values = grad_out.values;
    return dx;
}

// ---------------------------------------------------------------------------
// Dense

Dense::Dense(std::string name, std::size_t in, std::size_t units, Rng& rng)
    : name_(std::move(name)),
      in_(in),
      units_(units),
      w_(in * units),
      b_(units, 0.0),
      dw_(w_.size(), 0.0),
      db_(units, 0.0) {
    if (in_ == 0 || units_ == 0) {
        throw std::invalid_argument("dense " + name_ + ": zero-sized layer");
    }
    const double limit = glorot_limit(in_, units_);
    for (double& w : w_) {
        w = rng.real(-limit, limit);
    }
}

Tensor Dense::forward(const Tensor& x, bool) {
    if (x.size() != in_) {
        throw std::invalid_argument("dense " + name_ + ": input " + shape_str(x) +
                                    " has " + std::to_string(x.size()) +
                                    " values, weights expect " + std::to_string(in_));
    }
    x_ = x;
    Tensor y(1, 1, units_);
    const double* xv = x.values.data();
    for (std::size_t i = 0; i < units_; i++) {
        const double* wrow = &w_[i * in_];
        double sum = b_[i];
        for (std::size_t j = 0; j < in_; j++) {
            sum += wrow[j] * xv[j];
        }
        y.values[i] = sum;
    }
    return y;
}

Tensor Dense::backward(const Tensor& grad_out) {
    Tensor dx(1, 1, in_);
    const double* xv = x_.values.data();
    double* dxv = dx.values.data();
    for (std::size_t i = 0; i < units_; i++) {
        const double g = grad_out.values[i];
        db_[i] += g;
        const double* wrow = &w_[i * in_];
        double* dwrow = &dw_[i * in_];
        for (std::size_t j = 0; j < in_; j++) {
            dwrow[j] += g * xv[j];
            dxv[j] += g * wrow[j];
        }
    }
    return dx;
}

std::vector<ParamView> Dense::params() {
    return {
        {name_ + ".w", &w_, &dw_, {units_, in_}},
        {name_ + ".b", &b_, &db_, {units_}},
    };
}

// ---------------------------------------------------------------------------
// Activation

const char* act_name(Act a) {
    switch (a) {
        case Act::Relu: return "relu";
        case Act::Tanh: return "tanh";
        case Act::Softmax: return "softmax";
    }
    return "?";
}

Activation::Activation(std::string name, Act act)
    : name_(std::move(name)), act_(act) {}

Tensor Activation::forward(const Tensor& x, bool) {
    Tensor y = x;
    switch (act_) {
        case Act::Relu:
            x_ = x;
            for (double& v : y.values) {
                v = v > 0.0 ? v : 0.0;
            }
            break;
        case Act::Tanh:
            for (double& v : y.values) {
                v = std::tanh(v);
            }
            y_ = y;
            break;
        case Act::Softmax: {
            double m = y.values[0];
            for (double v : y.values) {
                m = std::max(m, v);
            }
            double sum = 0.0;
            for (double& v : y.values) {
                v = std::exp(v - m);
                sum += v;
            }
            for (double& v : y.values) {
                v /= sum;
            }
            y_ = y;
            break;
        }
    }
    return y;
}

Tensor Activation::backward(const Tensor& grad_out) {
    Tensor dx = grad_out;
    switch (act_) {
        case Act::Relu:
            for (std::size_t i = 0; i < dx.size(); i++) {
                if (!(x_.values[i] > 0.0)) {
                    dx.values[i] = 0.0;
                }
            }
            break;
        case Act::Tanh:
            for (std::size_t i = 0; i < dx.size(); i++) {
                const double y = y_.values[i];
                dx.values[i] *= 1.0 - y * y;
            }
            break;
        case Act::Softmax: {
            double dot = 0.0;
            for (std::size_t i = 0; i < dx.size(); i++) {
                dot += grad_out.values[i] * y_.values[i];
            }
            for (std::size_t i = 0; i < dx.size(); i++) {
                dx.values[i] = y_.values[i] * (grad_out.values[i] - dot);
            }
            break;
        }
    }
    return dx;
}

// ---------------------------------------------------------------------------
// Dropout

Dropout::Dropout(std::string name, double rate, std::uint64_t seed)
    : name_(std::move(name)), rate_(rate), rng_(seed) {
    if (!(rate >= 0.0 && rate < 1.0)) {
        throw std::invalid_argument("dropout " + name_ + ": rate " +
                                    std::to_string(rate) + " outside [0, 1)");
    }
}

Tensor Dropout::forward(const Tensor& x, bool training) {
    if (!training) {
        have_mask_ = false;
        return x;
    }
    const double keep_scale = 1.0 / (1.0 - rate_);
    if (!(frozen_ && have_mask_ && mask_.size() == x.size())) {
        mask_.resize(x.size());
        for (double& m : mask_) {
            m = rng_.real() >= rate_ ? keep_scale : 0.0;
        }
        have_mask_ = true;
    }
    Tensor y = x;
    for (std::size_t i = 0; i < y.size(); i++) {
        y.values[i] *= mask_[i];
    }
    return y;
}

Tensor Dropout::backward(const Tensor& grad_out) {
    if (!have_mask_) {
        return grad_out;
    }
    Tensor dx = grad_out;
    for (std::size_t i = 0; i < dx.size(); i++) {
        dx.values[i] *= mask_[i];
    }
    return dx;
}

// ---------------------------------------------------------------------------
// Model

Model::Model(std::string name, Shape input_shape)
    : name_(std::move(name)), input_shape_(input_shape) {}

void Model::add(std::unique_ptr<Layer> layer) { layers_.push_back(std::move(layer)); }

Tensor Model::forward(const Tensor& x, bool training) {
    Tensor t = x;
    for (auto& layer : layers_) {
        t = layer->forward(t, training);
        assert(all_finite(t));
    }
    return t;
}

Tensor Model::forward_logits(const Tensor& x, bool training) {
    if (layers_.empty() || std::string(layers_.back()->kind()) != "softmax") {
        throw std::logic_error("model " + name_ + ": last layer is not softmax");
    }
    Tensor t = x;
    for (std::size_t i = 0; i + 1 < layers_.size(); i++) {
        t = layers_[i]->forward(t, training);
        assert(all_finite(t));
    }
    return t;
}

void Model::backward_from_logits(const Tensor& grad_logits) {
    Tensor g = grad_logits;
    for (std::size_t i = layers_.size() - 1; i-- > 0;) {
        g = layers_[i]->backward(g);
    }
}

std::vector<ParamView> Model::params() {
    std::vector<ParamView> out;
    for (auto& layer : layers_) {
        for (ParamView& p : layer->params()) {
            out.push_back(std::move(p));
        }
    }
    return out;
}

void Model::zero_grad() {
    for (ParamView& p : params()) {
        std::fill(p.grad->begin(), p.grad->end(), 0.0);
    }
}

std::vector<double> Model::save_values() const {
    std::vector<double> out;
    for (ParamView& p : const_cast<Model*>(this)->params()) {
        out.insert(out.end(), p.value->begin(), p.value->end());
    }
    return out;
}

void Model::load_values(const std::vector<double>& values) {
    std::size_t pos = 0;
    for (ParamView& p : params()) {
        if (pos + p.value->size() > values.size()) {
            throw std::invalid_argument("model " + name_ + ": value blob too short");
        }
        std::copy(values.begin() + static_cast<std::ptrdiff_t>(pos),
                  values.begin() + static_cast<std::ptrdiff_t>(pos + p.value->size()),
                  p.value->begin());
        pos += p.value->size();
    }
    if (pos != values.size()) {
        throw std::invalid_argument("model " + name_ + ": value blob too long");
    }
}

std::vector<std::pair<std::string, Shape>> Model::describe() {
    std::vector<std::pair<std::string, Shape>> out;
    Tensor t(input_shape_[0], input_shape_[1], input_shape_[2]);
    for (auto& layer : layers_) {
        t = layer->forward(t, false);
        out.emplace_back(layer->name(), Shape{t.height, t.width, t.channels});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Architectures

const char* model_name_str(ModelName name) {
    switch (name) {
        case ModelName::QNN1: return "qnn1";
        case ModelName::CNN1: return "cnn1";
        case ModelName::QNN2: return "qnn2";
        case ModelName::CNN2: return "cnn2";
    }
    return "?";
}

ModelName parse_model_name(const std::string& s) {
    std::string low;
    for (char c : s) {
        low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (low == "qnn1") return ModelName::QNN1;
    if (low == "cnn1") return ModelName::CNN1;
    if (low == "qnn2") return ModelName::QNN2;
    if (low == "cnn2") return ModelName::CNN2;
    throw std::invalid_argument("unknown model name: " + s);
}

bool model_uses_quanv(ModelName name) {
    return name == ModelName::QNN1 || name == ModelName::QNN2;
}

Shape model_input_shape(ModelName name) {
    return model_uses_quanv(name) ? Shape{20, 50, 4} : Shape{40, 100, 1};
}

Model build_model(ModelName name, std::uint64_t seed) {
    Rng rng(seed);
    Shape s = model_input_shape(name);
    Model m(model_name_str(name), s);

    auto add_conv = [&](const std::string& nm, std::size_t out_c, Padding pad) {
        auto conv = std::make_unique<Conv2D>(nm, 2, 2, s[2], out_c, pad, rng);
        s = conv->output_shape(s);
        m.add(std::move(conv));
        m.add(std::make_unique<Activation>(nm + "_relu", Act::Relu));
    };
    auto add_pool = [&](const std::string& nm) {
        m.add(std::make_unique<MaxPool2D>(nm));
        s = {s[0] / 2, s[1] / 2, s[2]};
    };

    switch (name) {
        case ModelName::CNN1:
            add_conv("conv1", 4, Padding::Valid);
            add_pool("pool1");
            break;
        case ModelName::QNN1:
            add_pool("pool1");
            break;
        case ModelName::QNN2:
            add_pool("pool1");
            add_conv("conv2", 16, Padding::Same);
            add_pool("pool2");
            break;
        case ModelName::CNN2:
            add_conv("conv1", 4, Padding::Valid);
            add_pool("pool1");
            add_conv("conv2", 16, Padding::Same);
            add_pool("pool2");
            break;
    }

    m.add(std::make_unique<Flatten>("flatten"));
    const std::size_t flat = s[0] * s[1] * s[2];
    m.add(std::make_unique<Dense>("fc1", flat, 64, rng));
    m.add(std::make_unique<Activation>("fc1_tanh", Act::Tanh));
    m.add(std::make_unique<Dropout>("drop1", 0.5, rng.next()));
    m.add(std::make_unique<Dense>("fc2", 64, 2, rng));
    m.add(std::make_unique<Activation>("fc2_softmax", Act::Softmax));
    return m;
}

// ---------------------------------------------------------------------------
// Loss

std::vector<double> softmax(const std::vector<double>& logits) {
    std::vector<double> out = logits;
    double m = out[0];
    for (double v : out) {
        m = std::max(m, v);
    }
    double sum = 0.0;
    for (double& v : out) {
        v = std::exp(v - m);
        sum += v;
    }
    for (double& v : out) {
        v /= sum;
    }
    return out;
}

LossGrad cross_entropy_with_grad(const std::vector<double>& logits, int label) {
    if (logits.empty()) {
        throw std::invalid_argument("cross_entropy: empty logits");
    }
    if (label < 0 || static_cast<std::size_t>(label) >= logits.size()) {
        throw std::invalid_argument("cross_entropy: label " + std::to_string(label) +
                                    " outside [0, " + std::to_string(logits.size()) + ")");
    }
    double m = logits[0];
    for (double v : logits) {
        m = std::max(m, v);
    }
    double sum = 0.0;
    for (double v : logits) {
        sum += std::exp(v - m);
    }
    const double lse = m + std::log(sum);
    LossGrad out;
    out.loss = lse - logits[static_cast<std::size_t>(label)];
    out.grad_logits.resize(logits.size());
    for (std::size_t i = 0; i < logits.size(); i++) {
        out.grad_logits[i] = std::exp(logits[i] - lse);
    }
    out.grad_logits[static_cast<std::size_t>(label)] -= 1.0;
    return out;
}

double cross_entropy(const std::vector<double>& logits, int label) {
    return cross_entropy_with_grad(logits, label).loss;
}

// ---------------------------------------------------------------------------
// Adam

Adam::Adam(std::vector<ParamView> params, AdamConfig cfg)
    : params_(std::move(params)), cfg_(cfg) {
    m_.reserve(params_.size());
    v_.reserve(params_.size());
    for (const ParamView& p : params_) {
        m_.emplace_back(p.value->size(), 0.0);
        v_.emplace_back(p.value->size(), 0.0);
    }
}

void Adam::step() {
    t_++;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    for (std::size_t p = 0; p < params_.size(); p++) {
        std::vector<double>& w = *params_[p].value;
        std::vector<double>& g = *params_[p].grad;
        std::vector<double>& m = m_[p];
        std::vector<double>& v = v_[p];
        for (std::size_t i = 0; i < w.size(); i++) {
            const double gi = g[i];
            if (!std::isfinite(gi)) {
                throw TrainingDiverged("non-finite gradient in " + params_[p].name +
                                       " at Adam step " + std::to_string(t_));
            }
            m[i] = cfg_.beta1 * m[i] + (1.0 - cfg_.beta1) * gi;
            v[i] = cfg_.beta2 * v[i] + (1.0 - cfg_.beta2) * gi * gi;
            const double mhat = m[i] / bc1;
            const double vhat = v[i] / bc2;
            w[i] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
        }
    }
}

void Adam::zero_grad() {
    for (ParamView& p : params_) {
        std::fill(p.grad->begin(), p.grad->end(), 0.0);
    }
}

// ---------------------------------------------------------------------------
// Checkpoints

void save_weights(Model& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError("checkpoint: cannot open " + path + " for writing");
    }
    out.write(kWeightsMagic, sizeof(kWeightsMagic));
    write_lp_string(out, model.name());
    std::vector<ParamView> params = model.params();
    write_u32(out, static_cast<std::uint32_t>(params.size()));
    for (ParamView& p : params) {
        write_lp_string(out, p.name);
        write_u32(out, static_cast<std::uint32_t>(p.shape.size()));
        for (std::size_t d : p.shape) {
            write_u32(out, static_cast<std::uint32_t>(d));
        }
        out.write(reinterpret_cast<const char*>(p.value->data()),
                  static_cast<std::streamsize>(p.value->size() * sizeof(double)));
    }
    if (!out) {
        throw FormatError("checkpoint: short write to " + path);
    }
}

void load_weights(Model& model, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("checkpoint: cannot open " + path);
    }
    char magic[sizeof(kWeightsMagic)];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kWeightsMagic, sizeof(magic)) != 0) {
        throw FormatError("checkpoint: bad magic in " + path);
    }
    const std::string name = read_lp_string(in, "model name");
    if (name != model.name()) {
        throw FormatError("checkpoint " + path + " holds model '" + name +
                          "', expected '" + model.name() + "'");
    }
    std::vector<ParamView> params = model.params();
    const std::uint32_t count = read_u32(in, "tensor count");
    if (count != params.size()) {
        throw FormatError("checkpoint " + path + " holds " + std::to_string(count) +
                          " tensors, model has " + std::to_string(params.size()));
    }
    for (ParamView& p : params) {
        const std::string tensor_name = read_lp_string(in, "tensor name");
        if (tensor_name != p.name) {
            throw FormatError("checkpoint " + path + ": tensor '" + tensor_name +
                              "' where '" + p.name + "' expected");
        }
        const std::uint32_t rank = read_u32(in, "rank");
        if (rank != p.shape.size()) {
            throw FormatError("checkpoint " + path + ": tensor '" + tensor_name +
                              "' rank mismatch");
        }
        std::size_t total = 1;
        for (std::uint32_t d = 0; d < rank; d++) {
            const std::uint32_t dim = read_u32(in, "dimension");
            if (dim != p.shape[d]) {
                throw FormatError("checkpoint " + path + ": tensor '" + tensor_name +
                                  "' shape mismatch");
            }
            total *= dim;
        }
        in.read(reinterpret_cast<char*>(p.value->data()),
                static_cast<std::streamsize>(total * sizeof(double)));
        if (!in) {
            throw FormatError("checkpoint " + path + ": truncated tensor '" +
                              tensor_name + "'");
        }
    }
}

} // namespace quanvo::nn
