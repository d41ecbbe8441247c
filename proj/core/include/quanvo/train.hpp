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

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "quanvo/dataset.hpp"
#include "quanvo/image.hpp"
#include "quanvo/nn.hpp"

namespace quanvo::train {

struct TrainConfig {
    int max_epochs = 3000;
    int patience = 15;
    int batch_size = 32;
    nn::AdamConfig adam;
    std::uint64_t seed = 0;
};

/// Patience tracker over a monitored loss. Improvement means strictly
/// smaller than the best seen; training stops once `patience` consecutive
/// epochs fail to improve. Epochs are 1-based.
class EarlyStopper {
  public:
    explicit EarlyStopper(int patience);

    /// Records one epoch's monitored loss; true means stop after it.
    bool observe(double monitor_loss);

    bool improved() const { return improved_; }
    int best_epoch() const { return best_epoch_; }
    double best_loss() const { return best_; }
    int epochs_seen() const { return epoch_; }

  private:
    int patience_;
    int epoch_ = 0;
    int best_epoch_ = 0;
    int since_best_ = 0;
    bool improved_ = false;
    double best_ = std::numeric_limits<double>::infinity();
};

struct SampleRef {
    const ImageTensor* image = nullptr;
    int label = 0;
};

using SampleSet = std::vector<SampleRef>;

struct EpochRow {
    int epoch = 0; // 1-based
    double train_loss = 0.0, train_acc = 0.0;
    double monitor_loss = 0.0, monitor_acc = 0.0;
    double test_loss = 0.0, test_acc = 0.0;
};

struct TrainOutcome {
    std::vector<EpochRow> epochs;
    int stop_epoch = 0; // last epoch executed
    int best_epoch = 0; // minimum monitor loss
    double best_monitor_loss = 0.0;
    double test_loss = 0.0, test_acc = 0.0; // at the best epoch
};

struct EvalResult {
    double loss = 0.0;
    double accuracy = 0.0;
};

/// Mean cross-entropy and argmax accuracy in eval mode (dropout off).
/// Empty set is invalid-argument; order of samples does not matter.
EvalResult evaluate(nn::Model& model, const SampleSet& set);

/// Trains with minibatch Adam and early stopping on the monitor set's
/// loss; the model is left holding the best epoch's weights. Per-epoch
/// rows carry running training metrics plus full monitor and test
/// evaluations. A non-finite loss raises TrainingDiverged naming the
/// epoch. test_set may be empty (test columns become NaN).
TrainOutcome train_model(nn::Model& model, const SampleSet& train_set,
                         const SampleSet& monitor_set, const SampleSet& test_set,
                         const TrainConfig& cfg);

struct ExperimentConfig {
    std::vector<nn::ModelName> models;
    std::vector<std::size_t> sizes = {60, 80, 100, 120, 140, 160, 180, 200, 220, 240};
    std::size_t k_folds = 10;
    double ratio = 0.7;
    TrainConfig train;
    std::uint64_t seed = 0;
    int workers = 1;
    std::function<void(const std::string&)> log; // optional progress sink
};

struct FoldCell {
    nn::ModelName model = nn::ModelName::QNN1;
    std::size_t train_size = 0;
    std::size_t fold = 0; // 1-based
    TrainOutcome outcome;
};

struct ExperimentReport {
    std::vector<FoldCell> cells; // ordered (model input order, size, fold)
};

/// Carries whatever cells completed before an experiment aborted, so
/// partial results can still be flushed.
class ExperimentFailure : public std::runtime_error {
  public:
    ExperimentFailure(const std::string& msg, ExperimentReport partial)
        : std::runtime_error(msg), partial_(std::move(partial)) {}

    const ExperimentReport& partial() const { return partial_; }

  private:
    ExperimentReport partial_;
};

/// The full grid: per size draw one stratified subsample and one k-fold
/// plan (shared by every model at that size), then train each (model,
/// size, fold) cell against the fixed test split. Cells are independent
/// jobs on a worker pool; results merge in deterministic order. cnn_images
/// and qnn_images are per-manifest-entry inputs for the plain and
/// quanv-transformed input shapes.
ExperimentReport run_experiment(const data::DatasetManifest& manifest,
                                const std::vector<ImageTensor>& cnn_images,
                                const std::vector<ImageTensor>& qnn_images,
                                const data::SplitPlan& split,
                                const ExperimentConfig& cfg);

/// Metrics CSV: header `model,train_size,fold,epoch,train_loss,train_acc,
/// monitor_loss,monitor_acc,test_loss,test_acc`; losses %.6f, accuracies
/// %.4f.
void write_metrics_csv(const std::string& path, const ExperimentReport& report);

} // namespace quanvo::train
