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

#include "quanvo/train.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "quanvo/errors.hpp"
#include "quanvo/rng.hpp"

namespace quanvo::train {

namespace {

int argmax(const std::vector<double>& v) {
    return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

void shuffle_sizes(std::vector<std::size_t>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; i--) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace

EarlyStopper::EarlyStopper(int patience) : patience_(patience) {
    if (patience < 1) {
        throw std::invalid_argument("early stopping patience must be >= 1");
    }
}

bool EarlyStopper::observe(double monitor_loss) {
    epoch_++;
    if (monitor_loss < best_) {
        best_ = monitor_loss;
        best_epoch_ = epoch_;
        since_best_ = 0;
        improved_ = true;
        return false;
    }
    since_best_++;
    improved_ = false;
    return since_best_ >= patience_;
}

EvalResult evaluate(nn::Model& model, const SampleSet& set) {
    if (set.empty()) {
        throw std::invalid_argument("evaluate: empty sample set");
    }
    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (const SampleRef& sample : set) {
        const nn::Tensor logits = model.forward_logits(*sample.image, false);
        loss_sum += nn::cross_entropy(logits.values, sample.label);
        if (argmax(logits.values) == sample.label) {
            correct++;
        }
    }
    EvalResult out;
    out.loss = loss_sum / static_cast<double>(set.size());
    out.accuracy = static_cast<double>(correct) / static_cast<double>(set.size());
    return out;
}

TrainOutcome train_model(nn::Model& model, const SampleSet& train_set,
                         const SampleSet& monitor_set, const SampleSet& test_set,
                         const TrainConfig& cfg) {
    if (train_set.empty() || monitor_set.empty()) {
        throw std::invalid_argument("train_model: empty training or monitor set");
    }
    if (cfg.batch_size < 1 || cfg.max_epochs < 1) {
        throw std::invalid_argument("train_model: batch_size and max_epochs must be >= 1");
    }

    nn::Adam adam(model.params(), cfg.adam);
    EarlyStopper stopper(cfg.patience);
    Rng order_rng(Rng::mix(cfg.seed, 0xE70C));

    std::vector<std::size_t> perm(train_set.size());
    for (std::size_t i = 0; i < perm.size(); i++) {
        perm[i] = i;
    }

    TrainOutcome outcome;
    std::vector<double> best_weights = model.save_values();

    for (int epoch = 1; epoch <= cfg.max_epochs; epoch++) {
        shuffle_sizes(perm, order_rng);
        double loss_sum = 0.0;
        std::size_t correct = 0;
        for (std::size_t start = 0; start < perm.size();
             start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t end =
                std::min(perm.size(), start + static_cast<std::size_t>(cfg.batch_size));
            const double inv_batch = 1.0 / static_cast<double>(end - start);
            adam.zero_grad();
            for (std::size_t i = start; i < end; i++) {
                const SampleRef& sample = train_set[perm[i]];
                const nn::Tensor logits = model.forward_logits(*sample.image, true);
                nn::LossGrad lg = nn::cross_entropy_with_grad(logits.values, sample.label);
                if (!std::isfinite(lg.loss)) {
                    throw TrainingDiverged("non-finite training loss at epoch " +
                                           std::to_string(epoch));
                }
                loss_sum += lg.loss;
                if (argmax(logits.values) == sample.label) {
                    correct++;
                }
                nn::Tensor grad(1, 1, lg.grad_logits.size());
                for (std::size_t j = 0; j < lg.grad_logits.size(); j++) {
                    grad.values[j] = lg.grad_logits[j] * inv_batch;
                }
                model.backward_from_logits(grad);
            }
            adam.step();
        }

        EpochRow row;
        row.epoch = epoch;
        row.train_loss = loss_sum / static_cast<double>(train_set.size());
        row.train_acc = static_cast<double>(correct) / static_cast<double>(train_set.size());
        const EvalResult monitor = evaluate(model, monitor_set);
        row.monitor_loss = monitor.loss;
        row.monitor_acc = monitor.accuracy;
        if (test_set.empty()) {
            row.test_loss = std::numeric_limits<double>::quiet_NaN();
            row.test_acc = std::numeric_limits<double>::quiet_NaN();
        } else {
            const EvalResult test = evaluate(model, test_set);
            row.test_loss = test.loss;
            row.test_acc = test.accuracy;
        }
        outcome.epochs.push_back(row);

        const bool stop = stopper.observe(row.monitor_loss);
        if (stopper.improved()) {
            best_weights = model.save_values();
        }
        if (stop) {
            break;
        }
    }

    model.load_values(best_weights);
    outcome.stop_epoch = stopper.epochs_seen();
    outcome.best_epoch = stopper.best_epoch();
    outcome.best_monitor_loss = stopper.best_loss();
    const EpochRow& best_row = outcome.epochs[static_cast<std::size_t>(outcome.best_epoch) - 1];
    outcome.test_loss = best_row.test_loss;
    outcome.test_acc = best_row.test_acc;
    return outcome;
}

ExperimentReport run_experiment(const data::DatasetManifest& manifest,
                                const std::vector<ImageTensor>& cnn_images,
                                const std::vector<ImageTensor>& qnn_images,
                                const data::SplitPlan& split,
                                const ExperimentConfig& cfg) {
    if (cfg.models.empty() || cfg.sizes.empty()) {
        throw std::invalid_argument("experiment: no models or sizes configured");
    }
    if (cnn_images.size() != manifest.size() || qnn_images.size() != manifest.size()) {
        throw std::invalid_argument("experiment: image arrays must match the manifest");
    }

    // One subsample and one fold plan per size, shared across models so
    // every model sees identical data at a given training size.
    std::vector<std::vector<data::FoldSplit>> folds_by_size(cfg.sizes.size());
    for (std::size_t si = 0; si < cfg.sizes.size(); si++) {
        const std::vector<std::size_t> subsample = data::stratified_subsample(
            manifest, split.train, cfg.sizes[si], cfg.ratio,
            Rng::mix(cfg.seed, 41, cfg.sizes[si]));
        folds_by_size[si] = data::kfold_split(manifest, subsample, cfg.k_folds,
                                              Rng::mix(cfg.seed, 42, cfg.sizes[si]));
    }

    struct Job {
        std::size_t model_idx, size_idx, fold;
    };
    std::vector<Job> jobs;
    for (std::size_t mi = 0; mi < cfg.models.size(); mi++) {
        for (std::size_t si = 0; si < cfg.sizes.size(); si++) {
            for (std::size_t fold = 0; fold < cfg.k_folds; fold++) {
                jobs.push_back({mi, si, fold});
            }
        }
    }

    struct Slot {
        bool done = false;
        TrainOutcome outcome;
    };
    std::vector<Slot> slots(jobs.size());
    std::vector<std::string> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex log_mutex;

    auto make_set = [&](const std::vector<std::size_t>& indices,
                        const std::vector<ImageTensor>& images) {
        SampleSet set;
        set.reserve(indices.size());
        for (std::size_t idx : indices) {
            set.push_back({&images[idx], static_cast<int>(manifest.entries[idx].label)});
        }
        return set;
    };

    auto run_job = [&](std::size_t job_idx) {
        const Job& job = jobs[job_idx];
        const nn::ModelName model_name = cfg.models[job.model_idx];
        const std::vector<ImageTensor>& images =
            nn::model_uses_quanv(model_name) ? qnn_images : cnn_images;
        const data::FoldSplit& fold = folds_by_size[job.size_idx][job.fold];

        const std::uint64_t job_seed =
            Rng::mix(cfg.seed, 1000003ULL * job.model_idx + cfg.sizes[job.size_idx],
                     job.fold + 1);
        nn::Model model = nn::build_model(model_name, Rng::mix(job_seed, 1));
        TrainConfig tc = cfg.train;
        tc.seed = Rng::mix(job_seed, 2);

        const SampleSet train_set = make_set(fold.train, images);
        const SampleSet monitor_set = make_set(fold.validation, images);
        const SampleSet test_set = make_set(split.test, images);
        TrainOutcome outcome = train_model(model, train_set, monitor_set, test_set, tc);

        if (cfg.log) {
            char line[160];
            std::snprintf(line, sizeof(line),
                          "%s size %zu fold %zu: stopped %d best %d test_acc %.4f",
                          nn::model_name_str(model_name), cfg.sizes[job.size_idx],
                          job.fold + 1, outcome.stop_epoch, outcome.best_epoch,
                          outcome.test_acc);
            std::lock_guard<std::mutex> lock(log_mutex);
            cfg.log(line);
        }
        slots[job_idx].outcome = std::move(outcome);
        slots[job_idx].done = true;
    };

    auto worker = [&] {
        for (;;) {
            const std::size_t job_idx = next.fetch_add(1);
            if (job_idx >= jobs.size() || failed.load()) {
                return;
            }
            try {
                run_job(job_idx);
            } catch (const std::exception& e) {
                errors[job_idx] = e.what();
                failed.store(true);
            }
        }
    };

    const int n_workers = std::max(1, cfg.workers);
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(n_workers));
        for (int i = 0; i < n_workers; i++) {
            threads.emplace_back(worker);
        }
        for (std::thread& t : threads) {
            t.join();
        }
    }

    ExperimentReport report;
    for (std::size_t i = 0; i < jobs.size(); i++) {
        if (!slots[i].done) {
            continue;
        }
        FoldCell cell;
        cell.model = cfg.models[jobs[i].model_idx];
        cell.train_size = cfg.sizes[jobs[i].size_idx];
        cell.fold = jobs[i].fold + 1;
        cell.outcome = std::move(slots[i].outcome);
        report.cells.push_back(std::move(cell));
    }
    if (failed.load()) {
        std::string msg = "experiment aborted";
        for (std::size_t i = 0; i < errors.size(); i++) {
            if (!errors[i].empty()) {
                msg += ": " + errors[i];
                break;
            }
        }
        throw ExperimentFailure(msg, std::move(report));
    }
    return report;
}

void write_metrics_csv(const std::string& path, const ExperimentReport& report) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw DataError("metrics: cannot open " + path + " for writing");
    }
    out << "model,train_size,fold,epoch,train_loss,train_acc,monitor_loss,monitor_acc,"
           "test_loss,test_acc\n";
    char buf[256];
    for (const FoldCell& cell : report.cells) {
        for (const EpochRow& row : cell.outcome.epochs) {
            std::snprintf(buf, sizeof(buf), "%s,%zu,%zu,%d,%.6f,%.4f,%.6f,%.4f,%.6f,%.4f\n",
                          nn::model_name_str(cell.model), cell.train_size, cell.fold,
                          row.epoch, row.train_loss, row.train_acc, row.monitor_loss,
                          row.monitor_acc, row.test_loss, row.test_acc);
            out << buf;
        }
    }
    if (!out) {
        throw DataError("metrics: short write to " + path);
    }
}

} // namespace quanvo::train
