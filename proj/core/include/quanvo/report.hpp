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

#include <cstddef>
#include <string>
#include <vector>

namespace quanvo::report {

struct MetricsRow {
    std::string model;
    std::size_t train_size = 0;
    std::size_t fold = 0;
    int epoch = 0;
    double train_loss = 0.0, train_acc = 0.0;
    double monitor_loss = 0.0, monitor_acc = 0.0;
    double test_loss = 0.0, test_acc = 0.0;
};

std::vector<MetricsRow> read_metrics_csv(const std::string& path);

struct SummaryRow {
    std::string model;
    std::size_t train_size = 0;
    double mean_test_acc = 0.0;
    double std_test_acc = 0.0;
};

/// Per (model, size): picks each fold's best epoch (minimum monitor loss,
/// first on ties), then the mean and population standard deviation of the
/// test accuracy at those epochs. Models keep first-appearance order,
/// sizes ascend. Folds missing against `expected_folds` produce one
/// warning per gap-bearing cell; statistics cover the folds present.
std::vector<SummaryRow> summarize(const std::vector<MetricsRow>& rows,
                                  std::size_t expected_folds = 10,
                                  std::vector<std::string>* warnings = nullptr);

/// Summary CSV: header `model,train_size,mean_test_acc,std_test_acc`,
/// both statistics %.4f.
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(const std::string& path);

/// Learning-curve figure: mean test accuracy vs training-set size, one
/// line per model with a +-1 std shaded band. Accuracy axis is fixed to
/// [0, 1]; band polygons carry data-model attributes and list the upper
/// edge left to right then the lower edge back. Empty selection is
/// invalid-argument.
std::string render_learning_curve_svg(const std::vector<SummaryRow>& summary,
                                      const std::vector<std::string>& models,
                                      const std::string& title);

/// Epoch-curve figure for one training size: accuracy (top panel) and
/// loss (bottom panel) against epoch, train dashed and test solid per
/// model, from the given fold's rows.
std::string render_epoch_curves_svg(const std::vector<MetricsRow>& rows,
                                    std::size_t train_size, std::size_t fold,
                                    const std::vector<std::string>& models,
                                    const std::string& title);

/// Writes the standard figure set into out_dir: learning curves for the
/// model pairs (qnn1, cnn1) and (qnn2, cnn2) when present, and epoch
/// curves for training sizes 60 and 240 when present. Returns the file
/// names written.
std::vector<std::string> write_figures(const std::vector<MetricsRow>& metrics,
                                       const std::vector<SummaryRow>& summary,
                                       const std::string& out_dir);

} // namespace quanvo::report
