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
#include <string>
#include <vector>

#include "quanvo/config.hpp"
#include "quanvo/dataset.hpp"
#include "quanvo/dsp.hpp"
#include "quanvo/image.hpp"
#include "quanvo/quanv.hpp"
#include "quanvo/train.hpp"

namespace quanvo::cli {

/// Everything a run needs, resolved from config file + environment +
/// built-in defaults.
struct RunSettings {
    dsp::DspConfig dsp;
    std::uint64_t quanv_seed = 7;
    int quanv_gates = 8;
    int quanv_stride = 2;
    std::string quanv_cache; // empty = no on-disk cache

    std::string manifest_path; // empty = generate a synthetic manifest
    std::size_t synth_dysphonia = 216;
    std::size_t synth_healthy = 88;
    std::uint64_t data_seed = 1;
    std::size_t test_size = 61;
    double ratio = 0.7;

    train::TrainConfig train;
    std::vector<std::string> models = {"qnn1", "cnn1", "qnn2", "cnn2"};
    std::vector<std::size_t> sizes = {60, 80, 100, 120, 140, 160, 180, 200, 220, 240};
    std::size_t k_folds = 10;
    std::uint64_t experiment_seed = 42;
    int workers = 0; // 0 = hardware concurrency
    std::string output_dir = "out";
};

/// Reads every key the pipeline understands, then rejects whatever is
/// left over in one ConfigError listing all unknown keys.
RunSettings parse_settings(const config::Config& cfg);

/// Loads or generates the dataset manifest per the settings.
data::DatasetManifest resolve_manifest(const RunSettings& settings);

/// Renders every manifest entry to the fixed-size model input. Throws on
/// the first failing entry.
std::vector<ImageTensor> compute_images(const data::DatasetManifest& manifest,
                                        const dsp::DspConfig& cfg);

quanv::QuanvFilter make_filter(const RunSettings& settings);

/// File-name-safe form of a manifest id.
std::string sanitize_id(const std::string& id);

int resolve_workers(int requested);

} // namespace quanvo::cli
