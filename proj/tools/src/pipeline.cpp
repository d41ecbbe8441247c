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

#include "pipeline.hpp"

#include <stdexcept>
#include <thread>

#include "quanvo/errors.hpp"

namespace quanvo::cli {

namespace {

dsp::WindowKind parse_window_kind(const std::string& s) {
    if (s == "hann") {
        return dsp::WindowKind::Hann;
    }
    if (s == "hamming") {
        return dsp::WindowKind::Hamming;
    }
    throw ConfigError("config: dsp.window = '" + s + "' (expected hann or hamming)");
}

dsp::RefPower parse_ref_power(const std::string& s) {
    if (s == "max") {
        return dsp::RefPower::MaxOfSpectrogram;
    }
    if (s == "fixed") {
        return dsp::RefPower::Fixed;
    }
    throw ConfigError("config: dsp.ref = '" + s + "' (expected max or fixed)");
}

} // namespace

RunSettings parse_settings(const config::Config& cfg) {
    RunSettings s;

    s.dsp.stft.window_size =
        static_cast<std::size_t>(cfg.get_int("dsp", "window_size", 2048));
    s.dsp.stft.hop_length = static_cast<std::size_t>(cfg.get_int("dsp", "hop_length", 512));
    s.dsp.stft.n_fft = static_cast<std::size_t>(cfg.get_int("dsp", "n_fft", 2048));
    s.dsp.stft.window_kind = parse_window_kind(cfg.get("dsp", "window", "hann"));
    s.dsp.mel.n_mels = static_cast<std::size_t>(cfg.get_int("dsp", "n_mels", 128));
    s.dsp.mel.f_min = cfg.get_double("dsp", "f_min", 0.0);
    s.dsp.mel.f_max = cfg.get_double("dsp", "f_max", 0.0);
    s.dsp.mel.ref = parse_ref_power(cfg.get("dsp", "ref", "max"));
    s.dsp.mel.ref_value = cfg.get_double("dsp", "ref_value", 1.0);
    s.dsp.clip_duration_s = cfg.get_double("dsp", "duration_s", 2.0);
    s.dsp.image_height = static_cast<std::size_t>(cfg.get_int("dsp", "image_height", 40));
    s.dsp.image_width = static_cast<std::size_t>(cfg.get_int("dsp", "image_width", 100));

    s.quanv_seed = cfg.get_u64("quanv", "seed", 7);
    s.quanv_gates = static_cast<int>(cfg.get_int("quanv", "n_gates", 8));
    s.quanv_stride = static_cast<int>(cfg.get_int("quanv", "stride", 2));
    s.quanv_cache = cfg.get("quanv", "cache", "");

    s.manifest_path = cfg.get("data", "manifest", "");
    s.synth_dysphonia =
        static_cast<std::size_t>(cfg.get_int("data", "synth_dysphonia", 216));
    s.synth_healthy = static_cast<std::size_t>(cfg.get_int("data", "synth_healthy", 88));
    s.data_seed = cfg.get_u64("data", "seed", 1);
    s.test_size = static_cast<std::size_t>(cfg.get_int("data", "test_size", 61));
    s.ratio = cfg.get_double("data", "ratio", 0.7);

    s.train.max_epochs = static_cast<int>(cfg.get_int("train", "max_epochs", 3000));
    s.train.patience = static_cast<int>(cfg.get_int("train", "patience", 15));
    s.train.batch_size = static_cast<int>(cfg.get_int("train", "batch_size", 32));
    s.train.adam.lr = cfg.get_double("train", "lr", 1e-3);
    s.train.adam.beta1 = cfg.get_double("train", "beta1", 0.9);
    s.train.adam.beta2 = cfg.get_double("train", "beta2", 0.999);
    s.train.adam.eps = cfg.get_double("train", "eps", 1e-8);

    s.models = cfg.get_list("experiment", "models", s.models);
    std::vector<std::string> size_strings;
    for (std::size_t v : s.sizes) {
        size_strings.push_back(std::to_string(v));
    }
    size_strings = cfg.get_list("experiment", "sizes", size_strings);
    s.sizes.clear();
    for (const std::string& v : size_strings) {
        try {
            s.sizes.push_back(static_cast<std::size_t>(std::stoull(v)));
        } catch (const std::exception&) {
            throw ConfigError("config: experiment.sizes entry '" + v + "' is not a size");
        }
    }
    s.k_folds = static_cast<std::size_t>(cfg.get_int("experiment", "k_folds", 10));
    s.experiment_seed = cfg.get_u64("experiment", "seed", 42);
    s.workers = static_cast<int>(cfg.get_int("experiment", "workers", 0));
    s.output_dir = cfg.get("experiment", "output_dir", "out");

    const std::vector<std::string> unknown = cfg.unconsumed_keys();
    if (!unknown.empty()) {
        std::string msg = "config: unknown keys:";
        for (const std::string& key : unknown) {
            msg += " " + key;
        }
        throw ConfigError(msg);
    }
    return s;
}

data::DatasetManifest resolve_manifest(const RunSettings& settings) {
    if (!settings.manifest_path.empty()) {
        return data::read_manifest(settings.manifest_path);
    }
    return data::make_synth_manifest(settings.synth_dysphonia, settings.synth_healthy,
                                     settings.data_seed);
}

std::vector<ImageTensor> compute_images(const data::DatasetManifest& manifest,
                                        const dsp::DspConfig& cfg) {
    std::vector<ImageTensor> images;
    images.reserve(manifest.size());
    for (const data::ManifestEntry& entry : manifest.entries) {
        try {
            images.push_back(dsp::clip_to_image(data::load_clip(entry), cfg));
        } catch (const std::exception& e) {
            throw DataError("preprocess " + entry.id + ": " + e.what());
        }
    }
    return images;
}

quanv::QuanvFilter make_filter(const RunSettings& settings) {
    return quanv::make_quanv_filter(settings.quanv_seed, settings.quanv_gates,
                                    settings.quanv_stride);
}

std::string sanitize_id(const std::string& id) {
    std::string out;
    for (char c : id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
        out += ok ? c : '_';
    }
    return out;
}

int resolve_workers(int requested) {
    if (requested > 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace quanvo::cli
