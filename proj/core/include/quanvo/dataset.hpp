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

#include "quanvo/audio.hpp"

namespace quanvo::data {

enum class Label : int { Healthy = 0, Dysphonia = 1 };

const char* label_str(Label label);
Label parse_label(const std::string& s);

/// Parameters of one synthetic sustained-vowel clip. Jitter perturbs each
/// glottal cycle's period, shimmer its amplitude, both in percent; hnr_db
/// sets the harmonics-to-noise ratio of the additive noise (infinity
/// means no noise).
struct SynthSpec {
    double f0_hz = 150.0;
    double duration_s = 2.0;
    double jitter_pct = 0.0;
    double shimmer_pct = 0.0;
    double hnr_db = 0.0; // infinity disables noise
    std::uint64_t seed = 0;
};

/// One dataset row: either an audio file reference or a synthetic spec.
struct ManifestEntry {
    std::string id;      // file path, or a synth entry name
    bool is_synth = false;
    Label label = Label::Healthy;
    double offset_s = 0.0;
    double duration_s = 0.0; // 0 = to end of file (audio entries only)
    SynthSpec synth;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;

    std::size_t count(Label label) const;
    std::size_t size() const { return entries.size(); }
};

/// Audio manifest CSV: header `path,label,offset_s,duration_s`. Synth
/// manifest CSV: header `synth,label,f0,jitter,shimmer,hnr,seed`. The
/// header picks the schema; labels are `dysphonia` or `healthy`.
DatasetManifest read_manifest(const std::string& path);
void write_manifest(const std::string& path, const DatasetManifest& manifest);

/// Synthetic stand-in for the clinical dataset: n_dysphonia + n_healthy
/// entries with per-entry voice parameters drawn from class-typical
/// ranges around the presets (healthy: jitter 0.3%, shimmer 2%, HNR 25
/// dB; dysphonic: jitter 2.5%, shimmer 8%, HNR 8 dB). The ranges are
/// engineering choices, not clinical estimates.
DatasetManifest make_synth_manifest(std::size_t n_dysphonia, std::size_t n_healthy,
                                    std::uint64_t seed);

/// Renders one synthetic vowel: 10 harmonics with 1/h rolloff, per-cycle
/// period and amplitude perturbation, then additive Gaussian noise scaled
/// to the requested HNR. Same spec and seed give identical samples.
AudioClip synth_vowel(const SynthSpec& spec, int sample_rate = 44100);

/// Loads an entry's audio: reads the WAV segment or renders the synth spec.
AudioClip load_clip(const ManifestEntry& entry);

/// Fixed train/test partition. The test set stays identical across all
/// experiment sizes in a run.
struct SplitPlan {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    std::uint64_t seed = 0;
};

struct SplitConfig {
    std::size_t test_size = 61;
    std::size_t max_train_size = 240; // largest later subsample to support
    double ratio = 0.7;              // dysphonia share of each subsample
};

/// Splits per class proportionally, then shrinks a class's test share when
/// needed so the training pool can still supply the largest subsample
/// (round(ratio * max_train_size) dysphonia + remainder healthy). Raises
/// DataError naming the class that cannot be satisfied.
SplitPlan train_test_split(const DatasetManifest& manifest, const SplitConfig& cfg,
                           std::uint64_t seed);

/// Draws round(ratio*n) dysphonia + remainder healthy from the pool,
/// without replacement, seeded. DataError names a class with too few
/// members.
std::vector<std::size_t> stratified_subsample(const DatasetManifest& manifest,
                                              const std::vector<std::size_t>& pool,
                                              std::size_t n, double ratio,
                                              std::uint64_t seed);

struct FoldSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
};

/// Stratified k-fold partition: every index lands in exactly one
/// validation fold, fold sizes differ by at most one, and each class is
/// spread evenly across folds. k > n is invalid-argument.
std::vector<FoldSplit> kfold_split(const DatasetManifest& manifest,
                                   const std::vector<std::size_t>& indices,
                                   std::size_t k, std::uint64_t seed);

} // namespace quanvo::data
