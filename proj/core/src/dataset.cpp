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

#include "quanvo/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "quanvo/errors.hpp"
#include "quanvo/rng.hpp"

namespace quanvo::data {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kHarmonics = 10;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') {
        fields.push_back("");
    }
    return fields;
}

double parse_double(const std::string& s, const std::string& context) {
    if (s.empty()) {
        return 0.0;
    }
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception&) {
        throw DataError("manifest: bad number '" + s + "' in " + context);
    }
}

std::uint64_t parse_u64(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception&) {
        throw DataError("manifest: bad integer '" + s + "' in " + context);
    }
}

std::string fmt_double(double v) {
    if (std::isinf(v)) {
        return "inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Fisher-Yates with Rng::below, high index down to 1.
void shuffle_indices(std::vector<std::size_t>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; i--) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

std::vector<std::size_t> by_label(const DatasetManifest& manifest,
                                  const std::vector<std::size_t>& pool, Label label) {
    std::vector<std::size_t> out;
    for (std::size_t idx : pool) {
        if (manifest.entries[idx].label == label) {
            out.push_back(idx);
        }
    }
    return out;
}

} // namespace

const char* label_str(Label label) {
    return label == Label::Dysphonia ? "dysphonia" : "healthy";
}

Label parse_label(const std::string& s) {
    std::string low;
    for (char c : s) {
        low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (low == "dysphonia") {
        return Label::Dysphonia;
    }
    if (low == "healthy") {
        return Label::Healthy;
    }
    throw DataError("manifest: unknown label '" + s + "'");
}

std::size_t DatasetManifest::count(Label label) const {
    std::size_t n = 0;
    for (const ManifestEntry& e : entries) {
        if (e.label == label) {
            n++;
        }
    }
    return n;
}

DatasetManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("manifest: cannot open " + path);
    }
    std::string header;
    if (!std::getline(in, header)) {
        throw DataError("manifest: empty file " + path);
    }
    header = trim(header);
    const bool synth_schema = header == "synth,label,f0,jitter,shimmer,hnr,seed";
    if (!synth_schema && header != "path,label,offset_s,duration_s") {
        throw DataError("manifest " + path + ": unrecognized header '" + header + "'");
    }
    DatasetManifest manifest;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::string context = path + ":" + std::to_string(line_no);
        const std::vector<std::string> f = split_csv_line(line);
        ManifestEntry e;
        if (synth_schema) {
            if (f.size() != 7) {
                throw DataError("manifest " + context + ": expected 7 fields, got " +
                                std::to_string(f.size()));
            }
            e.id = f[0];
            e.is_synth = true;
            e.label = parse_label(f[1]);
            e.synth.f0_hz = parse_double(f[2], context);
            e.synth.jitter_pct = parse_double(f[3], context);
            e.synth.shimmer_pct = parse_double(f[4], context);
            e.synth.hnr_db = parse_double(f[5], context);
            e.synth.seed = parse_u64(f[6], context);
        } else {
            if (f.size() != 4) {
                throw DataError("manifest " + context + ": expected 4 fields, got " +
                                std::to_string(f.size()));
            }
            e.id = f[0];
            e.label = parse_label(f[1]);
            e.offset_s = parse_double(f[2], context);
            e.duration_s = parse_double(f[3], context);
        }
        if (e.id.empty()) {
            throw DataError("manifest " + context + ": empty id");
        }
        if (!seen.insert(e.id).second) {
            throw DataError("manifest " + context + ": duplicate entry '" + e.id + "'");
        }
        manifest.entries.push_back(std::move(e));
    }
    return manifest;
}

void write_manifest(const std::string& path, const DatasetManifest& manifest) {
    const bool synth_schema = !manifest.entries.empty() && manifest.entries[0].is_synth;
    for (const ManifestEntry& e : manifest.entries) {
        if (e.is_synth != synth_schema) {
            throw DataError("manifest: cannot mix synth and audio entries in one file");
        }
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw DataError("manifest: cannot open " + path + " for writing");
    }
    if (synth_schema) {
        out << "synth,label,f0,jitter,shimmer,hnr,seed\n";
        for (const ManifestEntry& e : manifest.entries) {
            out << e.id << "," << label_str(e.label) << "," << fmt_double(e.synth.f0_hz)
                << "," << fmt_double(e.synth.jitter_pct) << ","
                << fmt_double(e.synth.shimmer_pct) << "," << fmt_double(e.synth.hnr_db)
                << "," << e.synth.seed << "\n";
        }
    } else {
        out << "path,label,offset_s,duration_s\n";
        for (const ManifestEntry& e : manifest.entries) {
            out << e.id << "," << label_str(e.label) << "," << fmt_double(e.offset_s)
                << "," << fmt_double(e.duration_s) << "\n";
        }
    }
    if (!out) {
        throw DataError("manifest: short write to " + path);
    }
}

DatasetManifest make_synth_manifest(std::size_t n_dysphonia, std::size_t n_healthy,
                                    std::uint64_t seed) {
    DatasetManifest manifest;
    Rng rng(seed);
    char name[40];
    for (std::size_t i = 0; i < n_dysphonia; i++) {
        ManifestEntry e;
        std::snprintf(name, sizeof(name), "synth_dys_%03zu", i);
        e.id = name;
        e.is_synth = true;
        e.label = Label::Dysphonia;
        e.synth.f0_hz = rng.real(100.0, 300.0);
        e.synth.jitter_pct = rng.real(1.5, 3.5);
        e.synth.shimmer_pct = rng.real(5.0, 11.0);
        e.synth.hnr_db = rng.real(5.0, 12.0);
        e.synth.seed = rng.next();
        manifest.entries.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < n_healthy; i++) {
        ManifestEntry e;
        std::snprintf(name, sizeof(name), "synth_healthy_%03zu", i);
        e.id = name;
        e.is_synth = true;
        e.label = Label::Healthy;
        e.synth.f0_hz = rng.real(100.0, 300.0);
        e.synth.jitter_pct = rng.real(0.1, 0.6);
        e.synth.shimmer_pct = rng.real(1.0, 3.0);
        e.synth.hnr_db = rng.real(20.0, 30.0);
        e.synth.seed = rng.next();
        manifest.entries.push_back(std::move(e));
    }
    return manifest;
}

AudioClip synth_vowel(const SynthSpec& spec, int sample_rate) {
    if (!(spec.f0_hz >= 80.0 && spec.f0_hz <= 400.0)) {
        throw std::invalid_argument("synth_vowel: f0 " + std::to_string(spec.f0_hz) +
                                    " outside [80, 400] Hz");
    }
    if (!(spec.duration_s > 0.0) || sample_rate <= 0) {
        throw std::invalid_argument("synth_vowel: non-positive duration or sample rate");
    }
    if (spec.jitter_pct < 0.0 || spec.shimmer_pct < 0.0) {
        throw std::invalid_argument("synth_vowel: negative jitter or shimmer");
    }
    const std::size_t n =
        static_cast<std::size_t>(std::llround(spec.duration_s * sample_rate));
    AudioClip clip;
    clip.sample_rate = sample_rate;
    clip.samples.assign(n, 0.0);

    Rng rng(spec.seed);
    const double nominal_period = sample_rate / spec.f0_hz;
    double cycle_start = 0.0;
    while (cycle_start < static_cast<double>(n)) {
        // Two draws per cycle regardless of the percentages, so streams
        // stay aligned across specs that share a seed.
        const double gj = rng.normal();
        const double gs = rng.normal();
        double factor = 1.0 + spec.jitter_pct / 100.0 * gj;
        factor = std::clamp(factor, 0.5, 1.5);
        const double period = nominal_period * factor;
        const double amp = 0.3 * (1.0 + spec.shimmer_pct / 100.0 * gs);
        const std::size_t s_begin = static_cast<std::size_t>(std::ceil(cycle_start));
        const double cycle_end = std::min(cycle_start + period, static_cast<double>(n));
        for (std::size_t s = s_begin; static_cast<double>(s) < cycle_end; s++) {
            const double phase = (static_cast<double>(s) - cycle_start) / period;
            double v = 0.0;
            for (int h = 1; h <= kHarmonics; h++) {
                v += std::sin(2.0 * kPi * h * phase) / h;
            }
            clip.samples[s] = amp * v;
        }
        cycle_start += period;
    }

    if (std::isfinite(spec.hnr_db)) {
        double power = 0.0;
        for (double v : clip.samples) {
            power += v * v;
        }
        power /= static_cast<double>(n);
        const double sigma = std::sqrt(power * std::pow(10.0, -spec.hnr_db / 10.0));
        for (double& v : clip.samples) {
            v += sigma * rng.normal();
        }
    }
    return clip;
}

AudioClip load_clip(const ManifestEntry& entry) {
    if (entry.is_synth) {
        return synth_vowel(entry.synth);
    }
    return read_wav_file(entry.id, entry.offset_s, entry.duration_s);
}

SplitPlan train_test_split(const DatasetManifest& manifest, const SplitConfig& cfg,
                           std::uint64_t seed) {
    const long long total = static_cast<long long>(manifest.size());
    const long long d = static_cast<long long>(manifest.count(Label::Dysphonia));
    const long long h = total - d;
    const long long test_n = static_cast<long long>(cfg.test_size);
    if (test_n <= 0 || test_n >= total) {
        throw DataError("split: test size " + std::to_string(test_n) +
                        " infeasible for " + std::to_string(total) + " entries");
    }
    const long long need_d = std::llround(cfg.ratio * static_cast<double>(cfg.max_train_size));
    const long long need_h = static_cast<long long>(cfg.max_train_size) - need_d;

    // Proportional test allocation, then shrink a class's share when the
    // remaining training pool could not cover the largest subsample.
    long long td = std::llround(static_cast<double>(test_n) * d / total);
    td = std::clamp(td, 0LL, test_n);
    long long th = test_n - td;
    if (td > d - need_d) {
        td = d - need_d;
        th = test_n - td;
    }
    if (th > h - need_h) {
        th = h - need_h;
        td = test_n - th;
    }
    if (td < 1 || td > d - need_d) {
        throw DataError("split: class dysphonia cannot cover test share and a " +
                        std::to_string(cfg.max_train_size) + "-sample subsample (" +
                        std::to_string(d) + " available)");
    }
    if (th < 1 || th > h - need_h) {
        throw DataError("split: class healthy cannot cover test share and a " +
                        std::to_string(cfg.max_train_size) + "-sample subsample (" +
                        std::to_string(h) + " available)");
    }

    std::vector<std::size_t> all(manifest.size());
    for (std::size_t i = 0; i < all.size(); i++) {
        all[i] = i;
    }
    SplitPlan plan;
    plan.seed = seed;
    const Label labels[2] = {Label::Dysphonia, Label::Healthy};
    const long long takes[2] = {td, th};
    for (int c = 0; c < 2; c++) {
        std::vector<std::size_t> members = by_label(manifest, all, labels[c]);
        Rng rng(Rng::mix(seed, 11, static_cast<std::uint64_t>(c)));
        shuffle_indices(members, rng);
        for (std::size_t i = 0; i < members.size(); i++) {
            if (i < static_cast<std::size_t>(takes[c])) {
                plan.test.push_back(members[i]);
            } else {
                plan.train.push_back(members[i]);
            }
        }
    }
    std::sort(plan.train.begin(), plan.train.end());
    std::sort(plan.test.begin(), plan.test.end());
    return plan;
}

std::vector<std::size_t> stratified_subsample(const DatasetManifest& manifest,
                                              const std::vector<std::size_t>& pool,
                                              std::size_t n, double ratio,
                                              std::uint64_t seed) {
    if (!(ratio >= 0.0 && ratio <= 1.0)) {
        throw std::invalid_argument("subsample: ratio outside [0, 1]");
    }
    if (n > pool.size()) {
        throw DataError("subsample: requested " + std::to_string(n) + " from a pool of " +
                        std::to_string(pool.size()));
    }
    const std::size_t need_d =
        static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
    const std::size_t need_h = n - need_d;

    std::vector<std::size_t> out;
    const Label labels[2] = {Label::Dysphonia, Label::Healthy};
    const std::size_t takes[2] = {need_d, need_h};
    for (int c = 0; c < 2; c++) {
        std::vector<std::size_t> members = by_label(manifest, pool, labels[c]);
        if (members.size() < takes[c]) {
            throw DataError(std::string("subsample: class ") + label_str(labels[c]) +
                            " needs " + std::to_string(takes[c]) + ", pool has " +
                            std::to_string(members.size()));
        }
        Rng rng(Rng::mix(seed, 21, static_cast<std::uint64_t>(c)));
        shuffle_indices(members, rng);
        out.insert(out.end(), members.begin(),
                   members.begin() + static_cast<std::ptrdiff_t>(takes[c]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FoldSplit> kfold_split(const DatasetManifest& manifest,
                                   const std::vector<std::size_t>& indices,
                                   std::size_t k, std::uint64_t seed) {
    if (k == 0 || k > indices.size()) {
        throw std::invalid_argument("kfold: k=" + std::to_string(k) + " with " +
                                    std::to_string(indices.size()) + " samples");
    }
    // Deal each class round-robin, continuing the fold pointer from one
    // class into the next so overall fold sizes differ by at most one.
    std::vector<std::size_t> fold_of(indices.size(), 0);
    Rng rng(Rng::mix(seed, 31));
    std::size_t pointer = 0;
    const Label labels[2] = {Label::Dysphonia, Label::Healthy};
    for (Label label : labels) {
        std::vector<std::size_t> positions;
        for (std::size_t i = 0; i < indices.size(); i++) {
            if (manifest.entries[indices[i]].label == label) {
                positions.push_back(i);
            }
        }
        shuffle_indices(positions, rng);
        for (std::size_t pos : positions) {
            fold_of[pos] = pointer;
            pointer = (pointer + 1) % k;
        }
    }
    std::vector<FoldSplit> folds(k);
    for (std::size_t i = 0; i < indices.size(); i++) {
        for (std::size_t f = 0; f < k; f++) {
            if (fold_of[i] == f) {
                folds[f].validation.push_back(indices[i]);
            } else {
                folds[f].train.push_back(indices[i]);
            }
        }
    }
    for (FoldSplit& fold : folds) {
        std::sort(fold.train.begin(), fold.train.end());
        std::sort(fold.validation.begin(), fold.validation.end());
    }
    return folds;
}

} // namespace quanvo::data
