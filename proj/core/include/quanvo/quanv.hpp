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
#include <string>
#include <vector>

#include "quanvo/image.hpp"
#include "quanvo/qsim.hpp"

namespace quanvo::quanv {

/// A quanvolutional filter: one fixed random circuit swept over an image
/// in 2x2 patches. The four patch pixels become Ry angles on four qubits,
/// the circuit runs once per patch, and the four <Z> values become the
/// four output channels.
struct QuanvFilter {
    qsim::RandomCircuit circuit;
    int patch_size = 2;
    int stride = 2;
    double scale = 3.14159265358979323846; // angle per unit pixel intensity

    int n_channels() const { return patch_size * patch_size; }
};

/// Standard filter: 4 qubits, n_gates random gates from seed, 2x2 patches.
QuanvFilter make_quanv_filter(std::uint64_t seed, int n_gates, int stride = 2);

/// theta_i = scale * x_i. Values outside [0, 1] are invalid-argument.
std::array<double, 4> encode_patch(const std::array<double, 4>& patch, double scale);

/// One patch through the filter: Ry(theta_i) on qubit i from the ground
/// state, then the circuit, then <Z_i> per qubit. Patch order is row-major:
/// (0,0) (0,1) (1,0) (1,1).
std::array<double, 4> quanv_patch(const std::array<double, 4>& patch,
                                  const QuanvFilter& filter);

/// Sweeps the filter over a single-channel image with values in [0, 1].
/// HxWx1 becomes (H/2)x(W/2)x4 at the default stride 2; in general one
/// output pixel per stride-aligned patch origin. An axis that does not
/// tile evenly is invalid-argument, naming the axis.
ImageTensor quanv_transform(const ImageTensor& image, const QuanvFilter& filter);

struct QuanvBatchResult {
    std::vector<ImageTensor> images;
    bool from_cache = false;
};

/// Content fingerprint of an image set (FNV-1a over dims and raw values).
std::uint64_t image_set_hash(const std::vector<ImageTensor>& images);

/// Transforms a whole image set, memoized on disk. The cache file records
/// the filter seed, gate count, stride and the input-content hash; when
/// everything matches the images are served from the file unchanged, and a
/// mismatched cache is regenerated in place. Empty cache_path disables
/// caching.
QuanvBatchResult transform_dataset(const std::vector<ImageTensor>& images,
                                   const QuanvFilter& filter,
                                   const std::string& cache_path);

/// Reads a cache file, validating against the filter and input hash.
/// Throws StaleCacheError on a parameter mismatch, FormatError on a
/// malformed file.
std::vector<ImageTensor> read_quanv_cache(const std::string& path,
                                          const QuanvFilter& filter,
                                          std::uint64_t input_hash);

void write_quanv_cache(const std::string& path, const std::vector<ImageTensor>& images,
                       const QuanvFilter& filter, std::uint64_t input_hash);

} // namespace quanvo::quanv
