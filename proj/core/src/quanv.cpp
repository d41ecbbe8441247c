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

#include "quanvo/quanv.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "quanvo/errors.hpp"
#include "quanvo/hash.hpp"

namespace quanvo::quanv {

namespace {

constexpr char kCacheMagic[8] = {'Q', 'V', 'C', 'A', 'C', 'H', 'E', '1'};

void write_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    std::memcpy(buf, &v, 4);
    out.write(buf, 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.write(buf, 8);
}

std::uint32_t read_u32(std::istream& in, const char* what) {
    char buf[4];
    in.read(buf, 4);
    if (!in) {
        throw FormatError(std::string("quanv cache truncated reading ") + what);
    }
    std::uint32_t v;
    std::memcpy(&v, buf, 4);
    return v;
}

std::uint64_t read_u64(std::istream& in, const char* what) {
    char buf[8];
    in.read(buf, 8);
    if (!in) {
        throw FormatError(std::string("quanv cache truncated reading ") + what);
    }
    std::uint64_t v;
    std::memcpy(&v, buf, 8);
    return v;
}

} // namespace

QuanvFilter make_quanv_filter(std::uint64_t seed, int n_gates, int stride) {
    if (n_gates < 0) {
        throw std::invalid_argument("quanv: n_gates must be >= 0");
    }
    if (stride < 1) {
        throw std::invalid_argument("quanv: stride must be >= 1");
    }
    QuanvFilter filter;
    filter.circuit = qsim::random_circuit(4, n_gates, seed);
    filter.stride = stride;
    return filter;
}

std::array<double, 4> encode_patch(const std::array<double, 4>& patch, double scale) {
    std::array<double, 4> angles{};
    for (int i = 0; i < 4; i++) {
        const double x = patch[i];
        if (!(x >= 0.0 && x <= 1.0)) {
            throw std::invalid_argument("quanv: patch value " + std::to_string(x) +
                                        " outside [0, 1]; normalize the image first");
        }
        angles[i] = scale * x;
    }
    return angles;
}

std::array<double, 4> quanv_patch(const std::array<double, 4>& patch,
                                  const QuanvFilter& filter) {
    const std::array<double, 4> angles = encode_patch(patch, filter.scale);
    qsim::QuantumState state = qsim::ground_state(4);
    for (int q = 0; q < 4; q++) {
        qsim::apply_gate(state, qsim::GateOp::one_qubit(qsim::GateKind::Ry, q, angles[q]));
    }
    qsim::run_circuit(state, filter.circuit);
    std::array<double, 4> out{};
    for (int q = 0; q < 4; q++) {
        out[q] = qsim::expectation_z(state, q);
    }
    return out;
}

ImageTensor quanv_transform(const ImageTensor& image, const QuanvFilter& filter) {
    if (image.channels != 1) {
        throw std::invalid_argument("quanv: expected a single-channel image, got " +
                                    std::to_string(image.channels) + " channels");
    }
    const std::size_t p = static_cast<std::size_t>(filter.patch_size);
    const std::size_t s = static_cast<std::size_t>(filter.stride);
    if (image.height < p || (image.height - p) % s != 0) {
        throw std::invalid_argument("quanv: image height " + std::to_string(image.height) +
                                    " does not tile with patch " + std::to_string(p) +
                                    " stride " + std::to_string(s));
    }
    if (image.width < p || (image.width - p) % s != 0) {
        throw std::invalid_argument("quanv: image width " + std::to_string(image.width) +
                                    " does not tile with patch " + std::to_string(p) +
                                    " stride " + std::to_string(s));
    }
    const std::size_t out_h = (image.height - p) / s + 1;
    const std::size_t out_w = (image.width - p) / s + 1;
    ImageTensor out(out_h, out_w, static_cast<std::size_t>(filter.n_channels()));
    for (std::size_t oy = 0; oy < out_h; oy++) {
        for (std::size_t ox = 0; ox < out_w; ox++) {
            const std::size_t y = oy * s;
            const std::size_t x = ox * s;
            const std::array<double, 4> patch = {
                image.at(y, x, 0), image.at(y, x + 1, 0),
                image.at(y + 1, x, 0), image.at(y + 1, x + 1, 0)};
            const std::array<double, 4> channels = quanv_patch(patch, filter);
            for (std::size_t c = 0; c < 4; c++) {
                out.at(oy, ox, c) = channels[c];
            }
        }
    }
    return out;
}

std::uint64_t image_set_hash(const std::vector<ImageTensor>& images) {
    Fnv1a64 h;
    h.update_u32(static_cast<std::uint32_t>(images.size()));
    for (const ImageTensor& img : images) {
        h.update_u32(static_cast<std::uint32_t>(img.height));
        h.update_u32(static_cast<std::uint32_t>(img.width));
        h.update_u32(static_cast<std::uint32_t>(img.channels));
        h.update(img.values.data(), img.values.size() * sizeof(double));
    }
    return h.digest();
}

void write_quanv_cache(const std::string& path, const std::vector<ImageTensor>& images,
                       const QuanvFilter& filter, std::uint64_t input_hash) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError("quanv cache: cannot open " + path + " for writing");
    }
    out.write(kCacheMagic, sizeof(kCacheMagic));
    write_u64(out, filter.circuit.seed);
    write_u32(out, static_cast<std::uint32_t>(filter.circuit.gates.size()));
    write_u32(out, static_cast<std::uint32_t>(filter.stride));
    write_u64(out, input_hash);
    write_u32(out, static_cast<std::uint32_t>(images.size()));
    for (const ImageTensor& img : images) {
        write_image(out, img);
    }
    if (!out) {
        throw FormatError("quanv cache: short write to " + path);
    }
}

std::vector<ImageTensor> read_quanv_cache(const std::string& path,
                                          const QuanvFilter& filter,
                                          std::uint64_t input_hash) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("quanv cache: cannot open " + path);
    }
    char magic[sizeof(kCacheMagic)];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0) {
        throw FormatError("quanv cache: bad magic in " + path);
    }
    const std::uint64_t seed = read_u64(in, "seed");
    const std::uint32_t n_gates = read_u32(in, "gate count");
    const std::uint32_t stride = read_u32(in, "stride");
    const std::uint64_t hash = read_u64(in, "input hash");
    if (seed != filter.circuit.seed || n_gates != filter.circuit.gates.size() ||
        stride != static_cast<std::uint32_t>(filter.stride)) {
        throw StaleCacheError("quanv cache " + path + " was built with a different filter");
    }
    if (hash != input_hash) {
        throw StaleCacheError("quanv cache " + path + " was built from different input images");
    }
    const std::uint32_t count = read_u32(in, "image count");
    std::vector<ImageTensor> images;
    images.reserve(count);
    for (std::uint32_t i = 0; i < count; i++) {
        images.push_back(read_image(in));
    }
    return images;
}

QuanvBatchResult transform_dataset(const std::vector<ImageTensor>& images,
                                   const QuanvFilter& filter,
                                   const std::string& cache_path) {
    const std::uint64_t hash = image_set_hash(images);
    if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
        try {
            QuanvBatchResult result;
            result.images = read_quanv_cache(cache_path, filter, hash);
            result.from_cache = true;
            return result;
        } catch (const StaleCacheError&) {
            // Regenerate over the stale file below.
        }
    }
    QuanvBatchResult result;
    result.images.reserve(images.size());
    for (const ImageTensor& img : images) {
        result.images.push_back(quanv_transform(img, filter));
    }
    if (!cache_path.empty()) {
        write_quanv_cache(cache_path, result.images, filter, hash);
    }
    return result;
}

} // namespace quanvo::quanv
