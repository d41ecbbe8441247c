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
#include <iosfwd>
#include <string>
#include <vector>

namespace quanvo {

/// Rank-3 real image, row-major (height, width, channels).
struct ImageTensor {
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t channels = 0;
    std::vector<double> values;

    ImageTensor() = default;
    ImageTensor(std::size_t h, std::size_t w, std::size_t c)
        : height(h), width(w), channels(c), values(h * w * c, 0.0) {}

    double& at(std::size_t y, std::size_t x, std::size_t c) {
        return values[(y * width + x) * channels + c];
    }
    double at(std::size_t y, std::size_t x, std::size_t c) const {
        return values[(y * width + x) * channels + c];
    }
    std::size_t size() const { return values.size(); }
};

/// Binary image file: magic "QVIMG1", u32 height/width/channels
/// (little-endian), float64 values row-major.
void write_image(std::ostream& out, const ImageTensor& img);
void write_image_file(const std::string& path, const ImageTensor& img);
ImageTensor read_image(std::istream& in);
ImageTensor read_image_file(const std::string& path);

} // namespace quanvo
