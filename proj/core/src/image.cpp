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

#include "quanvo/image.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "quanvo/errors.hpp"

namespace quanvo {

namespace {

constexpr char kMagic[6] = {'Q', 'V', 'I', 'M', 'G', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                 static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
    out.write(b, 4);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) {
        throw FormatError("truncated QVIMG1 header");
    }
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

} // namespace

void write_image(std::ostream& out, const ImageTensor& img) {
    out.write(kMagic, sizeof(kMagic));
    put_u32(out, static_cast<std::uint32_t>(img.height));
    put_u32(out, static_cast<std::uint32_t>(img.width));
    put_u32(out, static_cast<std::uint32_t>(img.channels));
    // float64 little-endian; this writes raw doubles, matching the format on
    // every platform the project targets.
    out.write(reinterpret_cast<const char*>(img.values.data()),
              static_cast<std::streamsize>(img.values.size() * sizeof(double)));
}

void write_image_file(const std::string& path, const ImageTensor& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot open for writing: " + path);
    }
    write_image(out, img);
    if (!out) {
        throw FormatError("write failed: " + path);
    }
}

ImageTensor read_image(std::istream& in) {
    char magic[6];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw FormatError("not a QVIMG1 stream");
    }
    ImageTensor img;
    img.height = get_u32(in);
    img.width = get_u32(in);
    img.channels = get_u32(in);
    img.values.resize(img.height * img.width * img.channels);
    in.read(reinterpret_cast<char*>(img.values.data()),
            static_cast<std::streamsize>(img.values.size() * sizeof(double)));
    if (!in) {
        throw FormatError("truncated QVIMG1 payload");
    }
    return img;
}

ImageTensor read_image_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open: " + path);
    }
    return read_image(in);
}

} // namespace quanvo
