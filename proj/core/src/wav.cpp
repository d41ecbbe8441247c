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

#include "quanvo/audio.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "quanvo/errors.hpp"

namespace quanvo {

namespace {

std::uint32_t le32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t le16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

} // namespace

AudioClip read_wav_file(const std::string& path, double offset_s, double duration_s) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open WAV file: " + path);
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw FormatError("not a RIFF/WAVE file: " + path);
    }

    std::uint16_t format = 0;
    std::uint16_t n_channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits = 0;
    const unsigned char* data = nullptr;
    std::size_t data_len = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
        const std::uint32_t chunk_len = le32(bytes.data() + pos + 4);
        const unsigned char* body = bytes.data() + pos + 8;
        if (pos + 8 + chunk_len > bytes.size()) {
            throw FormatError("truncated chunk in WAV file: " + path);
        }
        if (std::memcmp(id, "fmt ", 4) == 0 && chunk_len >= 16) {
            format = le16(body);
            n_channels = le16(body + 2);
            sample_rate = le32(body + 4);
            bits = le16(body + 14);
            // WAVE_FORMAT_EXTENSIBLE carries the real format in the extension.
            if (format == 0xFFFE && chunk_len >= 40) {
                format = le16(body + 24);
            }
        } else if (std::memcmp(id, "data", 4) == 0) {
            data = body;
            data_len = chunk_len;
        }
        pos += 8 + chunk_len + (chunk_len & 1);
    }

    if (sample_rate == 0 || n_channels == 0) {
        throw FormatError("WAV file has no fmt chunk: " + path);
    }
    if (data == nullptr) {
        throw FormatError("WAV file has no data chunk: " + path);
    }

    const bool pcm16 = (format == 1 && bits == 16);
    const bool float32 = (format == 3 && bits == 32);
    if (!pcm16 && !float32) {
        throw FormatError("unsupported WAV encoding (format=" + std::to_string(format) +
                          ", bits=" + std::to_string(bits) + "): " + path);
    }

    const std::size_t bytes_per_sample = bits / 8;
    const std::size_t frame_size = bytes_per_sample * n_channels;
    const std::size_t n_frames = data_len / frame_size;

    AudioClip clip;
    clip.sample_rate = static_cast<int>(sample_rate);

    std::size_t begin = static_cast<std::size_t>(std::llround(offset_s * sample_rate));
    if (begin > n_frames) {
        begin = n_frames;
    }
    std::size_t end = n_frames;
    if (duration_s > 0.0) {
        const std::size_t want = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
        end = std::min(n_frames, begin + want);
    }

    clip.samples.reserve(end - begin);
    for (std::size_t f = begin; f < end; ++f) {
        const unsigned char* p = data + f * frame_size; // first channel only
        if (pcm16) {
            const auto raw = static_cast<std::int16_t>(le16(p));
            clip.samples.push_back(static_cast<double>(raw) / 32768.0);
        } else {
            float v = 0.0F;
            std::uint32_t u = le32(p);
            std::memcpy(&v, &u, sizeof(v));
            clip.samples.push_back(static_cast<double>(v));
        }
    }
    if (clip.samples.empty()) {
        throw DataError("WAV segment is empty: " + path);
    }
    return clip;
}

AudioClip pad_or_truncate(const AudioClip& clip, double duration_s) {
    if (clip.sample_rate <= 0 || clip.samples.empty()) {
        throw std::invalid_argument("pad_or_truncate: clip must be non-empty with positive rate");
    }
    const auto target = static_cast<std::size_t>(std::llround(duration_s * clip.sample_rate));
    AudioClip out;
    out.sample_rate = clip.sample_rate;
    out.samples = clip.samples;
    out.samples.resize(target, 0.0);
    return out;
}

} // namespace quanvo
