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

#include <string>
#include <vector>

namespace quanvo {

/// Mono sample buffer, nominal amplitude range [-1, 1].
struct AudioClip {
    std::vector<double> samples;
    int sample_rate = 0;

    double duration_s() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

/// Reads a RIFF/WAVE file: PCM 16-bit or IEEE float 32-bit, mono or the
/// first channel of multi-channel audio. Sample rate comes from the header.
/// offset_s/duration_s cut a segment; duration_s <= 0 means to the end.
AudioClip read_wav_file(const std::string& path, double offset_s = 0.0, double duration_s = 0.0);

/// Zero-pads or truncates the clip to exactly round(duration_s * rate) samples.
AudioClip pad_or_truncate(const AudioClip& clip, double duration_s);

} // namespace quanvo
