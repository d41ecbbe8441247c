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
#include <cstdint>
#include <cstring>
#include <string_view>

namespace quanvo {

/// Incremental FNV-1a (64-bit). Fingerprints image sets for cache keys;
/// not cryptographic.
class Fnv1a64 {
  public:
    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; i++) {
            state_ ^= p[i];
            state_ *= 0x100000001B3ULL;
        }
    }

    void update_u32(std::uint32_t v) {
        unsigned char buf[4];
        std::memcpy(buf, &v, 4);
        update(buf, 4);
    }

    void update_u64(std::uint64_t v) {
        unsigned char buf[8];
        std::memcpy(buf, &v, 8);
        update(buf, 8);
    }

    std::uint64_t digest() const { return state_; }

  private:
    std::uint64_t state_ = 0xCBF29CE484222325ULL;
};

inline std::uint64_t fnv1a64(std::string_view bytes) {
    Fnv1a64 h;
    h.update(bytes.data(), bytes.size());
    return h.digest();
}

} // namespace quanvo
