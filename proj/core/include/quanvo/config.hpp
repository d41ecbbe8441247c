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
#include <map>
#include <set>
#include <string>
#include <vector>

namespace quanvo::config {

/// Sectioned key-value run configuration.
///
/// Grammar: `[section]` headers, `key = value` assignments, blank lines,
/// and full-line comments starting with `#` or `;`. Keys must appear
/// under a section and may not repeat within one. Every lookup first
/// consults the environment override `QUANVO_<SECTION>_<KEY>` (upper
/// case), then the file, then the caller's fallback.
///
/// Lookups mark keys consumed; after a command has read everything it
/// understands, unconsumed_keys() lists leftovers so unknown keys can be
/// reported all at once.
class Config {
  public:
    Config() = default;

    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text,
                               const std::string& origin = "<config>");

    bool has(const std::string& section, const std::string& key) const;

    /// Missing key without a fallback is a ConfigError.
    std::string get(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;

    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const;
    std::uint64_t get_u64(const std::string& section, const std::string& key,
                          std::uint64_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key,
                  bool fallback) const;
    /// Comma-separated list; empty value gives the fallback.
    std::vector<std::string> get_list(const std::string& section, const std::string& key,
                                      const std::vector<std::string>& fallback) const;

    /// `section.key` entries present in the file but never looked up.
    std::vector<std::string> unconsumed_keys() const;

  private:
    std::string lookup(const std::string& section, const std::string& key,
                       bool* found) const;

    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
    mutable std::set<std::string> consumed_;
};

} // namespace quanvo::config
