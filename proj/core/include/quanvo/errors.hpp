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

#include <stdexcept>
#include <string>

namespace quanvo {

/// Bad run configuration (file contents, parameter combinations).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Dataset-level problems: missing files, insufficient class members.
class DataError : public std::runtime_error {
  public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A cache file exists but was produced under different parameters.
class StaleCacheError : public std::runtime_error {
  public:
    explicit StaleCacheError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Training produced a non-finite loss or gradient.
class TrainingDiverged : public std::runtime_error {
  public:
    explicit TrainingDiverged(const std::string& msg) : std::runtime_error(msg) {}
};

/// File format violations in the binary cache/checkpoint formats.
class FormatError : public std::runtime_error {
  public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace quanvo
