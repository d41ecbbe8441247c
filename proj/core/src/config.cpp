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

#include "quanvo/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "quanvo/errors.hpp"

namespace quanvo::config {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string upper(const std::string& s) {
    std::string out;
    for (char c : s) {
        out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

} // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') {
            continue;
        }
        const std::string context = origin + ":" + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError(context + ": malformed section header '" + line + "'");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigError(context + ": empty section name");
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(context + ": expected 'key = value', got '" + line + "'");
        }
        if (section.empty()) {
            throw ConfigError(context + ": key before any [section]");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(context + ": empty key");
        }
        const std::string full = section + "." + key;
        if (cfg.values_.count(full) != 0) {
            throw ConfigError(context + ": duplicate key '" + full + "'");
        }
        cfg.values_[full] = value;
        cfg.order_.push_back(full);
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

std::string Config::lookup(const std::string& section, const std::string& key,
                           bool* found) const {
    const std::string full = section + "." + key;
    consumed_.insert(full);
    const std::string env_name = "QUANVO_" + upper(section) + "_" + upper(key);
    if (const char* env = std::getenv(env_name.c_str())) {
        *found = true;
        return env;
    }
    const auto it = values_.find(full);
    if (it != values_.end()) {
        *found = true;
        return it->second;
    }
    *found = false;
    return "";
}

bool Config::has(const std::string& section, const std::string& key) const {
    const std::string env_name = "QUANVO_" + upper(section) + "_" + upper(key);
    if (std::getenv(env_name.c_str()) != nullptr) {
        return true;
    }
    return values_.count(section + "." + key) != 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
    bool found = false;
    std::string v = lookup(section, key, &found);
    if (!found) {
        throw ConfigError("config: missing required key " + section + "." + key);
    }
    return v;
}

std::string Config::get(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
    bool found = false;
    std::string v = lookup(section, key, &found);
    return found ? v : fallback;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    bool found = false;
    const std::string v = lookup(section, key, &found);
    if (!found) {
        return fallback;
    }
    try {
        std::size_t pos = 0;
        const double out = std::stod(v, &pos);
        if (pos != v.size()) {
            throw std::invalid_argument(v);
        }
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: " + section + "." + key + " = '" + v +
                          "' is not a number");
    }
}

std::int64_t Config::get_int(const std::string& section, const std::string& key,
                             std::int64_t fallback) const {
    bool found = false;
    const std::string v = lookup(section, key, &found);
    if (!found) {
        return fallback;
    }
    try {
        std::size_t pos = 0;
        const std::int64_t out = std::stoll(v, &pos);
        if (pos != v.size()) {
            throw std::invalid_argument(v);
        }
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: " + section + "." + key + " = '" + v +
                          "' is not an integer");
    }
}

std::uint64_t Config::get_u64(const std::string& section, const std::string& key,
                              std::uint64_t fallback) const {
    bool found = false;
    const std::string v = lookup(section, key, &found);
    if (!found) {
        return fallback;
    }
    try {
        std::size_t pos = 0;
        const std::uint64_t out = std::stoull(v, &pos);
        if (pos != v.size()) {
            throw std::invalid_argument(v);
        }
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: " + section + "." + key + " = '" + v +
                          "' is not an unsigned integer");
    }
}

bool Config::get_bool(const std::string& section, const std::string& key,
                      bool fallback) const {
    bool found = false;
    const std::string v = lookup(section, key, &found);
    if (!found) {
        return fallback;
    }
    const std::string low = upper(v);
    if (low == "TRUE" || low == "1" || low == "YES" || low == "ON") {
        return true;
    }
    if (low == "FALSE" || low == "0" || low == "NO" || low == "OFF") {
        return false;
    }
    throw ConfigError("config: " + section + "." + key + " = '" + v +
                      "' is not a boolean");
}

std::vector<std::string> Config::get_list(const std::string& section,
                                          const std::string& key,
                                          const std::vector<std::string>& fallback) const {
    bool found = false;
    const std::string v = lookup(section, key, &found);
    if (!found) {
        return fallback;
    }
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(v);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<std::string> Config::unconsumed_keys() const {
    std::vector<std::string> out;
    for (const std::string& full : order_) {
        if (consumed_.count(full) == 0) {
            out.push_back(full);
        }
    }
    return out;
}

} // namespace quanvo::config
