// core/src/config.cpp

// Copyright 2026 mvox authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mvox/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mvox/common.hpp"
#include "mvox/csv.hpp"

namespace mvox {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text,
                                            const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    if (cfg.values_.count(key)) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                       key + "'");
    }
    cfg.set(key, value);
  }
  return cfg;
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string KeyValueConfig::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw InvalidArgument(origin_ + ": missing required config key '" + key + "'");
  }
  return it->second;
}

std::string KeyValueConfig::get_string_or(const std::string& key,
                                          const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

long long KeyValueConfig::get_int(const std::string& key) const {
  return parse_int(get_string(key), origin_ + " key '" + key + "'");
}

long long KeyValueConfig::get_int_or(const std::string& key, long long fallback) const {
  if (!has(key)) return fallback;
  return get_int(key);
}

double KeyValueConfig::get_double(const std::string& key) const {
  return parse_double(get_string(key), origin_ + " key '" + key + "'");
}

double KeyValueConfig::get_double_or(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  return get_double(key);
}

std::uint64_t KeyValueConfig::get_u64_or(const std::string& key,
                                         std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get_string(key);
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ParseError(origin_ + " key '" + key + "': not an unsigned integer: " + s);
  }
}

bool KeyValueConfig::get_bool_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get_string(key);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ParseError(origin_ + " key '" + key + "': not a boolean: " + s);
}

std::vector<double> KeyValueConfig::get_double_list_or(
    const std::string& key, const std::vector<double>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<double> out;
  for (const auto& f : split_csv_line(get_string(key))) {
    out.push_back(parse_double(trim(f), origin_ + " key '" + key + "'"));
  }
  return out;
}

std::vector<long long> KeyValueConfig::get_int_list_or(
    const std::string& key, const std::vector<long long>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<long long> out;
  for (const auto& f : split_csv_line(get_string(key))) {
    out.push_back(parse_int(trim(f), origin_ + " key '" + key + "'"));
  }
  return out;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  if (!values_.count(key)) order_.push_back(key);
  values_[key] = value;
}

void KeyValueConfig::require_known_keys(const std::vector<std::string>& allowed) const {
  for (const auto& key : order_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidArgument(origin_ + ": unknown config key '" + key + "'");
    }
  }
}

}  // namespace mvox
