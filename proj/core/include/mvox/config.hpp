// core/include/mvox/config.hpp

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

#ifndef MVOX_CONFIG_HPP
#define MVOX_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mvox {

// Line-oriented "key = value" document with '#' comments. Keys are unique;
// values are free text up to end of line.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_string(const std::string& text,
                                     const std::string& origin = "<string>");

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string_or(const std::string& key, const std::string& fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int_or(const std::string& key, long long fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;

  // comma-separated lists
  std::vector<double> get_double_list_or(const std::string& key,
                                         const std::vector<double>& fallback) const;
  std::vector<long long> get_int_list_or(const std::string& key,
                                         const std::vector<long long>& fallback) const;

  void set(const std::string& key, const std::string& value);

  const std::vector<std::string>& keys() const { return order_; }

  // Errors on any key outside `allowed`; catches config typos before a
  // long run starts.
  void require_known_keys(const std::vector<std::string>& allowed) const;

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string> order_;
  std::string origin_;
};

}  // namespace mvox

#endif  // MVOX_CONFIG_HPP
