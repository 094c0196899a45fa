// tests/test_features.cpp

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

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "mvox/common.hpp"
#include "mvox/csv.hpp"
#include "mvox/features.hpp"
#include "test_util.hpp"

using namespace mvox;

namespace {

// Frozen fixture corpus: 20 deterministic signals and the feature values an
// independently compiled reference implementation produced for them (see
// tests/data/README.md for provenance and regeneration steps).
std::map<std::string, std::vector<double>> load_signals() {
  std::ifstream in(mvox_test::data_path("catch22_signals.csv"));
  REQUIRE(in.good());
  std::map<std::string, std::vector<double>> signals;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    REQUIRE(f.size() == 3);
    signals[f[0]].push_back(parse_double(f[2], "signal fixture"));
  }
  return signals;
}

struct ExpectedRow {
  std::size_t feature_idx;
  std::string feature_name;
  double value;
};

std::map<std::string, std::vector<ExpectedRow>> load_expected() {
  std::ifstream in(mvox_test::data_path("catch22_expected.csv"));
  REQUIRE(in.good());
  std::map<std::string, std::vector<ExpectedRow>> expected;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    REQUIRE(f.size() == 4);
    expected[f[0]].push_back(ExpectedRow{
        static_cast<std::size_t>(parse_int(f[1], "expected fixture")), f[2],
        parse_double(f[3], "expected fixture")});
  }
  return expected;
}

// 1e-6 relative, widening to 1e-9 absolute around zero
bool close_to_reference(double got, double want) {
  const double diff = std::fabs(got - want);
  return diff <= 1e-9 + 1e-6 * std::fabs(want);
}

}  // namespace

TEST_CASE("catch22 matches the frozen reference outputs on the fixture corpus") {
  const auto signals = load_signals();
  const auto expected = load_expected();
  REQUIRE(signals.size() == 20);
  REQUIRE(expected.size() == 20);

  const auto& names = catch22_feature_names();
  for (const auto& [signal_name, series] : signals) {
    REQUIRE(expected.count(signal_name) == 1);
    const auto got = catch22(series);
    for (const auto& row : expected.at(signal_name)) {
      REQUIRE(row.feature_idx < kNumCatch22);
      CHECK_MESSAGE(names[row.feature_idx] == row.feature_name,
                    "feature order mismatch at ", row.feature_idx);
      CHECK_MESSAGE(close_to_reference(got[row.feature_idx], row.value), signal_name,
                    " / ", row.feature_name, ": got ", got[row.feature_idx],
                    ", reference ", row.value);
    }
  }
}

TEST_CASE("constant series degenerates to zeros under the NaN policy") {
  const std::vector<double> series(256, 3.25);
  const auto feats = catch22(series);
  for (double v : feats) CHECK(v == 0.0);

  const FeatureVector fv = c22_24(series);
  REQUIRE(fv.dim() == 24);
  CHECK(fv.values[22] == doctest::Approx(3.25));  // mean preserved
  CHECK(fv.values[23] == 0.0);                    // population std of a constant
}

TEST_CASE("c22_24 appends mean and population std") {
  // (-1, 1) repeated: mean 0, population std exactly 1
  std::vector<double> series;
  for (int i = 0; i < 64; ++i) series.push_back(i % 2 == 0 ? -1.0 : 1.0);
  const FeatureVector fv = c22_24(series);
  REQUIRE(fv.dim() == 24);
  CHECK(fv.values[22] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fv.values[23] == doctest::Approx(1.0).epsilon(1e-12));

  // first 22 entries equal catch22 of the same series
  const auto feats = catch22(series);
  for (std::size_t i = 0; i < kNumCatch22; ++i) CHECK(fv.values[i] == feats[i]);
}

TEST_CASE("catch22 output is always finite and deterministic") {
  std::vector<double> series;
  for (int i = 0; i < 500; ++i) {
    series.push_back(std::sin(0.37 * i) + 0.2 * std::cos(1.7 * i));
  }
  const auto a = catch22(series);
  const auto b = catch22(series);
  for (std::size_t i = 0; i < kNumCatch22; ++i) {
    CHECK(std::isfinite(a[i]));
    CHECK(a[i] == b[i]);  // bit-identical
  }
}

TEST_CASE("shift invariance of the mean/std tail") {
  std::vector<double> series;
  for (int i = 0; i < 300; ++i) series.push_back(std::sin(0.1 * i));
  const FeatureVector base = c22_24(series);
  for (double& v : series) v += 5.0;
  const FeatureVector shifted = c22_24(series);
  CHECK(shifted.values[22] == doctest::Approx(base.values[22] + 5.0).epsilon(1e-9));
  CHECK(shifted.values[23] == doctest::Approx(base.values[23]).epsilon(1e-9));
}

TEST_CASE("series shorter than 2 samples is rejected") {
  CHECK_THROWS_AS(catch22(std::vector<double>{1.0}), InvalidArgument);
  CHECK_THROWS_AS(c22_24(std::vector<double>{}), InvalidArgument);
}

TEST_CASE("tiny series still produce finite 24-dim vectors") {
  for (std::size_t n = 2; n <= 12; ++n) {
    std::vector<double> series;
    for (std::size_t i = 0; i < n; ++i) {
      series.push_back(std::sin(0.9 * static_cast<double>(i)) + 0.01 * i);
    }
    const FeatureVector fv = c22_24(series);
    REQUIRE(fv.dim() == 24);
    for (double v : fv.values) CHECK(std::isfinite(v));
  }
}
