// core/src/similarity.cpp

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

#include "mvox/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <unordered_set>

#include "mvox/common.hpp"
#include "mvox/csv.hpp"
#include "mvox/rng.hpp"

namespace mvox {

double cosine_distance(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), "cosine_distance: dimension mismatch");
  require(!x.empty(), "cosine_distance: empty vectors");
  double dot = 0.0, nx = 0.0, ny = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += x[i] * y[i];
    nx += x[i] * x[i];
    ny += y[i] * y[i];
  }
  require(nx > 0.0 && ny > 0.0, "cosine_distance: zero-norm vector");
  // sqrt of the product (not the product of sqrts) so the aligned /
  // orthogonal / opposite anchor cases come out exactly 0, 1 and 2
  return 1.0 - dot / std::sqrt(nx * ny);
}

ClassDistanceMatrix class_distance_matrix(const std::vector<FeatureVector>& features,
                                          const std::vector<int>& labels) {
  require(features.size() == labels.size(),
          "class_distance_matrix: features and labels differ in length");
  require(!features.empty(), "class_distance_matrix: empty input");

  // class index in sorted-id order
  std::map<int, std::size_t> class_index;
  for (int l : labels) class_index.emplace(l, 0);
  ClassDistanceMatrix out;
  for (auto& [id, idx] : class_index) {
    idx = out.classes.size();
    out.classes.push_back(id);
  }

  const std::size_t c = out.classes.size();
  std::vector<std::vector<double>> sums(c, std::vector<double>(c, 0.0));
  out.counts.assign(c, std::vector<std::uint64_t>(c, 0));

  // plain i<j accumulation; unit tests check exact agreement with an
  // independently written double loop, so the order here is part of the
  // contract
  const std::size_t n = features.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = cosine_distance(features[i].values, features[j].values);
      std::size_t a = class_index[labels[i]];
      std::size_t b = class_index[labels[j]];
      if (a > b) std::swap(a, b);
      sums[a][b] += d;
      out.counts[a][b] += 1;
    }
  }

  out.means.assign(c, std::vector<std::optional<double>>(c));
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = a; b < c; ++b) {
      if (out.counts[a][b] > 0) {
        out.means[a][b] = sums[a][b] / static_cast<double>(out.counts[a][b]);
        out.means[b][a] = out.means[a][b];
      }
      out.counts[b][a] = out.counts[a][b];
    }
  }
  return out;
}

namespace {

// unordered pair index -> (i, j), lexicographic over i<j
std::pair<std::size_t, std::size_t> pair_from_index(std::uint64_t k, std::size_t n) {
  // row i holds (n-1-i) pairs; walk rows (the sample counts per call are
  // small enough that a closed form is not worth the edge cases)
  std::size_t i = 0;
  std::uint64_t row = n - 1;
  while (k >= row) {
    k -= row;
    --row;
    ++i;
  }
  return {i, i + 1 + static_cast<std::size_t>(k)};
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

DistanceDistribution distance_distribution(const std::vector<FeatureVector>& features,
                                           const std::vector<int>& labels,
                                           std::uint64_t max_pairs, std::uint64_t seed) {
  require(features.size() == labels.size(),
          "distance_distribution: features and labels differ in length");
  require(features.size() >= 2, "distance_distribution: need at least 2 features");
  require(max_pairs >= 1, "distance_distribution: max_pairs must be positive");

  const std::size_t n = features.size();
  const std::uint64_t total =
      static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;

  std::vector<std::uint64_t> picks;
  if (total <= max_pairs) {
    picks.resize(total);
    for (std::uint64_t k = 0; k < total; ++k) picks[k] = k;
  } else {
    Rng rng(seed);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(max_pairs) * 2);
    while (seen.size() < max_pairs) seen.insert(rng.below(total));
    picks.assign(seen.begin(), seen.end());
    std::sort(picks.begin(), picks.end());
  }

  DistanceDistribution out;
  out.total_pairs = total;
  out.distances.reserve(picks.size());
  for (std::uint64_t k : picks) {
    const auto [i, j] = pair_from_index(k, n);
    out.distances.push_back(cosine_distance(features[i].values, features[j].values));
  }

  std::vector<double> sorted = out.distances;
  std::sort(sorted.begin(), sorted.end());
  out.q1 = quantile_sorted(sorted, 0.25);
  out.median = quantile_sorted(sorted, 0.5);
  out.q3 = quantile_sorted(sorted, 0.75);
  return out;
}

void write_distance_matrix_csv(const ClassDistanceMatrix& matrix,
                               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "class";
  for (int c : matrix.classes) out << ',' << c;
  out << '\n';
  for (std::size_t a = 0; a < matrix.n_classes(); ++a) {
    out << matrix.classes[a];
    for (std::size_t b = 0; b < matrix.n_classes(); ++b) {
      out << ',';
      if (matrix.means[a][b].has_value()) out << format_double(*matrix.means[a][b]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_distance_distribution_csv(const DistanceDistribution& dist,
                                     const std::string& scheme_name,
                                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "scheme,distance\n";
  for (double d : dist.distances) {
    out << scheme_name << ',' << format_double(d) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace mvox
