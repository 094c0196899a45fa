// core/include/mvox/similarity.hpp

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

#ifndef MVOX_SIMILARITY_HPP
#define MVOX_SIMILARITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvox/feature_vector.hpp"

namespace mvox {

// 1 - cos(x, y), bounded in [0, 2]: 0 for aligned, 1 for orthogonal,
// 2 for opposite vectors.
double cosine_distance(std::span<const double> x, std::span<const double> y);

// Mean pairwise cosine distance per class pair. Diagonal entries average
// over unordered distinct pairs within a class and are absent (nullopt)
// for single-member classes; off-diagonal entries average over all cross
// pairs.
struct ClassDistanceMatrix {
  std::vector<int> classes;
  std::vector<std::vector<std::optional<double>>> means;
  std::vector<std::vector<std::uint64_t>> counts;

  std::size_t n_classes() const { return classes.size(); }
};

ClassDistanceMatrix class_distance_matrix(const std::vector<FeatureVector>& features,
                                          const std::vector<int>& labels);

struct DistanceDistribution {
  std::vector<double> distances;  // sampled, in draw order
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  std::uint64_t total_pairs = 0;  // population size before sampling
};

// Uniform seeded subsample of unordered pairs, capped at max_pairs.
DistanceDistribution distance_distribution(const std::vector<FeatureVector>& features,
                                           const std::vector<int>& labels,
                                           std::uint64_t max_pairs, std::uint64_t seed);

// CSV with class IDs as header row and leading column; absent diagonal
// entries are written as empty fields.
void write_distance_matrix_csv(const ClassDistanceMatrix& matrix,
                               const std::string& path);

// CSV rows "scheme,distance".
void write_distance_distribution_csv(const DistanceDistribution& dist,
                                     const std::string& scheme_name,
                                     const std::string& path);

}  // namespace mvox

#endif  // MVOX_SIMILARITY_HPP
