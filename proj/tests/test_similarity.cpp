// tests/test_similarity.cpp

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
#include <vector>

#include "mvox/common.hpp"
#include "mvox/corpus.hpp"
#include "mvox/rng.hpp"
#include "mvox/similarity.hpp"
#include "test_util.hpp"

using namespace mvox;

namespace {

FeatureVector fv(std::vector<double> values) {
  FeatureVector v;
  v.values = std::move(values);
  return v;
}

std::vector<FeatureVector> random_features(std::size_t n, std::size_t dim, Rng& rng) {
  std::vector<FeatureVector> out(n);
  for (auto& v : out) {
    v.values.resize(dim);
    for (double& x : v.values) x = rng.gaussian();
  }
  return out;
}

}  // namespace

TEST_CASE("cosine distance anchors and bounds") {
  CHECK(cosine_distance(fv({3.0, 4.0}).values, fv({3.0, 4.0}).values) == 0.0);
  CHECK(cosine_distance(fv({1.0, 0.0}).values, fv({0.0, 1.0}).values) == 1.0);
  CHECK(cosine_distance(fv({1.0, 2.0}).values, fv({-1.0, -2.0}).values) == 2.0);

  SUBCASE("positive scalar multiples are at distance 0") {
    CHECK(cosine_distance(fv({1.0, 2.0, 3.0}).values, fv({2.0, 4.0, 6.0}).values) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("bounded in [0, 2] for random vectors") {
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
      const auto a = random_features(1, 6, rng);
      const auto b = random_features(1, 6, rng);
      const double d = cosine_distance(a[0].values, b[0].values);
      CHECK(d >= 0.0);
      CHECK(d <= 2.0);
    }
  }

  SUBCASE("symmetry and positive scale invariance") {
    Rng rng(22);
    for (int i = 0; i < 100; ++i) {
      auto a = random_features(1, 5, rng)[0];
      auto b = random_features(1, 5, rng)[0];
      const double d1 = cosine_distance(a.values, b.values);
      CHECK(cosine_distance(b.values, a.values) == d1);
      for (double& x : a.values) x *= 3.5;
      for (double& x : b.values) x *= 0.2;
      CHECK(cosine_distance(a.values, b.values) == doctest::Approx(d1).epsilon(1e-12));
    }
  }

  SUBCASE("zero vectors and dimension mismatches are rejected") {
    CHECK_THROWS_AS(cosine_distance(fv({0.0, 0.0}).values, fv({1.0, 0.0}).values),
                    InvalidArgument);
    CHECK_THROWS_AS(cosine_distance(fv({1.0}).values, fv({1.0, 2.0}).values),
                    InvalidArgument);
  }
}

TEST_CASE("class distance matrix against a brute-force oracle") {
  SUBCASE("two orthogonal single-vector classes, duplicated") {
    const std::vector<FeatureVector> feats = {fv({1.0, 0.0}), fv({1.0, 0.0}),
                                              fv({0.0, 1.0}), fv({0.0, 1.0})};
    const std::vector<int> labels = {0, 0, 1, 1};
    const ClassDistanceMatrix m = class_distance_matrix(feats, labels);
    REQUIRE(m.n_classes() == 2);
    CHECK(*m.means[0][0] == 0.0);
    CHECK(*m.means[1][1] == 0.0);
    CHECK(*m.means[0][1] == 1.0);
    CHECK(*m.means[1][0] == 1.0);
    CHECK(m.counts[0][1] == 4);
    CHECK(m.counts[0][0] == 1);
  }

  SUBCASE("3 classes x 4 random vectors equal the double-loop oracle") {
    Rng rng(23);
    std::vector<FeatureVector> feats = random_features(12, 7, rng);
    std::vector<int> labels;
    for (int i = 0; i < 12; ++i) labels.push_back(i / 4);

    const ClassDistanceMatrix m = class_distance_matrix(feats, labels);

    // independent accumulation
    std::map<std::pair<int, int>, std::pair<double, std::size_t>> acc;
    for (std::size_t i = 0; i < feats.size(); ++i) {
      for (std::size_t j = i + 1; j < feats.size(); ++j) {
        int a = labels[i], b = labels[j];
        if (a > b) std::swap(a, b);
        auto& slot = acc[{a, b}];
        slot.first += cosine_distance(feats[i].values, feats[j].values);
        slot.second += 1;
      }
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        const auto& slot = acc[{a, b}];
        const double want = slot.first / static_cast<double>(slot.second);
        CHECK(*m.means[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ==
              doctest::Approx(want).epsilon(1e-12));
        CHECK(m.counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ==
              slot.second);
      }
    }
  }

  SUBCASE("identical vectors give all-zero defined entries") {
    const std::vector<FeatureVector> feats(6, fv({2.0, 1.0}));
    const std::vector<int> labels = {0, 0, 1, 1, 2, 2};
    const ClassDistanceMatrix m = class_distance_matrix(feats, labels);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        REQUIRE(m.means[a][b].has_value());
        CHECK(*m.means[a][b] == doctest::Approx(0.0).epsilon(1e-15));
      }
    }
  }

  SUBCASE("single-member class has an absent diagonal, not zero") {
    const std::vector<FeatureVector> feats = {fv({1.0, 0.0}), fv({0.0, 1.0}),
                                              fv({0.5, 0.5})};
    const std::vector<int> labels = {0, 1, 1};
    const ClassDistanceMatrix m = class_distance_matrix(feats, labels);
    CHECK_FALSE(m.means[0][0].has_value());
    CHECK(m.means[1][1].has_value());
  }
}

TEST_CASE("fixture clusters: intra-class distances sit below inter-class") {
  FixtureSpec spec;
  spec.n_classes = 3;
  spec.n_per_class = 30;
  spec.feature_dim = 12;
  spec.cluster_separation = 10.0;
  spec.seed = 31;
  const Fixture fx = synth_fixture(spec);
  const auto feats = table_to_vectors(fx.features, FeatureScheme::kC22_24);
  const ClassDistanceMatrix m = class_distance_matrix(feats, fx.labels);

  double diag = 0.0, off = 0.0;
  std::size_t n_diag = 0, n_off = 0;
  for (std::size_t a = 0; a < m.n_classes(); ++a) {
    for (std::size_t b = 0; b < m.n_classes(); ++b) {
      if (!m.means[a][b].has_value()) continue;
      if (a == b) {
        diag += *m.means[a][b];
        ++n_diag;
      } else {
        off += *m.means[a][b];
        ++n_off;
      }
    }
  }
  CHECK(diag / static_cast<double>(n_diag) < off / static_cast<double>(n_off));
}

TEST_CASE("distance distribution sampling") {
  SUBCASE("identical vectors: all distances zero, median zero") {
    const std::vector<FeatureVector> feats(5, fv({1.0, 1.0}));
    const std::vector<int> labels(5, 0);
    const DistanceDistribution d = distance_distribution(feats, labels, 100, 1);
    CHECK(d.total_pairs == 10);
    CHECK(d.distances.size() == 10);
    for (double x : d.distances) CHECK(x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(d.median == doctest::Approx(0.0).epsilon(1e-15));
  }

  SUBCASE("two orthogonal clusters: distances take only values 0 and 1") {
    std::vector<FeatureVector> feats;
    std::vector<int> labels;
    for (int i = 0; i < 4; ++i) {
      feats.push_back(fv({1.0, 0.0}));
      labels.push_back(0);
      feats.push_back(fv({0.0, 1.0}));
      labels.push_back(1);
    }
    const DistanceDistribution d = distance_distribution(feats, labels, 1000, 2);
    for (double x : d.distances) {
      CHECK((std::abs(x) < 1e-12 || std::abs(x - 1.0) < 1e-12));
    }
  }

  SUBCASE("high-dimensional isotropic vectors have median near 1") {
    Rng rng(24);
    const auto feats = random_features(80, 256, rng);
    const std::vector<int> labels(80, 0);
    const DistanceDistribution d = distance_distribution(feats, labels, 100000, 3);
    CHECK(std::abs(d.median - 1.0) < 0.05);
    CHECK(d.q1 < d.median);
    CHECK(d.q3 > d.median);
  }

  SUBCASE("subsampling respects max_pairs and the seed") {
    Rng rng(25);
    const auto feats = random_features(60, 4, rng);
    const std::vector<int> labels(60, 0);
    const DistanceDistribution a = distance_distribution(feats, labels, 50, 7);
    const DistanceDistribution b = distance_distribution(feats, labels, 50, 7);
    const DistanceDistribution c = distance_distribution(feats, labels, 50, 8);
    CHECK(a.total_pairs == 60 * 59 / 2);
    CHECK(a.distances.size() == 50);
    CHECK(a.distances == b.distances);
    CHECK(a.distances != c.distances);
  }

  SUBCASE("fewer than two features is rejected") {
    CHECK_THROWS_AS(
        distance_distribution({fv({1.0})}, {0}, 10, 0), InvalidArgument);
  }
}

TEST_CASE("similarity CSV exports") {
  const auto dir = mvox_test::tmp_dir("similarity_csv");
  const std::vector<FeatureVector> feats = {fv({1.0, 0.0}), fv({1.0, 0.1}),
                                            fv({0.0, 1.0}), fv({0.1, 1.0})};
  const std::vector<int> labels = {0, 0, 1, 1};

  const ClassDistanceMatrix m = class_distance_matrix(feats, labels);
  write_distance_matrix_csv(m, dir + "/matrix.csv");
  std::ifstream min(dir + "/matrix.csv");
  std::string header;
  std::getline(min, header);
  CHECK(header == "class,0,1");

  const DistanceDistribution d = distance_distribution(feats, labels, 10, 0);
  write_distance_distribution_csv(d, "c22_24", dir + "/dist.csv");
  std::ifstream din(dir + "/dist.csv");
  std::getline(din, header);
  CHECK(header == "scheme,distance");
  std::string row;
  std::getline(din, row);
  CHECK(row.substr(0, 7) == "c22_24,");
}
