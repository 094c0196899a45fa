// tests/test_corpus.cpp

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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <vector>

#include "mvox/common.hpp"
#include "mvox/corpus.hpp"
#include "test_util.hpp"

using namespace mvox;

namespace {

// class tallies of the marmoset corpus this toolkit targets
const std::vector<std::size_t> kCallTypeCounts = {1283, 27976, 36582, 1408, 728, 686,
                                                  1676, 23,    293,   2064, 202};
const std::vector<std::size_t> kCallerCounts = {15521, 8648, 13827, 5838, 5654,
                                                3522,  4389, 2681,  6387, 6454};

Manifest build_full_manifest() {
  Manifest m;
  // fill caller labels from a pool so both marginals come out right
  std::vector<int> caller_pool;
  for (int c = 0; c < 10; ++c) {
    caller_pool.insert(caller_pool.end(), kCallerCounts[static_cast<std::size_t>(c)],
                       c);
  }
  std::size_t next = 0;
  int idx = 0;
  for (int ct = 0; ct < 11; ++ct) {
    for (std::size_t k = 0; k < kCallTypeCounts[static_cast<std::size_t>(ct)]; ++k) {
      SegmentRecord r;
      r.id = "seg" + std::to_string(idx++);
      r.wav_path = "audio.wav";
      r.start_s = 0.0;
      r.end_s = 0.5;
      r.call_type = ct;
      r.caller = caller_pool[next++];
      m.add(std::move(r));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("corpus-scale manifest tallies survive a save/load round trip") {
  const Manifest m = build_full_manifest();
  REQUIRE(m.size() == 72921);

  const auto dir = mvox_test::tmp_dir("manifest_full");
  const auto path = dir + "/manifest.csv";
  save_manifest(m, path);
  const Manifest loaded = load_manifest(path);

  CHECK(loaded.size() == 72921);
  CHECK(loaded.tally_call_type(2) == 36582);  // the dominant twitter class
  CHECK(loaded.tally_call_type(7) == 23);     // the rarest class
  CHECK(loaded.tally_call_type(0) == 1283);
  CHECK(loaded.tally_caller(0) == 15521);
  CHECK(loaded.tally_caller(7) == 2681);

  std::size_t total = 0;
  for (int ct = 0; ct < 11; ++ct) total += loaded.tally_call_type(ct);
  CHECK(total == 72921);
}

TEST_CASE("manifest parsing errors carry line context") {
  const auto dir = mvox_test::tmp_dir("manifest_errors");

  SUBCASE("header-only file loads as empty") {
    const auto path = dir + "/empty.csv";
    std::ofstream(path) << "id,wav_path,start_s,end_s,call_type,caller\n";
    const Manifest m = load_manifest(path);
    CHECK(m.size() == 0);
  }

  SUBCASE("call_type beyond the vocabulary is rejected") {
    const auto path = dir + "/range.csv";
    std::ofstream(path) << "id,wav_path,start_s,end_s,call_type,caller\n"
                        << "a,x.wav,0,1,11,0\n";
    CHECK_THROWS_WITH_AS(load_manifest(path),
                         doctest::Contains("call_type 11 out of range"), ParseError);
  }

  SUBCASE("duplicate ids are rejected") {
    const auto path = dir + "/dup.csv";
    std::ofstream(path) << "id,wav_path,start_s,end_s,call_type,caller\n"
                        << "a,x.wav,0,1,0,0\n"
                        << "a,y.wav,0,1,1,1\n";
    CHECK_THROWS_WITH_AS(load_manifest(path), doctest::Contains(":3"), ParseError);
  }

  SUBCASE("malformed numeric field names its line") {
    const auto path = dir + "/badnum.csv";
    std::ofstream(path) << "id,wav_path,start_s,end_s,call_type,caller\n"
                        << "a,x.wav,zero,1,0,0\n";
    CHECK_THROWS_WITH_AS(load_manifest(path), doctest::Contains(":2"), ParseError);
  }

  SUBCASE("bad header is rejected") {
    const auto path = dir + "/hdr.csv";
    std::ofstream(path) << "id,path\n";
    CHECK_THROWS_AS(load_manifest(path), ParseError);
  }

  SUBCASE("end before start is rejected") {
    const auto path = dir + "/times.csv";
    std::ofstream(path) << "id,wav_path,start_s,end_s,call_type,caller\n"
                        << "a,x.wav,1.5,1.0,0,0\n";
    CHECK_THROWS_AS(load_manifest(path), ParseError);
  }
}

namespace {

Manifest tiny_manifest(std::size_t n) {
  Manifest m(generic_vocabulary(4));
  for (std::size_t i = 0; i < n; ++i) {
    SegmentRecord r;
    r.id = "r" + std::to_string(i);
    r.wav_path = "x.wav";
    r.start_s = 0.0;
    r.end_s = 1.0;
    r.call_type = static_cast<int>(i % 4);
    r.caller = static_cast<int>(i % 4);
    m.add(std::move(r));
  }
  return m;
}

// floor/floor/remainder rule, written out independently (the small nudge
// keeps e.g. 0.7*10 and 0.7*90 at their real-arithmetic floors)
std::array<std::size_t, 3> expected_sizes(std::size_t n, SplitRatios r) {
  const auto tr = static_cast<std::size_t>(
      std::floor(r.train * static_cast<double>(n) + 1e-9));
  const auto va = static_cast<std::size_t>(
      std::floor(r.val * static_cast<double>(n) + 1e-9));
  return {tr, va, n - tr - va};
}

}  // namespace

TEST_CASE("split sizes follow the floor/floor/remainder rule") {
  SUBCASE("corpus-scale N") {
    const auto want = expected_sizes(72921, SplitRatios{});
    CHECK(want[0] == 51044);
    CHECK(want[1] == 14584);
    CHECK(want[2] == 7293);

    const Manifest m = build_full_manifest();
    const SplitAssignment s = split(m, SplitRatios{}, 42);
    CHECK(s.train.size() == 51044);
    CHECK(s.val.size() == 14584);
    CHECK(s.test.size() == 7293);
  }

  SUBCASE("N=10 divides exactly") {
    const Manifest m = tiny_manifest(10);
    const SplitAssignment s = split(m, SplitRatios{}, 1);
    CHECK(s.train.size() == 7);
    CHECK(s.val.size() == 2);
    CHECK(s.test.size() == 1);
  }
}

TEST_CASE("split sets are disjoint, cover all indices and are seed-deterministic") {
  const Manifest m = tiny_manifest(53);
  for (std::uint64_t seed : {0ULL, 7ULL, 99ULL}) {
    const SplitAssignment a = split(m, SplitRatios{}, seed);
    const SplitAssignment b = split(m, SplitRatios{}, seed);
    CHECK(a.train == b.train);
    CHECK(a.val == b.val);
    CHECK(a.test == b.test);

    std::set<std::size_t> all;
    for (auto i : a.train) all.insert(i);
    for (auto i : a.val) all.insert(i);
    for (auto i : a.test) all.insert(i);
    CHECK(all.size() == 53);  // disjoint union covers everything
    CHECK(a.train.size() + a.val.size() + a.test.size() == 53);
  }
}

TEST_CASE("different seeds give different assignments for N >= 20") {
  const Manifest m = tiny_manifest(20);
  const SplitAssignment base = split(m, SplitRatios{}, 0);
  bool any_differ = false;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const SplitAssignment s = split(m, SplitRatios{}, seed);
    if (s.train != base.train) {
      any_differ = true;
      break;
    }
  }
  CHECK(any_differ);
}

TEST_CASE("split input validation") {
  const Manifest m = tiny_manifest(10);
  CHECK_THROWS_AS(split(m, SplitRatios{0.5, 0.2, 0.1}, 0), InvalidArgument);
  const Manifest empty(generic_vocabulary(2));
  CHECK_THROWS_AS(split(empty, SplitRatios{}, 0), InvalidArgument);
}

TEST_CASE("stratified split keeps per-class proportions") {
  Manifest m(generic_vocabulary(2));
  for (int i = 0; i < 100; ++i) {
    SegmentRecord r;
    r.id = "r" + std::to_string(i);
    r.wav_path = "x.wav";
    r.start_s = 0;
    r.end_s = 1;
    r.call_type = i < 90 ? 0 : 1;  // 90/10 imbalance
    r.caller = r.call_type;
    m.add(std::move(r));
  }
  const SplitAssignment s = split(m, SplitRatios{}, 5, /*stratified=*/true);
  auto count_class = [&](const std::vector<std::size_t>& idx, int cls) {
    return std::count_if(idx.begin(), idx.end(), [&](std::size_t i) {
      return m.records()[i].call_type == cls;
    });
  };
  CHECK(count_class(s.train, 0) == 63);  // floor(0.7*90)
  CHECK(count_class(s.train, 1) == 7);   // floor(0.7*10)
  CHECK(count_class(s.test, 1) == 1);
}

namespace {

// 1-nearest-centroid oracle: centroids from one fixture, accuracy on another
double centroid_accuracy(const Fixture& train_fx, const Fixture& test_fx) {
  const int n_classes = train_fx.manifest.vocab().n_call_types();
  const std::size_t dim = train_fx.features.frame_dim;
  std::vector<std::vector<double>> centroids(
      static_cast<std::size_t>(n_classes), std::vector<double>(dim, 0.0));
  std::vector<std::size_t> counts(static_cast<std::size_t>(n_classes), 0);
  for (std::size_t r = 0; r < train_fx.features.n_frames; ++r) {
    const auto cls = static_cast<std::size_t>(train_fx.labels[r]);
    for (std::size_t d = 0; d < dim; ++d) centroids[cls][d] += train_fx.features.at(r, d);
    counts[cls]++;
  }
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    for (double& v : centroids[c]) v /= static_cast<double>(counts[c]);
  }

  std::size_t correct = 0;
  for (std::size_t r = 0; r < test_fx.features.n_frames; ++r) {
    double best = 1e300;
    int arg = -1;
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      double d2 = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = test_fx.features.at(r, d) - centroids[c][d];
        d2 += diff * diff;
      }
      if (d2 < best) {
        best = d2;
        arg = static_cast<int>(c);
      }
    }
    if (arg == test_fx.labels[r]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test_fx.features.n_frames);
}

}  // namespace

TEST_CASE("synthetic fixtures are deterministic and separable as specified") {
  FixtureSpec spec;
  spec.n_classes = 3;
  spec.n_per_class = 50;
  spec.feature_dim = 8;
  spec.cluster_separation = 10.0;
  spec.seed = 123;

  SUBCASE("equal seeds give bit-identical tables") {
    const Fixture a = synth_fixture(spec);
    const Fixture b = synth_fixture(spec);
    CHECK(a.features.data == b.features.data);
    CHECK(a.labels == b.labels);
  }

  SUBCASE("separation 10 is centroid-separable on a held-out draw") {
    const Fixture train_fx = synth_fixture(spec);
    FixtureSpec held = spec;
    held.seed = 456;
    const Fixture test_fx = synth_fixture(held);
    CHECK(centroid_accuracy(train_fx, test_fx) == 1.0);
  }

  SUBCASE("separation 0 is chance level") {
    FixtureSpec flat = spec;
    flat.cluster_separation = 0.0;
    flat.n_per_class = 200;
    const Fixture train_fx = synth_fixture(flat);
    FixtureSpec held = flat;
    held.seed = 9;
    const Fixture test_fx = synth_fixture(held);
    const double acc = centroid_accuracy(train_fx, test_fx);
    CHECK(acc > 0.15);
    CHECK(acc < 0.55);  // ~1/3 expected
  }

  SUBCASE("n_per_class=1 with 2 classes gives 2 records") {
    FixtureSpec tiny;
    tiny.n_classes = 2;
    tiny.n_per_class = 1;
    tiny.feature_dim = 4;
    const Fixture fx = synth_fixture(tiny);
    CHECK(fx.manifest.size() == 2);
    CHECK(fx.features.n_frames == 2);
  }

  SUBCASE("invalid specs are rejected") {
    FixtureSpec bad = spec;
    bad.n_classes = 1;
    CHECK_THROWS_AS(synth_fixture(bad), InvalidArgument);
    bad = spec;
    bad.cluster_separation = -1.0;
    CHECK_THROWS_AS(synth_fixture(bad), InvalidArgument);
  }
}

TEST_CASE("audio fixture writes playable WAV segments with class tones") {
  const auto dir = mvox_test::tmp_dir("audio_fixture");
  AudioFixtureSpec spec;
  spec.n_classes = 2;
  spec.n_per_class = 3;
  spec.sample_rate = 16000.0;
  spec.duration_s = 0.1;
  spec.band_lo_hz = 3000.0;
  spec.band_step_hz = 1000.0;
  spec.seed = 77;

  const Manifest m = synth_audio_fixture(spec, dir);
  CHECK(m.size() == 6);
  for (const auto& r : m.records()) {
    CHECK(std::ifstream(r.wav_path).good());
  }
}

TEST_CASE("vocabularies bound label validation") {
  const LabelVocabulary v = marmoset_vocabulary();
  CHECK(v.n_call_types() == 11);
  CHECK(v.n_callers == 10);
  CHECK(v.call_type_names[1] == "Phee");
  CHECK(v.call_type_names[2] == "Twitter");

  Manifest m;  // marmoset vocabulary
  SegmentRecord r;
  r.id = "a";
  r.wav_path = "x.wav";
  r.start_s = 0;
  r.end_s = 1;
  r.call_type = 0;
  r.caller = 10;  // beyond the 10-caller vocabulary
  CHECK_THROWS_AS(m.add(std::move(r)), InvalidArgument);
}
