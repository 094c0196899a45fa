// benchmarks/bench_main.cpp

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

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "mvox/dsp.hpp"
#include "mvox/features.hpp"
#include "mvox/learner.hpp"
#include "mvox/rng.hpp"
#include "mvox/similarity.hpp"

namespace {

std::vector<double> bench_signal(std::size_t n) {
  std::vector<double> x(n);
  mvox::Rng rng(1);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::sin(0.02 * static_cast<double>(i)) + 0.3 * rng.gaussian();
  }
  return x;
}

void BM_Catch22(benchmark::State& state) {
  const auto x = bench_signal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mvox::c22_24(x));
  }
}
BENCHMARK(BM_Catch22)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_LogMel(benchmark::State& state) {
  mvox::AudioBuffer a;
  a.sample_rate = 16000.0;
  a.samples = bench_signal(16000);
  const mvox::LogMelConfig cfg = mvox::byol_a_preset();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mvox::log_mel(mvox::stft(a, cfg), cfg));
  }
}
BENCHMARK(BM_LogMel);

void BM_Resample(benchmark::State& state) {
  mvox::AudioBuffer a;
  a.sample_rate = 44100.0;
  a.samples = bench_signal(44100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mvox::resample(a, 16000.0));
  }
}
BENCHMARK(BM_Resample);

void BM_LossAndGrad(benchmark::State& state) {
  const auto dim = static_cast<int>(state.range(0));
  const mvox::MlpModel model = mvox::init_mlp(dim, 11, 3);
  mvox::Matrix batch(128, static_cast<std::size_t>(dim));
  mvox::Rng rng(2);
  for (double& v : batch.data()) v = rng.gaussian();
  std::vector<int> labels(128);
  for (auto& l : labels) l = static_cast<int>(rng.below(11));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mvox::loss_and_grad(model, batch, labels));
  }
}
BENCHMARK(BM_LossAndGrad)->Arg(24)->Arg(1536);

void BM_ClassDistanceMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  mvox::Rng rng(3);
  std::vector<mvox::FeatureVector> feats(n);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    feats[i].values.resize(24);
    for (double& v : feats[i].values) v = rng.gaussian();
    labels[i] = static_cast<int>(i % 5);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(mvox::class_distance_matrix(feats, labels));
  }
}
BENCHMARK(BM_ClassDistanceMatrix)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
