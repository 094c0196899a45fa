// tests/acceptance.cpp

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

// Acceptance suite: every release-gating behavior, one pass/fail line per
// criterion. Run via ctest or directly; exits nonzero if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mvox/common.hpp"
#include "mvox/corpus.hpp"
#include "mvox/csv.hpp"
#include "mvox/embeddings.hpp"
#include "mvox/features.hpp"
#include "mvox/harness.hpp"
#include "mvox/learner.hpp"
#include "mvox/rng.hpp"
#include "mvox/similarity.hpp"

using namespace mvox;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SplitDatasets fixture_datasets(const FixtureSpec& spec, std::uint64_t split_seed) {
  const Fixture fx = synth_fixture(spec);
  const SplitAssignment s = split(fx.manifest, SplitRatios{}, split_seed);
  return make_datasets(fx.features, fx.labels, s);
}

// ---------------------------------------------------------------------------

void criterion_1_separable_fixture() {
  const auto t0 = std::chrono::steady_clock::now();

  FixtureSpec spec;
  spec.n_classes = 3;
  spec.n_per_class = 300;
  spec.feature_dim = 24;
  spec.cluster_separation = 10.0;
  spec.seed = 11;
  const SplitDatasets ds = fixture_datasets(spec, 12);

  const GridSpec grid;  // full 5x2 spec grid
  const GridSearchOutcome out =
      grid_search(ds.train, ds.val, ds.test, 3, grid, 30, 13, /*threads=*/1);

  const auto t1 = std::chrono::steady_clock::now();
  const double seconds = std::chrono::duration<double>(t1 - t0).count();

  const bool pass = out.test_report.uar >= 0.95 && seconds < 60.0;
  char detail[128];
  std::snprintf(detail, sizeof detail, "test UAR %.4f, %.1f s single-threaded",
                out.test_report.uar, seconds);
  report(1, "separable-fixture grid-searched classification", pass, detail);
}

void criterion_2_null_signal() {
  double uar_sum = 0.0;
  const int n_seeds = 5;
  for (int s = 0; s < n_seeds; ++s) {
    FixtureSpec spec;
    spec.n_classes = 5;
    spec.n_per_class = 60;
    spec.feature_dim = 12;
    spec.cluster_separation = 0.0;
    spec.seed = 100 + static_cast<std::uint64_t>(s);
    Fixture fx = synth_fixture(spec);
    for (float& v : fx.features.data) v = 0.75f;  // constant features

    const SplitAssignment sp = split(fx.manifest, SplitRatios{}, spec.seed + 1);
    const SplitDatasets ds = make_datasets(fx.features, fx.labels, sp);

    TrainConfig cfg;
    cfg.batch_size = 64;
    cfg.lr = 1e-3;
    cfg.epochs = 30;
    cfg.seed = spec.seed + 2;
    const TrainResult r = train(ds.train, ds.val, 5, cfg);
    uar_sum += evaluate(r.best_model, ds.test).uar;
  }
  const double mean_uar = uar_sum / n_seeds;
  const bool pass = mean_uar >= 0.05 && mean_uar <= 0.35;
  char detail[96];
  std::snprintf(detail, sizeof detail, "mean test UAR %.4f over %d seeds (chance 0.20)",
                mean_uar, n_seeds);
  report(2, "null-signal control at chance level", pass, detail);
}

void criterion_3_random_prediction_uar() {
  Rng rng(300);
  const int n = 10000, classes = 11;
  std::vector<int> truth(n), pred(n);
  for (int i = 0; i < n; ++i) {
    truth[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(classes));
    pred[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(classes));
  }
  const EvalReport r = eval_predictions(truth, pred, classes);
  const bool pass = std::fabs(r.uar - 0.0909) <= 0.015;
  char detail[96];
  std::snprintf(detail, sizeof detail, "UAR %.4f vs 0.0909 +/- 0.015", r.uar);
  report(3, "uniform-random predictions over 11 classes", pass, detail);
}

void criterion_4_catch22_oracle() {
  const fs::path data_dir(MVOX_TEST_DATA_DIR);
  std::map<std::string, std::vector<double>> signals;
  {
    std::ifstream in(data_dir / "catch22_signals.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = split_csv_line(line);
      signals[f[0]].push_back(parse_double(f[2], "signals fixture"));
    }
  }
  std::size_t checked = 0, failed = 0;
  double worst = 0.0;
  {
    std::ifstream in(data_dir / "catch22_expected.csv");
    std::string line;
    std::getline(in, line);
    std::map<std::string, std::array<double, kNumCatch22>> computed;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = split_csv_line(line);
      const std::string& name = f[0];
      const auto idx = static_cast<std::size_t>(parse_int(f[1], "expected fixture"));
      const double want = parse_double(f[3], "expected fixture");
      if (!computed.count(name)) computed[name] = catch22(signals.at(name));
      const double got = computed[name][idx];
      const double err = std::fabs(got - want);
      const double allowed = 1e-9 + 1e-6 * std::fabs(want);
      worst = std::max(worst, allowed > 0 ? err / allowed : 0.0);
      ++checked;
      if (err > allowed) ++failed;
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof detail,
                "%zu values vs reference run, %zu out of tolerance", checked, failed);
  report(4, "catch22 equivalence with the reference implementation",
         checked == 440 && failed == 0, detail);
}

void criterion_5_gradient_check() {
  Rng rng(500);
  double worst = 0.0;
  for (int draw = 0; draw < 10; ++draw) {
    MlpModel model = init_mlp(10, 4, 700 + static_cast<std::uint64_t>(draw));
    Matrix batch(6, 10);
    for (double& v : batch.data()) v = rng.gaussian();
    std::vector<int> labels(6);
    for (auto& l : labels) l = static_cast<int>(rng.below(4));

    const LossGrad lg = loss_and_grad(model, batch, labels);
    const double h = 1e-4;

    std::vector<std::vector<double>*> arrays;
    std::vector<const std::vector<double>*> grads;
    auto collect = [](auto& p, auto& store) {
      for (std::size_t b = 0; b < 3; ++b) {
        store.push_back(&p.linear[b].w.data());
        store.push_back(&p.linear[b].b);
        store.push_back(&p.norm[b].gain);
        store.push_back(&p.norm[b].bias);
      }
      store.push_back(&p.head.w.data());
      store.push_back(&p.head.b);
    };
    collect(model.params, arrays);
    collect(lg.grads, grads);

    auto fd_at = [&](std::vector<double>& arr, std::size_t idx, double step) {
      const double saved = arr[idx];
      arr[idx] = saved + step;
      const double lp = loss_and_grad(model, batch, labels).loss;
      arr[idx] = saved - step;
      const double lm = loss_and_grad(model, batch, labels).loss;
      arr[idx] = saved;
      return (lp - lm) / (2.0 * step);
    };

    for (std::size_t k = 0; k < arrays.size(); ++k) {
      std::vector<double>& arr = *arrays[k];
      const std::vector<double>& g = *grads[k];
      const std::size_t samples = std::min<std::size_t>(arr.size(), 8);
      for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t idx =
            s == 0 ? 0 : (s == 1 ? arr.size() - 1 : rng.below(arr.size()));
        double fd = fd_at(arr, idx, h);
        double denom = std::max({std::fabs(fd), std::fabs(g[idx]), 1e-8});
        double err = std::fabs(fd - g[idx]) / denom;
        if (err > 1e-4) {
          // a ReLU flip inside [x-h, x+h] invalidates the estimate; a valid
          // kink crossing converges to the analytic value as h shrinks,
          // while a genuine gradient bug keeps its disagreement
          const double fd_fine = fd_at(arr, idx, h / 10.0);
          const bool converged_to_g =
              std::fabs(fd_fine - g[idx]) <=
              1e-4 * std::max({std::fabs(fd_fine), std::fabs(g[idx]), 1e-8});
          const bool was_kink = std::fabs(fd_fine - fd) >
                                1e-3 * std::max(std::fabs(fd), std::fabs(fd_fine));
          if (converged_to_g && was_kink) {
            denom = std::max({std::fabs(fd_fine), std::fabs(g[idx]), 1e-8});
            err = std::fabs(fd_fine - g[idx]) / denom;
          }
        }
        worst = std::max(worst, err);
      }
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "max relative error %.2e over 10 draws", worst);
  report(5, "analytic gradients vs central differences", worst <= 1e-4, detail);
}

void criterion_6_cosine_anchors_and_oracle() {
  const std::vector<double> a = {1.0, 2.0};
  const std::vector<double> b = {-1.0, -2.0};
  const std::vector<double> e1 = {1.0, 0.0};
  const std::vector<double> e2 = {0.0, 1.0};
  const bool anchors = cosine_distance(a, a) == 0.0 && cosine_distance(e1, e2) == 1.0 &&
                       cosine_distance(a, b) == 2.0;

  // N=200 matrix against an independently accumulated double loop
  Rng rng(600);
  std::vector<FeatureVector> feats(200);
  std::vector<int> labels(200);
  for (std::size_t i = 0; i < 200; ++i) {
    feats[i].values.resize(6);
    for (double& v : feats[i].values) v = rng.gaussian();
    labels[i] = static_cast<int>(i % 3);
  }
  const ClassDistanceMatrix m = class_distance_matrix(feats, labels);

  double sums[3][3] = {};
  std::uint64_t counts[3][3] = {};
  for (std::size_t i = 0; i < 200; ++i) {
    for (std::size_t j = i + 1; j < 200; ++j) {
      int x = labels[i], y = labels[j];
      if (x > y) std::swap(x, y);
      sums[x][y] += cosine_distance(feats[i].values, feats[j].values);
      counts[x][y] += 1;
    }
  }
  double worst = 0.0;
  for (int x = 0; x < 3; ++x) {
    for (int y = x; y < 3; ++y) {
      const double want = sums[x][y] / static_cast<double>(counts[x][y]);
      worst = std::max(worst, std::fabs(*m.means[static_cast<std::size_t>(x)]
                                                [static_cast<std::size_t>(y)] -
                                        want));
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "anchors %s, max |matrix - oracle| = %.2e",
                anchors ? "exact" : "WRONG", worst);
  report(6, "cosine anchors and brute-force matrix agreement",
         anchors && worst <= 1e-12, detail);
}

void criterion_7_clustered_similarity() {
  int wins = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    FixtureSpec spec;
    spec.n_classes = 4;
    spec.n_per_class = 30;
    spec.feature_dim = 16;
    spec.cluster_separation = 10.0;
    spec.seed = 900 + static_cast<std::uint64_t>(t);
    const Fixture fx = synth_fixture(spec);
    const auto feats = table_to_vectors(fx.features, FeatureScheme::kC22_24);
    const ClassDistanceMatrix m = class_distance_matrix(feats, fx.labels);

    double diag = 0.0, off = 0.0;
    std::size_t nd = 0, no = 0;
    for (std::size_t x = 0; x < m.n_classes(); ++x) {
      for (std::size_t y = 0; y < m.n_classes(); ++y) {
        if (!m.means[x][y].has_value()) continue;
        if (x == y) {
          diag += *m.means[x][y];
          ++nd;
        } else {
          off += *m.means[x][y];
          ++no;
        }
      }
    }
    if (diag / static_cast<double>(nd) < off / static_cast<double>(no)) ++wins;
  }
  char detail[64];
  std::snprintf(detail, sizeof detail, "%d/%d seeded trials", wins, trials);
  report(7, "intra-class distances below inter-class on clustered fixtures",
         wins == trials, detail);
}

void criterion_8_aggregation_contract() {
  Rng rng(800);
  FrameMatrix frames;
  frames.n_frames = 9;
  frames.frame_dim = 768;
  frames.data.resize(frames.n_frames * frames.frame_dim);
  for (float& v : frames.data) v = static_cast<float>(rng.uniform(-1.0, 1.0));
  const bool dim_ok = aggregate(frames).dim() == 1536;

  int invariant = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    FrameMatrix m;
    m.n_frames = 2 + rng.below(8);
    m.frame_dim = 1 + rng.below(24);
    m.data.resize(m.n_frames * m.frame_dim);
    for (float& v : m.data) v = static_cast<float>(rng.uniform(-3.0, 3.0));
    const FeatureVector base = aggregate(m);

    // random frame permutation (Fisher-Yates over rows)
    for (std::size_t i = m.n_frames; i > 1; --i) {
      const std::size_t j = rng.below(i);
      for (std::size_t d = 0; d < m.frame_dim; ++d) {
        std::swap(m.at(i - 1, d), m.at(j, d));
      }
    }
    const FeatureVector perm = aggregate(m);
    bool same = true;
    for (std::size_t i = 0; i < base.dim(); ++i) {
      const double err = std::fabs(base.values[i] - perm.values[i]);
      if (err > 1e-12 * (1.0 + std::fabs(base.values[i]))) same = false;
    }
    if (same) ++invariant;
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "768 -> %s, permutation-invariant %d/%d",
                dim_ok ? "1536" : "WRONG", invariant, trials);
  report(8, "frame aggregation contract", dim_ok && invariant == trials, detail);
}

void criterion_9_pipeline_determinism() {
  const fs::path base = fs::path(MVOX_TEST_TMP_DIR) / "acceptance_determinism";
  fs::remove_all(base);
  fs::create_directories(base);

  FixtureSpec spec;
  spec.n_classes = 3;
  spec.n_per_class = 40;
  spec.feature_dim = 8;
  spec.cluster_separation = 8.0;
  spec.seed = 91;
  const Fixture fx = synth_fixture(spec);
  save_manifest(fx.manifest, (base / "manifest.csv").string());
  write_embedding_file(fx.features, (base / "features.emb1").string());

  auto make_cfg = [&](const std::string& out, const std::string& mode) {
    KeyValueConfig cfg;
    cfg.set("mode", mode);
    cfg.set("task", "ctid");
    cfg.set("classes", "3");
    cfg.set("manifest", (base / "manifest.csv").string());
    cfg.set("features", (base / "features.emb1").string());
    cfg.set("out", out);
    cfg.set("seed", "17");
    cfg.set("epochs", "8");
    cfg.set("batch_sizes", "16,32");
    cfg.set("learning_rates", "1e-3,1e-4");
    cfg.set("max_pairs", "400");
    return cfg;
  };

  bool identical = true;
  std::string what;
  for (const std::string mode : {std::string("classify"), std::string("similarity")}) {
    const std::string r1 = run_pipeline(make_cfg((base / (mode + "_1")).string(), mode));
    const std::string r2 = run_pipeline(make_cfg((base / (mode + "_2")).string(), mode));
    for (const auto& entry : fs::directory_iterator(r1)) {
      const std::string name = entry.path().filename().string();
      if (slurp(entry.path().string()) != slurp((fs::path(r2) / name).string())) {
        identical = false;
        what = mode + "/" + name;
      }
    }
  }
  report(9, "byte-identical rerun of the end-to-end pipeline", identical,
         identical ? "classify + similarity artifact sets match" : "differs: " + what);
}

void criterion_10_scheduler_contract() {
  bool pass = true;
  std::string detail;

  {
    PlateauScheduler sched(1e-3, 0.1, 10);
    std::vector<int> reductions;
    for (int epoch = 1; epoch <= 30; ++epoch) {
      const double metric = epoch <= 5 ? 0.1 * epoch : 0.5;
      if (sched.observe(metric)) reductions.push_back(epoch);
    }
    if (reductions != std::vector<int>{15, 25}) {
      pass = false;
      detail = "stagnating trace reduced at unexpected epochs";
    }
    const double want = 1e-3 * 0.1 * 0.1;
    if (std::fabs(sched.lr() - want) > 1e-18) pass = false;
  }
  {
    PlateauScheduler sched(1e-3, 0.1, 10);
    for (int epoch = 1; epoch <= 30; ++epoch) {
      if (sched.observe(0.01 * epoch)) {
        pass = false;
        detail = "improving trace must never reduce";
      }
    }
  }
  if (detail.empty()) detail = "reductions exactly at patience boundaries (15, 25)";
  report(10, "plateau scheduler factor 0.1 / patience 10", pass, detail);
}

void criterion_11_emb1_round_trip() {
  const fs::path dir = fs::path(MVOX_TEST_TMP_DIR) / "acceptance_emb1";
  fs::remove_all(dir);
  fs::create_directories(dir);

  Rng rng(1100);
  int exact = 0;
  const int trials = 1000;
  const std::string path = (dir / "m.emb1").string();
  for (int t = 0; t < trials; ++t) {
    FrameMatrix m;
    m.n_frames = 1 + rng.below(6);
    m.frame_dim = 1 + rng.below(32);
    m.source_tag = "trial_" + std::to_string(t);
    m.data.resize(m.n_frames * m.frame_dim);
    for (float& v : m.data) v = static_cast<float>(rng.uniform(-1e6, 1e6));
    write_embedding_file(m, path);
    const FrameMatrix back = read_embedding_file(path);
    if (back.data == m.data && back.n_frames == m.n_frames &&
        back.frame_dim == m.frame_dim && back.source_tag == m.source_tag) {
      ++exact;
    }
  }

  // corruption errors
  bool errors_ok = true;
  {
    FrameMatrix m;
    m.n_frames = 2;
    m.frame_dim = 8;
    m.data.assign(16, 1.0f);
    write_embedding_file(m, path);
    std::string bytes = slurp(path);
    std::string bad_magic = bytes;
    bad_magic[0] = 'Z';
    std::ofstream((dir / "bad.emb1").string(), std::ios::binary) << bad_magic;
    try {
      read_embedding_file((dir / "bad.emb1").string());
      errors_ok = false;
    } catch (const ParseError& e) {
      if (std::string(e.what()).find("bad magic") == std::string::npos) errors_ok = false;
    }
    std::string truncated = bytes.substr(0, bytes.size() - 7);
    std::ofstream((dir / "trunc.emb1").string(), std::ios::binary) << truncated;
    try {
      read_embedding_file((dir / "trunc.emb1").string());
      errors_ok = false;
    } catch (const ParseError& e) {
      if (std::string(e.what()).find("truncated") == std::string::npos) errors_ok = false;
    }
  }

  char detail[96];
  std::snprintf(detail, sizeof detail, "%d/%d bit-exact, corruption errors %s", exact,
                trials, errors_ok ? "as specified" : "WRONG");
  report(11, "EMB1 round trip and corruption handling", exact == trials && errors_ok,
         detail);
}

void criterion_12_bandwidth_ablation() {
  const fs::path dir = fs::path(MVOX_TEST_TMP_DIR) / "acceptance_bandwidth";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // class-discriminative tones at 5.0/5.8/6.6 kHz: present in the 16 kHz
  // sample-rate regime (8 kHz bandwidth), gone after resampling to 8 kHz
  // (4 kHz bandwidth)
  AudioFixtureSpec spec;
  spec.n_classes = 3;
  spec.n_per_class = 40;
  spec.sample_rate = 32000.0;
  spec.duration_s = 0.25;
  spec.band_lo_hz = 5000.0;
  spec.band_step_hz = 800.0;
  spec.common_tone_hz = 400.0;
  spec.noise_level = 0.05;
  spec.seed = 120;
  const Manifest manifest = synth_audio_fixture(spec, (dir / "wav").string());
  const std::vector<int> labels = manifest_labels(manifest, Task::kCtid);

  auto run_regime = [&](double rate) {
    const FrameMatrix table = featurize_c22(manifest, rate, 1);
    const SplitAssignment sp = split(manifest, SplitRatios{}, 121);
    const SplitDatasets ds = make_datasets(table, labels, sp);
    GridSpec grid;
    grid.batch_sizes = {32};
    grid.learning_rates = {1e-3};
    const GridSearchOutcome out =
        grid_search(ds.train, ds.val, ds.test, 3, grid, 30, 122, 1);
    return out.test_report.uar;
  };

  const double wide = run_regime(16000.0);   // 8 kHz bandwidth regime
  const double narrow = run_regime(8000.0);  // 4 kHz bandwidth regime

  const bool pass = wide - narrow >= 0.2;
  char detail[96];
  std::snprintf(detail, sizeof detail, "UAR %.3f @8kHz-BW vs %.3f @4kHz-BW", wide,
                narrow);
  report(12, "bandwidth ablation surrogate (wider beats narrower)", pass, detail);
}

}  // namespace

int main() {
  fs::create_directories(MVOX_TEST_TMP_DIR);
  criterion_1_separable_fixture();
  criterion_2_null_signal();
  criterion_3_random_prediction_uar();
  criterion_4_catch22_oracle();
  criterion_5_gradient_check();
  criterion_6_cosine_anchors_and_oracle();
  criterion_7_clustered_similarity();
  criterion_8_aggregation_contract();
  criterion_9_pipeline_determinism();
  criterion_10_scheduler_contract();
  criterion_11_emb1_round_trip();
  criterion_12_bandwidth_ablation();

  if (g_failures == 0) {
    std::printf("all 12 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
