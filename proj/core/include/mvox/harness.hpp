// core/include/mvox/harness.hpp

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

#ifndef MVOX_HARNESS_HPP
#define MVOX_HARNESS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mvox/config.hpp"
#include "mvox/corpus.hpp"
#include "mvox/dsp.hpp"
#include "mvox/learner.hpp"

namespace mvox {

// CTID: call-type classification. CLID: caller identification.
enum class Task { kCtid, kClid };

Task parse_task(const std::string& name);
const char* task_name(Task task);

std::vector<int> manifest_labels(const Manifest& manifest, Task task);
int task_n_classes(const Manifest& manifest, Task task);

struct GridSpec {
  std::vector<int> batch_sizes = {32, 64, 128, 256, 512};
  std::vector<double> learning_rates = {1e-3, 1e-4};

  std::size_t size() const { return batch_sizes.size() * learning_rates.size(); }
};

struct GridPointResult {
  int batch_size = 0;
  double learning_rate = 0.0;
  double val_uar = 0.0;
  int best_epoch = 0;
};

struct GridSearchOutcome {
  std::vector<GridPointResult> table;  // grid-definition order
  std::size_t best_index = 0;
  TrainResult best_run;
  EvalReport test_report;
};

// Trains one model per (batch size, learning rate) point, each with its own
// derived seed, and picks the highest validation UAR. The grid is walked
// batch-sizes-outer in listed order with learning rates in listed order, and
// ties keep the earliest point, so with the default spec (batch ascending,
// rate descending) ties resolve to the smaller batch, then the larger rate.
// The winner's Train-fit model is evaluated on Test as-is.
GridSearchOutcome grid_search(const Dataset& train, const Dataset& val,
                              const Dataset& test, int n_classes, const GridSpec& grid,
                              int epochs, std::uint64_t seed, int threads);

void write_grid_results_csv(const std::vector<GridPointResult>& table,
                            const std::string& path);
std::vector<GridPointResult> read_grid_results_csv(const std::string& path);

struct LayerSweepEntry {
  int layer = 0;
  double val_uar = 0.0;   // winning grid point's validation UAR (the score)
  double test_uar = 0.0;  // that model's Test UAR, for reporting
  double normalized = 0.0;
  int best_batch_size = 0;
  double best_learning_rate = 0.0;
};

struct LayerSweepResult {
  std::vector<LayerSweepEntry> entries;  // ascending layer index
  int best_layer = 0;
  bool degenerate_normalization = false;  // all scores equal
};

// Full grid-searched classification per layer; scores are min-max
// normalized to [0, 1] (all-equal scores are flagged and normalize to 0).
LayerSweepResult layer_sweep(const std::map<int, FrameMatrix>& layer_tables,
                             const std::vector<int>& labels,
                             const SplitAssignment& split, int n_classes,
                             const GridSpec& grid, int epochs, std::uint64_t seed,
                             int threads);

void write_layer_sweep_csv(const LayerSweepResult& result, const std::string& path);

// Handcrafted feature table from manifest WAVs: slice each segment, resample
// to target_rate when positive, compute the 24-dim series features.
FrameMatrix featurize_c22(const Manifest& manifest, double target_rate, int threads);

// Per-record audio, sliced and optionally resampled; order follows the
// manifest.
std::vector<AudioBuffer> load_segments(const Manifest& manifest, double target_rate);

// Aggregates one EMB1 frame file per record (<dir>/<id>.emb1) into an
// utterance-level table tagged "agg:<first source tag>".
FrameMatrix import_embeddings(const Manifest& manifest, const std::string& emb_dir,
                              int threads);

struct SplitDatasets {
  Dataset train;
  Dataset val;
  Dataset test;
  Standardizer standardizer;  // fit on Train, applied to all three
};

SplitDatasets make_datasets(const FrameMatrix& table, const std::vector<int>& labels,
                            const SplitAssignment& split);

// Executes the configured pipeline (featurize -> analysis -> report) into
// the output directory and writes a reproducibility manifest; returns the
// output directory. See the README for the config schema.
std::string run_pipeline(const KeyValueConfig& config);
std::string run_pipeline_file(const std::string& config_path);

std::uint64_t fnv1a64_bytes(const std::string& bytes);

}  // namespace mvox

#endif  // MVOX_HARNESS_HPP
