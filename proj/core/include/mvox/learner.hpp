// core/include/mvox/learner.hpp

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

#ifndef MVOX_LEARNER_HPP
#define MVOX_LEARNER_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mvox/matrix.hpp"

namespace mvox {

inline constexpr std::array<int, 3> kHiddenSizes = {128, 64, 32};
inline constexpr double kLayerNormEps = 1e-5;

struct LinearLayer {
  Matrix w;               // out x in, row-major
  std::vector<double> b;  // out
};

struct LayerNormParams {
  std::vector<double> gain;
  std::vector<double> bias;
};

// Parameter block shared by the model, gradients and optimizer moments.
struct MlpParams {
  std::array<LinearLayer, 3> linear;
  std::array<LayerNormParams, 3> norm;
  LinearLayer head;
};

// Three [Linear, LayerNorm, ReLU] blocks (128, 64, 32) and a linear head.
struct MlpModel {
  int input_dim = 0;
  int n_classes = 0;
  MlpParams params;

  std::size_t parameter_count() const;
};

// Uniform(-sqrt(1/fan_in), +sqrt(1/fan_in)) weights, zero biases, unit
// layer-norm gains; deterministic per seed.
MlpModel init_mlp(int input_dim, int n_classes, std::uint64_t seed);

MlpParams zero_like(const MlpModel& model);

// Batch forward pass: rows are samples; returns logits (batch x n_classes).
Matrix mlp_forward(const MlpModel& model, const Matrix& batch);

struct LossGrad {
  double loss = 0.0;
  MlpParams grads;
};

// Mean cross-entropy over the batch via log-sum-exp softmax, with analytic
// gradients for every parameter including layer-norm gain and bias.
LossGrad loss_and_grad(const MlpModel& model, const Matrix& batch,
                       const std::vector<int>& labels);

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  MlpParams m;
  MlpParams v;
  long long t = 0;
  AdamConfig config;
};

AdamState make_adam_state(const MlpModel& model, AdamConfig config = {});

// One bias-corrected Adam update of the model in place.
void adam_step(MlpModel& model, AdamState& state, const MlpParams& grads, double lr);

// Reduce-on-plateau, mode max: after `patience` consecutive observations
// without strict improvement, multiplies the rate by `factor` and resets
// the counter.
class PlateauScheduler {
 public:
  PlateauScheduler(double initial_lr, double factor, int patience)
      : lr_(initial_lr), factor_(factor), patience_(patience) {}

  // Returns true when this observation triggered a reduction.
  bool observe(double metric);

  double lr() const { return lr_; }

 private:
  double lr_;
  double factor_;
  int patience_;
  double best_ = -1e300;
  int bad_count_ = 0;
};

struct Dataset {
  Matrix x;
  std::vector<int> labels;
};

struct TrainConfig {
  double lr = 1e-3;
  int batch_size = 32;
  int epochs = 30;
  double scheduler_factor = 0.1;
  int scheduler_patience = 10;
  AdamConfig adam;
  std::uint64_t seed = 0;
};

struct EpochStats {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_uar = 0.0;
  double lr = 0.0;  // rate in effect during the epoch
};

struct TrainResult {
  MlpModel best_model;
  double best_val_uar = 0.0;
  int best_epoch = 0;
  std::vector<EpochStats> history;
};

// Seeded per-epoch shuffling, incomplete final batch kept, validation UAR
// after every epoch driving the plateau scheduler; returns the parameters
// from the epoch with the highest validation UAR (earliest on ties).
TrainResult train(const Dataset& train_set, const Dataset& val_set, int n_classes,
                  const TrainConfig& config);

struct EvalReport {
  double uar = 0.0;
  Matrix confusion;             // row-normalized; all-zero rows are absent classes
  Matrix confusion_counts;      // raw tallies
  std::vector<double> per_class_recall;  // NaN for classes absent from the set
  std::vector<bool> class_present;
  std::size_t n_eval = 0;
};

// Argmax predictions (lowest index wins ties).
std::vector<int> predict(const MlpModel& model, const Matrix& x);

EvalReport evaluate(const MlpModel& model, const Dataset& set);

// Metric core, also usable without a model (e.g. scripted predictions).
EvalReport eval_predictions(const std::vector<int>& truth,
                            const std::vector<int>& predictions, int n_classes);

// Per-dimension z-scoring fit on training data and applied everywhere else;
// zero-variance dimensions pass through centered.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> std_dev;

  static Standardizer fit(const Matrix& x);
  Matrix apply(const Matrix& x) const;
};

// Versioned binary model container (magic "MLP1", little-endian, binary64
// parameters in block order: per block W row-major, b, gain, bias; then
// head W, b).
void save_model(const MlpModel& model, const std::string& path);
MlpModel load_model(const std::string& path);

// Key/value report document plus confusion CSV.
void write_eval_report(const EvalReport& report, const std::string& path);
void write_confusion_csv(const EvalReport& report, const std::string& path);

}  // namespace mvox

#endif  // MVOX_LEARNER_HPP
