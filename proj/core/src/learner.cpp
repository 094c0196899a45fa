// core/src/learner.cpp

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

#include "mvox/learner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>

#include "mvox/common.hpp"
#include "mvox/csv.hpp"
#include "mvox/rng.hpp"

namespace mvox {

namespace {

static_assert(std::endian::native == std::endian::little,
              "model serialization assumes a little-endian host");

// applies fn to every parameter array, in the serialization order
template <typename Params, typename Fn>
void for_each_param_array(Params& p, Fn&& fn) {
  for (std::size_t i = 0; i < 3; ++i) {
    fn(p.linear[i].w.data());
    fn(p.linear[i].b);
    fn(p.norm[i].gain);
    fn(p.norm[i].bias);
  }
  fn(p.head.w.data());
  fn(p.head.b);
}

template <typename Fn>
void for_each_param_pair(MlpParams& a, const MlpParams& b, Fn&& fn) {
  for (std::size_t i = 0; i < 3; ++i) {
    fn(a.linear[i].w.data(), b.linear[i].w.data());
    fn(a.linear[i].b, b.linear[i].b);
    fn(a.norm[i].gain, b.norm[i].gain);
    fn(a.norm[i].bias, b.norm[i].bias);
  }
  fn(a.head.w.data(), b.head.w.data());
  fn(a.head.b, b.head.b);
}

std::vector<int> layer_dims(int input_dim, int n_classes) {
  return {input_dim, kHiddenSizes[0], kHiddenSizes[1], kHiddenSizes[2], n_classes};
}

// batch-row affine: out = x * W^T + b
Matrix affine(const Matrix& x, const LinearLayer& layer) {
  const std::size_t n_out = layer.w.rows();
  Matrix out(x.rows(), n_out);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t o = 0; o < n_out; ++o) {
      double acc = layer.b[o];
      for (std::size_t i = 0; i < x.cols(); ++i) acc += layer.w(o, i) * x(r, i);
      out(r, o) = acc;
    }
  }
  return out;
}

struct BlockCache {
  Matrix pre_norm;   // z = affine output
  Matrix x_hat;      // normalized pre gain/bias
  std::vector<double> inv_std;  // per row
  Matrix activation;  // post ReLU
};

Matrix layer_norm_forward(const Matrix& z, const LayerNormParams& ln, Matrix& x_hat,
                          std::vector<double>& inv_std) {
  const std::size_t h = z.cols();
  Matrix out(z.rows(), h);
  x_hat = Matrix(z.rows(), h);
  inv_std.resize(z.rows());
  for (std::size_t r = 0; r < z.rows(); ++r) {
    double mean = 0.0;
    for (std::size_t c = 0; c < h; ++c) mean += z(r, c);
    mean /= static_cast<double>(h);
    double var = 0.0;
    for (std::size_t c = 0; c < h; ++c) {
      const double d = z(r, c) - mean;
      var += d * d;
    }
    var /= static_cast<double>(h);
    const double is = 1.0 / std::sqrt(var + kLayerNormEps);
    inv_std[r] = is;
    for (std::size_t c = 0; c < h; ++c) {
      const double xh = (z(r, c) - mean) * is;
      x_hat(r, c) = xh;
      out(r, c) = ln.gain[c] * xh + ln.bias[c];
    }
  }
  return out;
}

Matrix forward_cached(const MlpModel& model, const Matrix& batch,
                      std::array<BlockCache, 3>* caches) {
  require(batch.cols() == static_cast<std::size_t>(model.input_dim),
          "forward: batch dimension does not match model input_dim");
  for (double v : batch.data()) {
    require(std::isfinite(v), "forward: non-finite value in batch");
  }

  Matrix a = batch;
  for (std::size_t blk = 0; blk < 3; ++blk) {
    Matrix z = affine(a, model.params.linear[blk]);
    Matrix x_hat;
    std::vector<double> inv_std;
    Matrix normed = layer_norm_forward(z, model.params.norm[blk], x_hat, inv_std);
    Matrix act(normed.rows(), normed.cols());
    for (std::size_t i = 0; i < normed.data().size(); ++i) {
      act.data()[i] = normed.data()[i] > 0.0 ? normed.data()[i] : 0.0;
    }
    if (caches) {
      (*caches)[blk].pre_norm = std::move(z);
      (*caches)[blk].x_hat = std::move(x_hat);
      (*caches)[blk].inv_std = std::move(inv_std);
      (*caches)[blk].activation = act;
    }
    a = std::move(act);
  }
  return affine(a, model.params.head);
}

}  // namespace

std::size_t MlpModel::parameter_count() const {
  std::size_t count = 0;
  for_each_param_array(params, [&](const std::vector<double>& v) { count += v.size(); });
  return count;
}

MlpModel init_mlp(int input_dim, int n_classes, std::uint64_t seed) {
  require(input_dim >= 1, "init_mlp: input_dim must be >= 1");
  require(n_classes >= 1, "init_mlp: n_classes must be >= 1");

  MlpModel model;
  model.input_dim = input_dim;
  model.n_classes = n_classes;
  const auto dims = layer_dims(input_dim, n_classes);

  Rng rng(seed);
  auto init_linear = [&](LinearLayer& l, int fan_in, int fan_out) {
    const double bound = std::sqrt(1.0 / static_cast<double>(fan_in));
    l.w = Matrix(static_cast<std::size_t>(fan_out), static_cast<std::size_t>(fan_in));
    for (double& v : l.w.data()) v = rng.uniform(-bound, bound);
    l.b.assign(static_cast<std::size_t>(fan_out), 0.0);
  };

  for (std::size_t blk = 0; blk < 3; ++blk) {
    init_linear(model.params.linear[blk], dims[blk], dims[blk + 1]);
    model.params.norm[blk].gain.assign(static_cast<std::size_t>(dims[blk + 1]), 1.0);
    model.params.norm[blk].bias.assign(static_cast<std::size_t>(dims[blk + 1]), 0.0);
  }
  init_linear(model.params.head, dims[3], dims[4]);
  return model;
}

MlpParams zero_like(const MlpModel& model) {
  MlpParams z;
  const auto dims = layer_dims(model.input_dim, model.n_classes);
  for (std::size_t blk = 0; blk < 3; ++blk) {
    z.linear[blk].w = Matrix(static_cast<std::size_t>(dims[blk + 1]),
                             static_cast<std::size_t>(dims[blk]));
    z.linear[blk].b.assign(static_cast<std::size_t>(dims[blk + 1]), 0.0);
    z.norm[blk].gain.assign(static_cast<std::size_t>(dims[blk + 1]), 0.0);
    z.norm[blk].bias.assign(static_cast<std::size_t>(dims[blk + 1]), 0.0);
  }
  z.head.w = Matrix(static_cast<std::size_t>(dims[4]), static_cast<std::size_t>(dims[3]));
  z.head.b.assign(static_cast<std::size_t>(dims[4]), 0.0);
  return z;
}

Matrix mlp_forward(const MlpModel& model, const Matrix& batch) {
  return forward_cached(model, batch, nullptr);
}

LossGrad loss_and_grad(const MlpModel& model, const Matrix& batch,
                       const std::vector<int>& labels) {
  require(batch.rows() == labels.size(),
          "loss_and_grad: batch and labels differ in length");
  require(batch.rows() >= 1, "loss_and_grad: empty batch");
  for (int l : labels) {
    require(l >= 0 && l < model.n_classes, "loss_and_grad: label out of range");
  }

  std::array<BlockCache, 3> caches;
  const Matrix logits = forward_cached(model, batch, &caches);
  const std::size_t b = batch.rows();
  const auto c = static_cast<std::size_t>(model.n_classes);

  LossGrad out;
  out.grads = zero_like(model);

  // softmax cross-entropy, log-sum-exp stabilized
  Matrix dlogits(b, c);
  double loss = 0.0;
  for (std::size_t r = 0; r < b; ++r) {
    double mx = logits(r, 0);
    for (std::size_t j = 1; j < c; ++j) mx = std::max(mx, logits(r, j));
    double sum_exp = 0.0;
    for (std::size_t j = 0; j < c; ++j) sum_exp += std::exp(logits(r, j) - mx);
    const double log_z = mx + std::log(sum_exp);
    loss += log_z - logits(r, static_cast<std::size_t>(labels[r]));
    for (std::size_t j = 0; j < c; ++j) {
      const double p = std::exp(logits(r, j) - log_z);
      dlogits(r, j) = (p - (j == static_cast<std::size_t>(labels[r]) ? 1.0 : 0.0)) /
                      static_cast<double>(b);
    }
  }
  out.loss = loss / static_cast<double>(b);

  // head
  const Matrix& a3 = caches[2].activation;
  for (std::size_t o = 0; o < c; ++o) {
    for (std::size_t r = 0; r < b; ++r) {
      out.grads.head.b[o] += dlogits(r, o);
      for (std::size_t i = 0; i < a3.cols(); ++i) {
        out.grads.head.w(o, i) += dlogits(r, o) * a3(r, i);
      }
    }
  }
  Matrix d_act = matmul(dlogits, model.params.head.w);  // (b x 32)

  // blocks, last to first
  for (int blk = 2; blk >= 0; --blk) {
    const auto ublk = static_cast<std::size_t>(blk);
    const BlockCache& cache = caches[ublk];
    const std::size_t h = cache.pre_norm.cols();
    const LayerNormParams& ln = model.params.norm[ublk];

    // ReLU mask on the post-norm activation
    Matrix d_norm(b, h);
    for (std::size_t r = 0; r < b; ++r) {
      for (std::size_t j = 0; j < h; ++j) {
        d_norm(r, j) = cache.activation(r, j) > 0.0 ? d_act(r, j) : 0.0;
      }
    }

    // layer-norm backward
    Matrix dz(b, h);
    for (std::size_t r = 0; r < b; ++r) {
      double mean_dxhat = 0.0, mean_dxhat_xhat = 0.0;
      for (std::size_t j = 0; j < h; ++j) {
        const double dxh = d_norm(r, j) * ln.gain[j];
        mean_dxhat += dxh;
        mean_dxhat_xhat += dxh * cache.x_hat(r, j);
      }
      mean_dxhat /= static_cast<double>(h);
      mean_dxhat_xhat /= static_cast<double>(h);
      for (std::size_t j = 0; j < h; ++j) {
        const double dxh = d_norm(r, j) * ln.gain[j];
        dz(r, j) = cache.inv_std[r] *
                   (dxh - mean_dxhat - cache.x_hat(r, j) * mean_dxhat_xhat);
      }
    }
    for (std::size_t j = 0; j < h; ++j) {
      double dg = 0.0, dbeta = 0.0;
      for (std::size_t r = 0; r < b; ++r) {
        dg += d_norm(r, j) * cache.x_hat(r, j);
        dbeta += d_norm(r, j);
      }
      out.grads.norm[ublk].gain[j] = dg;
      out.grads.norm[ublk].bias[j] = dbeta;
    }

    // linear backward
    const Matrix& a_prev = blk == 0 ? batch : caches[ublk - 1].activation;
    LinearLayer& gl = out.grads.linear[ublk];
    for (std::size_t o = 0; o < h; ++o) {
      for (std::size_t r = 0; r < b; ++r) {
        gl.b[o] += dz(r, o);
        for (std::size_t i = 0; i < a_prev.cols(); ++i) {
          gl.w(o, i) += dz(r, o) * a_prev(r, i);
        }
      }
    }
    if (blk > 0) d_act = matmul(dz, model.params.linear[ublk].w);
  }
  return out;
}

AdamState make_adam_state(const MlpModel& model, AdamConfig config) {
  AdamState s;
  s.m = zero_like(model);
  s.v = zero_like(model);
  s.t = 0;
  s.config = config;
  return s;
}

void adam_step(MlpModel& model, AdamState& state, const MlpParams& grads, double lr) {
  state.t += 1;
  const double b1 = state.config.beta1;
  const double b2 = state.config.beta2;
  const double eps = state.config.eps;
  const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.t));

  for_each_param_pair(state.m, grads, [&](std::vector<double>& m,
                                          const std::vector<double>& g) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = b1 * m[i] + (1.0 - b1) * g[i];
  });
  for_each_param_pair(state.v, grads, [&](std::vector<double>& v,
                                          const std::vector<double>& g) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
    }
  });

  // walk parameters, m and v together via the fixed serialization order
  std::vector<std::vector<double>*> params, ms, vs;
  for_each_param_array(model.params,
                       [&](std::vector<double>& a) { params.push_back(&a); });
  for_each_param_array(state.m, [&](std::vector<double>& a) { ms.push_back(&a); });
  for_each_param_array(state.v, [&](std::vector<double>& a) { vs.push_back(&a); });
  for (std::size_t k = 0; k < params.size(); ++k) {
    std::vector<double>& p = *params[k];
    const std::vector<double>& m = *ms[k];
    const std::vector<double>& v = *vs[k];
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      p[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
  }
}

bool PlateauScheduler::observe(double metric) {
  if (metric > best_) {
    best_ = metric;
    bad_count_ = 0;
    return false;
  }
  bad_count_ += 1;
  if (bad_count_ >= patience_) {
    lr_ *= factor_;
    bad_count_ = 0;
    return true;
  }
  return false;
}

TrainResult train(const Dataset& train_set, const Dataset& val_set, int n_classes,
                  const TrainConfig& config) {
  require(train_set.x.rows() >= 1, "train: empty training set");
  require(val_set.x.rows() >= 1, "train: empty validation set");
  require(train_set.x.rows() == train_set.labels.size(),
          "train: training labels mismatch");
  require(val_set.x.rows() == val_set.labels.size(), "train: validation labels mismatch");
  require(train_set.x.cols() == val_set.x.cols(), "train: feature dims differ");
  require(config.batch_size >= 1, "train: batch_size must be >= 1");
  require(config.epochs >= 1, "train: epochs must be >= 1");

  MlpModel model = init_mlp(static_cast<int>(train_set.x.cols()), n_classes,
                            derive_seed(config.seed, "init"));
  AdamState adam = make_adam_state(model, config.adam);
  PlateauScheduler scheduler(config.lr, config.scheduler_factor,
                             config.scheduler_patience);
  Rng shuffle_rng(derive_seed(config.seed, "shuffle"));

  TrainResult result;
  result.best_model = model;
  result.best_val_uar = -1.0;
  result.best_epoch = 0;

  std::vector<std::size_t> order(train_set.x.rows());
  std::iota(order.begin(), order.end(), 0);

  const auto batch_size = static_cast<std::size_t>(config.batch_size);
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const double epoch_lr = scheduler.lr();
    shuffle_rng.shuffle(order);

    double loss_sum = 0.0;
    std::size_t n_batches = 0;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t end = std::min(start + batch_size, order.size());
      Matrix batch(end - start, train_set.x.cols());
      std::vector<int> labels(end - start);
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t src = order[k];
        for (std::size_t ccol = 0; ccol < train_set.x.cols(); ++ccol) {
          batch(k - start, ccol) = train_set.x(src, ccol);
        }
        labels[k - start] = train_set.labels[src];
      }

      LossGrad lg = loss_and_grad(model, batch, labels);
      if (!std::isfinite(lg.loss)) {
        throw Error("train: non-finite loss at epoch " + std::to_string(epoch) +
                    ", batch " + std::to_string(n_batches) +
                    " (lr=" + format_double(epoch_lr) + ")");
      }
      adam_step(model, adam, lg.grads, epoch_lr);
      loss_sum += lg.loss;
      ++n_batches;
    }

    const EvalReport val_report = evaluate(model, val_set);
    if (val_report.uar > result.best_val_uar) {
      result.best_val_uar = val_report.uar;
      result.best_epoch = epoch;
      result.best_model = model;
    }
    scheduler.observe(val_report.uar);

    result.history.push_back(EpochStats{epoch, loss_sum / static_cast<double>(n_batches),
                                        val_report.uar, epoch_lr});
  }
  return result;
}

std::vector<int> predict(const MlpModel& model, const Matrix& x) {
  std::vector<int> pred(x.rows());
  constexpr std::size_t kChunk = 256;
  for (std::size_t start = 0; start < x.rows(); start += kChunk) {
    const std::size_t end = std::min(start + kChunk, x.rows());
    Matrix batch(end - start, x.cols());
    for (std::size_t r = start; r < end; ++r) {
      for (std::size_t ccol = 0; ccol < x.cols(); ++ccol) {
        batch(r - start, ccol) = x(r, ccol);
      }
    }
    const Matrix logits = mlp_forward(model, batch);
    for (std::size_t r = 0; r < logits.rows(); ++r) {
      std::size_t arg = 0;
      for (std::size_t j = 1; j < logits.cols(); ++j) {
        if (logits(r, j) > logits(r, arg)) arg = j;
      }
      pred[start + r] = static_cast<int>(arg);
    }
  }
  return pred;
}

EvalReport evaluate(const MlpModel& model, const Dataset& set) {
  require(set.x.rows() >= 1, "evaluate: empty set");
  require(set.x.rows() == set.labels.size(), "evaluate: labels mismatch");
  return eval_predictions(set.labels, predict(model, set.x), model.n_classes);
}

EvalReport eval_predictions(const std::vector<int>& truth,
                            const std::vector<int>& predictions, int n_classes) {
  require(truth.size() == predictions.size(),
          "eval_predictions: truth and predictions differ in length");
  require(!truth.empty(), "eval_predictions: empty input");
  require(n_classes >= 1, "eval_predictions: n_classes must be >= 1");

  const auto c = static_cast<std::size_t>(n_classes);
  EvalReport report;
  report.n_eval = truth.size();
  report.confusion_counts = Matrix(c, c);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    require(truth[i] >= 0 && truth[i] < n_classes, "eval_predictions: label out of range");
    require(predictions[i] >= 0 && predictions[i] < n_classes,
            "eval_predictions: prediction out of range");
    report.confusion_counts(static_cast<std::size_t>(truth[i]),
                            static_cast<std::size_t>(predictions[i])) += 1.0;
  }

  report.confusion = Matrix(c, c);
  report.per_class_recall.assign(c, std::numeric_limits<double>::quiet_NaN());
  report.class_present.assign(c, false);

  double recall_sum = 0.0;
  std::size_t present = 0;
  for (std::size_t t = 0; t < c; ++t) {
    double total = 0.0;
    for (std::size_t p = 0; p < c; ++p) total += report.confusion_counts(t, p);
    if (total > 0.0) {
      report.class_present[t] = true;
      for (std::size_t p = 0; p < c; ++p) {
        report.confusion(t, p) = report.confusion_counts(t, p) / total;
      }
      report.per_class_recall[t] = report.confusion(t, t);
      recall_sum += report.per_class_recall[t];
      ++present;
    }
  }
  require(present > 0, "eval_predictions: no class has samples");
  report.uar = recall_sum / static_cast<double>(present);
  return report;
}

Standardizer Standardizer::fit(const Matrix& x) {
  require(x.rows() >= 1, "Standardizer: empty matrix");
  Standardizer s;
  s.mean.assign(x.cols(), 0.0);
  s.std_dev.assign(x.cols(), 0.0);
  const auto n = static_cast<double>(x.rows());
  for (std::size_t c = 0; c < x.cols(); ++c) {
    double m = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r) m += x(r, c);
    m /= n;
    double var = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      const double d = x(r, c) - m;
      var += d * d;
    }
    s.mean[c] = m;
    const double sd = std::sqrt(var / n);
    s.std_dev[c] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

Matrix Standardizer::apply(const Matrix& x) const {
  require(x.cols() == mean.size(), "Standardizer: dimension mismatch");
  Matrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      out(r, c) = (x(r, c) - mean[c]) / std_dev[c];
    }
  }
  return out;
}

void save_model(const MlpModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);

  out.write("MLP1", 4);
  const std::uint16_t version = 1;
  const auto input_dim = static_cast<std::uint32_t>(model.input_dim);
  const auto n_classes = static_cast<std::uint32_t>(model.n_classes);
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&input_dim), sizeof input_dim);
  out.write(reinterpret_cast<const char*>(&n_classes), sizeof n_classes);

  for_each_param_array(model.params, [&](const std::vector<double>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
  });
  if (!out) throw IoError("write failed: " + path);
}

MlpModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);

  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, "MLP1", 4) != 0)
    throw ParseError(path + ": bad magic, not an MLP1 file");

  std::uint16_t version = 0;
  std::uint32_t input_dim = 0, n_classes = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&input_dim), sizeof input_dim);
  in.read(reinterpret_cast<char*>(&n_classes), sizeof n_classes);
  if (!in) throw ParseError(path + ": truncated header");
  if (version != 1)
    throw ParseError(path + ": unsupported model version " + std::to_string(version));

  MlpModel model = init_mlp(static_cast<int>(input_dim), static_cast<int>(n_classes), 0);
  for_each_param_array(model.params, [&](std::vector<double>& v) {
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != v.size() * sizeof(double))
      throw ParseError(path + ": truncated parameter payload");
  });
  return model;
}

void write_eval_report(const EvalReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "uar = " << format_double(report.uar) << '\n';
  out << "n_eval = " << report.n_eval << '\n';
  for (std::size_t c = 0; c < report.per_class_recall.size(); ++c) {
    out << "recall_" << c << " = ";
    if (report.class_present[c]) {
      out << format_double(report.per_class_recall[c]);
    } else {
      out << "absent";
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_confusion_csv(const EvalReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  const std::size_t c = report.confusion.rows();
  out << "true_class";
  for (std::size_t j = 0; j < c; ++j) out << ",pred_" << j;
  out << '\n';
  for (std::size_t i = 0; i < c; ++i) {
    out << i;
    for (std::size_t j = 0; j < c; ++j) out << ',' << format_double(report.confusion(i, j));
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace mvox
