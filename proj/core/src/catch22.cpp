// core/src/catch22.cpp

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

// The 22 canonical time-series characteristics (catch22, Lubba et al. 2019).
// The arithmetic follows the canonical C implementation step for step —
// summation order, binning rules, interpolation, the no-pivot least-squares
// solve in the spline detrending — so results agree with the reference to
// floating-point noise. Tested against frozen reference outputs in
// tests/data/catch22_expected.csv.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "mvox/common.hpp"
#include "mvox/features.hpp"
#include "mvox/fft.hpp"

namespace mvox {

namespace {

// ---------------------------------------------------------------------------
// small statistics helpers (reference divisor conventions: std is sample std)

double vec_mean(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m += a[i];
  return m / static_cast<double>(n);
}

double vec_stddev(const double* a, std::size_t n) {
  const double m = vec_mean(a, n);
  double sd = 0.0;
  for (std::size_t i = 0; i < n; ++i) sd += (a[i] - m) * (a[i] - m);
  return std::sqrt(sd / static_cast<double>(n - 1));
}

double vec_median(const double* a, std::size_t n) {
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> b(a, a + n);
  std::sort(b.begin(), b.end());
  if (n % 2 == 1) return b[n / 2];
  return (b[n / 2] + b[n / 2 - 1]) / 2.0;
}

double vec_min(const double* a, std::size_t n) {
  double m = a[0];
  for (std::size_t i = 1; i < n; ++i) m = a[i] < m ? a[i] : m;
  return m;
}

double vec_max(const double* a, std::size_t n) {
  double m = a[0];
  for (std::size_t i = 1; i < n; ++i) m = a[i] > m ? a[i] : m;
  return m;
}

double vec_norm(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return std::sqrt(s);
}

// MATLAB-convention quantile with midpoint offsets.
double quantile_of(const double* y, std::size_t n, double quant) {
  std::vector<double> tmp(y, y + n);
  std::sort(tmp.begin(), tmp.end());
  const double q = 0.5 / static_cast<double>(n);
  if (quant < q) return tmp.front();
  if (quant > 1.0 - q) return tmp.back();
  const double quant_idx = static_cast<double>(n) * quant - 0.5;
  const auto idx_left = static_cast<std::size_t>(std::floor(quant_idx));
  const auto idx_right = static_cast<std::size_t>(std::ceil(quant_idx));
  if (idx_left == idx_right) return tmp[idx_left];
  return tmp[idx_left] + (quant_idx - static_cast<double>(idx_left)) *
                             (tmp[idx_right] - tmp[idx_left]) /
                             static_cast<double>(idx_right - idx_left);
}

double pearson_corr(const double* x, const double* y, std::size_t n) {
  double nom = 0.0, denom_x = 0.0, denom_y = 0.0;
  const double mx = vec_mean(x, n);
  const double my = vec_mean(y, n);
  for (std::size_t i = 0; i < n; ++i) {
    nom += (x[i] - mx) * (y[i] - my);
    denom_x += (x[i] - mx) * (x[i] - mx);
    denom_y += (y[i] - my) * (y[i] - my);
  }
  return nom / std::sqrt(denom_x * denom_y);
}

double autocorr_lag(const double* x, std::size_t n, std::size_t lag) {
  return pearson_corr(x, x + lag, n - lag);
}

// raw lagged second moment, no mean removal
double autocov_lag(const double* x, std::size_t n, std::size_t lag) {
  double s = 0.0;
  for (std::size_t i = 0; i < n - lag; ++i) s += x[i] * x[i + lag];
  return s / static_cast<double>(n - lag);
}

// y = mx + b least squares; both outputs 0 on a singular system
int linreg(std::size_t n, const double* x, const double* y, double* m, double* b) {
  double sumx = 0.0, sumx2 = 0.0, sumxy = 0.0, sumy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sumx += x[i];
    sumx2 += x[i] * x[i];
    sumxy += x[i] * y[i];
    sumy += y[i];
  }
  const double denom = static_cast<double>(n) * sumx2 - sumx * sumx;
  if (denom == 0.0) {
    *m = 0.0;
    *b = 0.0;
    return 1;
  }
  *m = (static_cast<double>(n) * sumxy - sumx * sumy) / denom;
  *b = (sumy * sumx2 - sumx * sumxy) / denom;
  return 0;
}

double f_entropy(const double* a, std::size_t n) {
  double f = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] > 0.0) f += a[i] * std::log(a[i]);
  }
  return -f;
}

// ---------------------------------------------------------------------------
// histograms

int histcounts(const double* y, std::size_t n, int n_bins, std::vector<int>& counts,
               std::vector<double>& edges) {
  double min_val = std::numeric_limits<double>::max();
  double max_val = -std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < n; ++i) {
    min_val = std::min(min_val, y[i]);
    max_val = std::max(max_val, y[i]);
  }
  if (n_bins <= 0) {
    n_bins = static_cast<int>(
        std::ceil((max_val - min_val) /
                  (3.5 * vec_stddev(y, n) / std::pow(static_cast<double>(n), 1.0 / 3.0))));
  }
  const double bin_step = (max_val - min_val) / n_bins;
  counts.assign(static_cast<std::size_t>(n_bins), 0);
  for (std::size_t i = 0; i < n; ++i) {
    int bin = static_cast<int>((y[i] - min_val) / bin_step);
    if (bin < 0) bin = 0;
    if (bin >= n_bins) bin = n_bins - 1;
    counts[static_cast<std::size_t>(bin)] += 1;
  }
  edges.resize(static_cast<std::size_t>(n_bins) + 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = static_cast<double>(i) * bin_step + min_val;
  }
  return n_bins;
}

int num_bins_auto(const double* y, std::size_t n) {
  const double sd = vec_stddev(y, n);
  if (sd < 0.001) return 0;
  return static_cast<int>(
      std::ceil((vec_max(y, n) - vec_min(y, n)) /
                (3.5 * sd / std::pow(static_cast<double>(n), 1.0 / 3.0))));
}

// first bin edge exceeding the value; 1-based bin identity, 0 if none
std::vector<int> histbinassign(const double* y, std::size_t n, const double* edges,
                               std::size_t n_edges) {
  std::vector<int> bins(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n_edges; ++j) {
      if (y[i] < edges[j]) {
        bins[i] = static_cast<int>(j);
        break;
      }
    }
  }
  return bins;
}

std::vector<int> histcount_edges(const double* y, std::size_t n, const double* edges,
                                 std::size_t n_edges) {
  std::vector<int> counts(n_edges, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n_edges; ++j) {
      if (y[i] <= edges[j]) {
        counts[j] += 1;
        break;
      }
    }
  }
  return counts;
}

// ---------------------------------------------------------------------------
// autocorrelation via zero-padded FFT, normalized by lag 0.
//
// Several downstream features threshold autocorrelation values that can sit
// within 1e-12 of zero (first zero crossing, first minimum), so this FFT
// reproduces the reference numerics operation for operation: the same
// radix-2 recursion, the same truncated pi in the twiddle table, and the
// same componentwise complex division.

constexpr double kRefPi = 3.14159265359;

void ref_fft_rec(std::complex<double>* a, std::complex<double>* out, std::size_t size,
                 std::size_t step, const std::complex<double>* tw) {
  if (step < size) {
    ref_fft_rec(out, a, size, step * 2, tw);
    ref_fft_rec(out + step, a + step, size, step * 2, tw);
    for (std::size_t i = 0; i < size; i += 2 * step) {
      const std::complex<double> t = tw[i] * out[i + step];
      a[i / 2] = out[i] + t;
      a[(i + size) / 2] = out[i] - t;
    }
  }
}

void ref_fft(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> tw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ang = -kRefPi * static_cast<double>(i) / static_cast<double>(n);
    tw[i] = {std::cos(ang), std::sin(ang)};
  }
  std::vector<std::complex<double>> out = a;
  ref_fft_rec(a.data(), out.data(), n, 1, tw.data());
}

std::vector<double> autocorr_full(const double* y, std::size_t n) {
  const double m = vec_mean(y, n);
  const std::size_t n_fft = next_pow2(n) << 1;

  std::vector<std::complex<double>> f(n_fft, {0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) f[i] = {y[i] - m, 0.0};
  ref_fft(f);
  for (auto& v : f) v *= std::conj(v);
  // second forward transform; the squared spectrum is real and even, so
  // this matches the inverse up to the normalization cancelled below
  ref_fft(f);
  const double dc = f[0].real(), di = f[0].imag();
  const double denom = dc * dc + di * di;
  std::vector<double> out(n_fft);
  for (std::size_t i = 0; i < n_fft; ++i) {
    out[i] = (f[i].real() * dc + f[i].imag() * di) / denom;
  }
  return out;
}

std::size_t first_zero_ac(const double* y, std::size_t n, std::size_t max_tau) {
  const std::vector<double> ac = autocorr_full(y, n);
  std::size_t idx = 0;
  while (idx < max_tau && ac[idx] > 0.0) ++idx;
  return idx;
}

// ---------------------------------------------------------------------------
// coarse graining (quantile alphabet, 1-based symbols)

std::vector<int> coarsegrain_quantile(const double* y, std::size_t n, int num_groups) {
  std::vector<double> th(static_cast<std::size_t>(num_groups) + 1);
  for (int i = 0; i <= num_groups; ++i) {
    th[static_cast<std::size_t>(i)] =
        quantile_of(y, n, static_cast<double>(i) / num_groups);
  }
  th[0] -= 1.0;
  std::vector<int> labels(n, 0);
  for (int g = 0; g < num_groups; ++g) {
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] > th[static_cast<std::size_t>(g)] &&
          y[j] <= th[static_cast<std::size_t>(g) + 1]) {
        labels[j] = g + 1;
      }
    }
  }
  return labels;
}

// ---------------------------------------------------------------------------
// features

double dn_histogram_mode(const double* z, std::size_t n, int n_bins) {
  std::vector<int> counts;
  std::vector<double> edges;
  histcounts(z, n, n_bins, counts, edges);

  double max_count = 0.0;
  int num_maxs = 1;
  double out = 0.0;
  for (int i = 0; i < n_bins; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (counts[ui] > max_count) {
      max_count = counts[ui];
      num_maxs = 1;
      out = (edges[ui] + edges[ui + 1]) * 0.5;
    } else if (counts[ui] == max_count) {
      num_maxs += 1;
      out += (edges[ui] + edges[ui + 1]) * 0.5;
    }
  }
  return out / num_maxs;
}

double co_f1ecac(const double* z, std::size_t n) {
  const std::vector<double> ac = autocorr_full(z, n);
  const double thresh = 1.0 / std::exp(1.0);
  double out = static_cast<double>(n);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (ac[i + 1] < thresh) {
      const double m = ac[i + 1] - ac[i];
      const double dy = thresh - ac[i];
      out = static_cast<double>(i) + dy / m;
      return out;
    }
  }
  return out;
}

double co_first_min_ac(const double* z, std::size_t n) {
  const std::vector<double> ac = autocorr_full(z, n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (ac[i] < ac[i - 1] && ac[i] < ac[i + 1]) return static_cast<double>(i);
  }
  return static_cast<double>(n);
}

double co_histogram_ami_even_2_5(const double* z, std::size_t n) {
  constexpr std::size_t kTau = 2;
  constexpr int kBins = 5;
  const std::size_t m = n - kTau;

  std::vector<double> y1(m), y2(m);
  for (std::size_t i = 0; i < m; ++i) {
    y1[i] = z[i];
    y2[i] = z[i + kTau];
  }

  const double max_value = vec_max(z, n);
  const double min_value = vec_min(z, n);
  const double bin_step = (max_value - min_value + 0.2) / 5.0;
  double edges[kBins + 1];
  for (int i = 0; i <= kBins; ++i) edges[i] = min_value + bin_step * i - 0.1;

  const std::vector<int> bins1 = histbinassign(y1.data(), m, edges, kBins + 1);
  const std::vector<int> bins2 = histbinassign(y2.data(), m, edges, kBins + 1);

  // joint histogram via linearized symbol pairs, as in the reference
  std::vector<double> bins12(m);
  double edges12[(kBins + 1) * (kBins + 1)];
  for (std::size_t i = 0; i < m; ++i) {
    bins12[i] = (bins1[i] - 1) * (kBins + 1) + bins2[i];
  }
  for (int i = 0; i < (kBins + 1) * (kBins + 1); ++i) edges12[i] = i + 1;

  const std::vector<int> joint_linear =
      histcount_edges(bins12.data(), m, edges12, (kBins + 1) * (kBins + 1));

  double pij[kBins][kBins];
  int sum_bins = 0;
  for (int i = 0; i < kBins; ++i) {
    for (int j = 0; j < kBins; ++j) {
      pij[j][i] = joint_linear[static_cast<std::size_t>(i * (kBins + 1) + j)];
      sum_bins += static_cast<int>(pij[j][i]);
    }
  }
  for (int i = 0; i < kBins; ++i) {
    for (int j = 0; j < kBins; ++j) pij[j][i] /= sum_bins;
  }

  double pi[kBins] = {0}, pj[kBins] = {0};
  for (int i = 0; i < kBins; ++i) {
    for (int j = 0; j < kBins; ++j) {
      pi[i] += pij[i][j];
      pj[j] += pij[i][j];
    }
  }

  double ami = 0.0;
  for (int i = 0; i < kBins; ++i) {
    for (int j = 0; j < kBins; ++j) {
      if (pij[i][j] > 0.0) ami += pij[i][j] * std::log(pij[i][j] / (pj[j] * pi[i]));
    }
  }
  return ami;
}

double co_trev_1_num(const double* z, std::size_t n) {
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double diff = z[i + 1] - z[i];
    d[i] = diff * diff * diff;
  }
  return vec_mean(d.data(), n - 1);
}

double md_hrv_classic_pnn40(const double* z, std::size_t n) {
  double count = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::fabs(z[i + 1] - z[i]) * 1000.0 > 40.0) count += 1.0;
  }
  return count / static_cast<double>(n - 1);
}

double sb_binarystats_mean_longstretch1(const double* z, std::size_t n) {
  const double m = vec_mean(z, n);
  std::vector<int> bin(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) bin[i] = (z[i] - m <= 0.0) ? 0 : 1;

  long long max_stretch = 0, last = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (bin[i] == 0 || i == n - 2) {
      const long long stretch = static_cast<long long>(i) - last;
      if (stretch > max_stretch) max_stretch = stretch;
      last = static_cast<long long>(i);
    }
  }
  return static_cast<double>(max_stretch);
}

double sb_binarystats_diff_longstretch0(const double* z, std::size_t n) {
  std::vector<int> bin(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) bin[i] = (z[i + 1] - z[i] < 0.0) ? 0 : 1;

  long long max_stretch = 0, last = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (bin[i] == 1 || i == n - 2) {
      const long long stretch = static_cast<long long>(i) - last;
      if (stretch > max_stretch) max_stretch = stretch;
      last = static_cast<long long>(i);
    }
  }
  return static_cast<double>(max_stretch);
}

double sb_transition_matrix_3ac_sumdiagcov(const double* z, std::size_t n) {
  constexpr int kGroups = 3;
  const std::size_t tau = first_zero_ac(z, n, n);
  if (tau == 0) return std::numeric_limits<double>::quiet_NaN();

  const std::size_t n_down = (n - 1) / tau + 1;
  std::vector<double> down(n_down);
  for (std::size_t i = 0; i < n_down; ++i) down[i] = z[i * tau];

  const std::vector<int> symbols = coarsegrain_quantile(down.data(), n_down, kGroups);

  double t[kGroups][kGroups] = {};
  for (std::size_t j = 0; j + 1 < n_down; ++j) {
    t[symbols[j] - 1][symbols[j + 1] - 1] += 1.0;
  }
  for (auto& row : t) {
    for (double& v : row) v /= static_cast<double>(n_down - 1);
  }

  double columns[kGroups][kGroups];
  for (int i = 0; i < kGroups; ++i) {
    for (int c = 0; c < kGroups; ++c) columns[c][i] = t[i][c];
  }

  double sumdiag = 0.0;
  for (int c = 0; c < kGroups; ++c) {
    // sample covariance of the column with itself
    const double m = vec_mean(columns[c], kGroups);
    double cov = 0.0;
    for (int i = 0; i < kGroups; ++i) cov += (columns[c][i] - m) * (columns[c][i] - m);
    sumdiag += cov / (kGroups - 1);
  }
  return sumdiag;
}

double co_embed2_dist_tau_d_expfit_meandiff(const double* z, std::size_t n) {
  std::size_t tau = first_zero_ac(z, n, n);
  if (tau > n / 10) tau = n / 10;
  if (tau == 0 || n - tau < 2) return std::numeric_limits<double>::quiet_NaN();

  const std::size_t m = n - tau - 1;
  std::vector<double> d(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = z[i + 1] - z[i];
    const double b = z[i + tau] - z[i + tau + 1];
    d[i] = std::sqrt(a * a + b * b);
    if (std::isnan(d[i])) return std::numeric_limits<double>::quiet_NaN();
  }

  const double l = vec_mean(d.data(), m);
  const int n_bins = num_bins_auto(d.data(), m);
  if (n_bins == 0) return 0.0;

  std::vector<int> counts;
  std::vector<double> edges;
  histcounts(d.data(), m, n_bins, counts, edges);

  double out = 0.0;
  for (int i = 0; i < n_bins; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double observed = static_cast<double>(counts[ui]) / static_cast<double>(m);
    double expf = std::exp(-(edges[ui] + edges[ui + 1]) * 0.5 / l) / l;
    if (expf < 0.0) expf = 0.0;
    out += std::fabs(observed - expf);
  }
  return out / n_bins;
}

double in_automutualinfostats_40_gaussian_fmmi(const double* z, std::size_t n) {
  std::size_t tau = 40;
  const auto half = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n) / 2.0));
  if (tau > half) tau = half;

  std::vector<double> ami(tau);
  for (std::size_t i = 0; i < tau; ++i) {
    const double ac = autocorr_lag(z, n, i + 1);
    ami[i] = -0.5 * std::log(1.0 - ac * ac);
  }

  for (std::size_t i = 1; i + 1 < tau; ++i) {
    if (ami[i] < ami[i - 1] && ami[i] < ami[i + 1]) return static_cast<double>(i);
  }
  return static_cast<double>(tau);
}

std::vector<double> local_mean_residuals(const double* z, std::size_t n,
                                         std::size_t train_length) {
  std::vector<double> res(n - train_length);
  for (std::size_t i = 0; i < n - train_length; ++i) {
    double est = 0.0;
    for (std::size_t j = 0; j < train_length; ++j) est += z[i + j];
    est /= static_cast<double>(train_length);
    res[i] = z[i + train_length] - est;
  }
  return res;
}

double fc_local_simple_mean1_tauresrat(const double* z, std::size_t n) {
  const std::vector<double> res = local_mean_residuals(z, n, 1);
  const double res_fz =
      static_cast<double>(first_zero_ac(res.data(), res.size(), res.size()));
  const double y_fz = static_cast<double>(first_zero_ac(z, n, n));
  return res_fz / y_fz;
}

double fc_local_simple_mean3_stderr(const double* z, std::size_t n) {
  if (n < 5) return std::numeric_limits<double>::quiet_NaN();
  const std::vector<double> res = local_mean_residuals(z, n, 3);
  return vec_stddev(res.data(), res.size());
}

double dn_outlier_include_np_001_mdrmd(const double* z, std::size_t n, double sign) {
  const double inc = 0.01;
  std::vector<double> work(n);
  bool constant = true;
  long long tot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] != z[0]) constant = false;
    work[i] = sign * z[i];
    if (work[i] >= 0.0) ++tot;
  }
  if (constant) return 0.0;

  const double max_val = vec_max(work.data(), n);
  if (max_val < inc) return 0.0;

  const auto n_thresh = static_cast<std::size_t>(max_val / inc + 1.0);
  std::vector<double> high_indices(n);
  std::vector<double> ms_dti1(n_thresh), ms_dti3(n_thresh), ms_dti4(n_thresh);

  for (std::size_t j = 0; j < n_thresh; ++j) {
    std::size_t high_size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (work[i] >= static_cast<double>(j) * inc) {
        high_indices[high_size++] = static_cast<double>(i) + 1.0;
      }
    }
    std::vector<double> gaps(high_size > 0 ? high_size - 1 : 0);
    for (std::size_t i = 0; i + 1 < high_size; ++i) {
      gaps[i] = high_indices[i + 1] - high_indices[i];
    }
    ms_dti1[j] = gaps.empty() ? std::numeric_limits<double>::quiet_NaN()
                              : vec_mean(gaps.data(), gaps.size());
    ms_dti3[j] = (static_cast<double>(high_size) - 1.0) * 100.0 /
                 static_cast<double>(tot);
    ms_dti4[j] = vec_median(high_indices.data(), high_size) /
                     (static_cast<double>(n) / 2.0) -
                 1.0;
  }

  const double trim_thr = 2.0;
  std::size_t mj = 0, fbi = n_thresh - 1;
  for (std::size_t i = 0; i < n_thresh; ++i) {
    if (ms_dti3[i] > trim_thr) mj = i;
    if (std::isnan(ms_dti1[n_thresh - 1 - i])) fbi = n_thresh - 1 - i;
  }

  const std::size_t trim_limit = std::min(mj, fbi);
  return vec_median(ms_dti4.data(), trim_limit + 1);
}

// Welch periodogram, rectangular window over the whole series, NFFT padded
// to the next power of two, one-sided with interior bins doubled.
void welch_rect(const double* y, std::size_t n, std::vector<double>& pxx,
                std::vector<double>& freq) {
  const std::size_t n_fft = next_pow2(n);
  const double df = 1.0 / static_cast<double>(n_fft);
  const double m = vec_mean(y, n);

  // k = floor(n / (n/2)) - 1 == 1: a single full-length segment
  std::vector<double> ones(n, 1.0);
  const double kmu = std::pow(vec_norm(ones.data(), n), 2.0);

  std::vector<std::complex<double>> f(n_fft, {0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) f[i] = {y[i] - m, 0.0};
  ref_fft(f);

  const std::size_t n_out = n_fft / 2 + 1;
  pxx.resize(n_out);
  freq.resize(n_out);
  for (std::size_t i = 0; i < n_out; ++i) {
    pxx[i] = std::norm(f[i]) / kmu;
    if (i > 0 && i < n_out - 1) pxx[i] *= 2.0;
    freq[i] = static_cast<double>(i) * df;
  }
}

double sp_summaries_welch_rect(const double* z, std::size_t n, bool centroid) {
  std::vector<double> s, freq;
  welch_rect(z, n, s, freq);
  const std::size_t n_welch = s.size();

  constexpr double kPi = 3.141592653589793238462643383279502884;
  std::vector<double> w(n_welch), sw(n_welch);
  for (std::size_t i = 0; i < n_welch; ++i) {
    w[i] = 2.0 * kPi * freq[i];
    sw[i] = s[i] / (2.0 * kPi);
    if (std::isinf(sw[i])) return 0.0;
  }
  const double dw = w[1] - w[0];

  if (centroid) {
    std::vector<double> cs(n_welch);
    cs[0] = sw[0];
    for (std::size_t i = 1; i < n_welch; ++i) cs[i] = cs[i - 1] + sw[i];
    const double thresh = cs[n_welch - 1] * 0.5;
    for (std::size_t i = 0; i < n_welch; ++i) {
      if (cs[i] > thresh) return w[i];
    }
    return 0.0;
  }

  double area = 0.0;
  for (std::size_t i = 0; i < n_welch / 5; ++i) area += sw[i];
  return area * dw;
}

double sc_fluct_anal_2_50_1_logi_prop_r1(const double* z, std::size_t n,
                                         std::size_t lag, bool rs_range_fit) {
  const double lin_low = std::log(5.0);
  const double lin_high = std::log(static_cast<double>(n / 2));
  constexpr int kSteps = 50;
  const double step = (lin_high - lin_low) / (kSteps - 1);

  int tau[kSteps];
  for (int i = 0; i < kSteps; ++i) {
    tau[i] = static_cast<int>(std::round(std::exp(lin_low + i * step)));
  }

  // de-duplicate in place, preserving the reference's shift semantics
  int n_tau = kSteps;
  for (int i = 0; i < kSteps - 1; ++i) {
    while (tau[i] == tau[i + 1] && i < n_tau - 1) {
      for (int j = i + 1; j < kSteps - 1; ++j) tau[j] = tau[j + 1];
      n_tau -= 1;
    }
  }
  if (n_tau < 12) return 0.0;

  const std::size_t size_cs = n / lag;
  std::vector<double> cs(size_cs);
  cs[0] = z[0];
  for (std::size_t i = 0; i + 1 < size_cs; ++i) {
    cs[i + 1] = cs[i] + z[(i + 1) * lag];
  }

  const auto max_tau = static_cast<std::size_t>(tau[n_tau - 1]);
  std::vector<double> x_reg(max_tau);
  for (std::size_t i = 0; i < max_tau; ++i) x_reg[i] = static_cast<double>(i) + 1.0;

  std::vector<double> fluct(static_cast<std::size_t>(n_tau));
  for (int ti = 0; ti < n_tau; ++ti) {
    const auto t = static_cast<std::size_t>(tau[ti]);
    const std::size_t n_buffer = size_cs / t;
    std::vector<double> buffer(t);
    double f_acc = 0.0;
    for (std::size_t j = 0; j < n_buffer; ++j) {
      double m = 0.0, b = 0.0;
      linreg(t, x_reg.data(), cs.data() + j * t, &m, &b);
      for (std::size_t k = 0; k < t; ++k) {
        buffer[k] = cs[j * t + k] - (m * (static_cast<double>(k) + 1.0) + b);
      }
      if (rs_range_fit) {
        const double range = vec_max(buffer.data(), t) - vec_min(buffer.data(), t);
        f_acc += range * range;
      } else {
        for (std::size_t k = 0; k < t; ++k) f_acc += buffer[k] * buffer[k];
      }
    }
    fluct[static_cast<std::size_t>(ti)] =
        rs_range_fit ? std::sqrt(f_acc / static_cast<double>(n_buffer))
                     : std::sqrt(f_acc / (static_cast<double>(n_buffer) *
                                          static_cast<double>(t)));
  }

  const auto ntt = static_cast<std::size_t>(n_tau);
  std::vector<double> logtt(ntt), logff(ntt);
  for (std::size_t i = 0; i < ntt; ++i) {
    logtt[i] = std::log(static_cast<double>(tau[i]));
    logff[i] = std::log(fluct[i]);
  }

  constexpr std::size_t kMinPoints = 6;
  const std::size_t nsserr = ntt - 2 * kMinPoints + 1;
  std::vector<double> sserr(nsserr);
  std::vector<double> buffer(ntt - kMinPoints + 1);
  for (std::size_t i = kMinPoints; i < ntt - kMinPoints + 1; ++i) {
    double m1 = 0.0, b1 = 0.0, m2 = 0.0, b2 = 0.0;
    linreg(i, logtt.data(), logff.data(), &m1, &b1);
    linreg(ntt - i + 1, logtt.data() + i - 1, logff.data() + i - 1, &m2, &b2);

    for (std::size_t j = 0; j < i; ++j) buffer[j] = logtt[j] * m1 + b1 - logff[j];
    double err = vec_norm(buffer.data(), i);
    for (std::size_t j = 0; j < ntt - i + 1; ++j) {
      buffer[j] = logtt[j + i - 1] * m2 + b2 - logff[j + i - 1];
    }
    err += vec_norm(buffer.data(), ntt - i + 1);
    sserr[i - kMinPoints] = err;
  }

  double first_min_ind = 0.0;
  const double minimum = vec_min(sserr.data(), nsserr);
  for (std::size_t i = 0; i < nsserr; ++i) {
    if (sserr[i] == minimum) {
      first_min_ind = static_cast<double>(i + kMinPoints - 1);
      break;
    }
  }
  return (first_min_ind + 1.0) / static_cast<double>(ntt);
}

double sb_motif_three_quantile_hh(const double* z, std::size_t n) {
  constexpr int kAlphabet = 3;
  std::vector<int> yt = coarsegrain_quantile(z, n, kAlphabet);

  // index lists per symbol, trimming a final-position occurrence since a
  // successor symbol is needed
  std::vector<std::vector<int>> r1(kAlphabet);
  for (int i = 0; i < kAlphabet; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (yt[j] == i + 1) r1[static_cast<std::size_t>(i)].push_back(static_cast<int>(j));
    }
  }
  for (auto& v : r1) {
    if (!v.empty() && v.back() == static_cast<int>(n) - 1) v.pop_back();
  }

  double hh = 0.0;
  for (int i = 0; i < kAlphabet; ++i) {
    double row[kAlphabet];
    for (int j = 0; j < kAlphabet; ++j) {
      int count = 0;
      for (int idx : r1[static_cast<std::size_t>(i)]) {
        if (yt[static_cast<std::size_t>(idx) + 1] == j + 1) ++count;
      }
      row[j] = static_cast<double>(count) / (static_cast<double>(n) - 1.0);
    }
    hh += f_entropy(row, kAlphabet);
  }
  return hh;
}

// ---------------------------------------------------------------------------
// cubic spline fit with three breakpoints (ends and midpoint), used by the
// periodicity feature to detrend. Port of the fixed-size SPLINEFIT scheme
// from the reference, including its unpivoted normal-equation solve.

constexpr int kDeg = 3;
constexpr int kSpline = 4;
constexpr int kPieces = 2;
constexpr int kPiecesExt = 8;

void gauss_elimination(int size, double* a, double* b, double* x) {
  std::vector<std::vector<double>> elim(static_cast<std::size_t>(size),
                                        std::vector<double>(static_cast<std::size_t>(size)));
  std::vector<double> be(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      elim[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a[i * size + j];
    }
    be[static_cast<std::size_t>(i)] = b[i];
  }
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      const double factor = elim[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] /
                            elim[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
      be[static_cast<std::size_t>(j)] -= factor * be[static_cast<std::size_t>(i)];
      for (int k = i; k < size; ++k) {
        elim[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -=
            factor * elim[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      }
    }
  }
  for (int i = size - 1; i >= 0; --i) {
    double acc = be[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j) {
      acc -= x[j] * elim[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    x[i] = acc / elim[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  }
}

void lsq_solve(std::size_t rows, int cols, const double* a, const double* b, double* x) {
  std::vector<double> at(static_cast<std::size_t>(cols) * rows);
  std::vector<double> ata(static_cast<std::size_t>(cols) * static_cast<std::size_t>(cols));
  std::vector<double> atb(static_cast<std::size_t>(cols));

  for (std::size_t i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      at[static_cast<std::size_t>(j) * rows + i] = a[i * static_cast<std::size_t>(cols) +
                                                     static_cast<std::size_t>(j)];
    }
  }
  for (int i = 0; i < cols; ++i) {
    for (int j = 0; j < cols; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < rows; ++k) {
        acc += at[static_cast<std::size_t>(i) * rows + k] *
               a[k * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)];
      }
      ata[static_cast<std::size_t>(i * cols + j)] = acc;
    }
  }
  for (int i = 0; i < cols; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < rows; ++k) {
      acc += at[static_cast<std::size_t>(i) * rows + k] * b[k];
    }
    atb[static_cast<std::size_t>(i)] = acc;
  }
  gauss_elimination(cols, ata.data(), atb.data(), x);
}

void splinefit(const double* y, std::size_t size, double* y_out) {
  const int n = static_cast<int>(size);
  int breaks[3] = {0, static_cast<int>(std::floor(static_cast<double>(n) / 2.0)) - 1,
                   n - 1};

  const int h0[2] = {breaks[1] - breaks[0], breaks[2] - breaks[1]};
  const int h_copy[4] = {h0[0], h0[1], h0[0], h0[1]};

  const int hl[kDeg] = {h_copy[3], h_copy[2], h_copy[1]};
  int hl_cs[kDeg];
  hl_cs[0] = hl[0];
  for (int i = 1; i < kDeg; ++i) hl_cs[i] = hl_cs[i - 1] + hl[i];
  int bl[kDeg];
  for (int i = 0; i < kDeg; ++i) bl[i] = breaks[0] - hl_cs[i];

  const int hr[kDeg] = {h_copy[0], h_copy[1], h_copy[2]};
  int hr_cs[kDeg];
  hr_cs[0] = hr[0];
  for (int i = 1; i < kDeg; ++i) hr_cs[i] = hr_cs[i - 1] + hr[i];
  int br[kDeg];
  for (int i = 0; i < kDeg; ++i) br[i] = breaks[2] + hr_cs[i];

  int breaks_ext[3 * kDeg];
  for (int i = 0; i < kDeg; ++i) {
    breaks_ext[i] = bl[kDeg - 1 - i];
    breaks_ext[i + 3] = breaks[i];
    breaks_ext[i + 6] = br[i];
  }
  int h_ext[3 * kDeg - 1];
  for (int i = 0; i < 3 * kDeg - 1; ++i) h_ext[i] = breaks_ext[i + 1] - breaks_ext[i];

  double coefs[kSpline * kPiecesExt][kSpline] = {};
  for (int i = 0; i < kSpline * kPiecesExt; i += kSpline) coefs[i][0] = 1.0;

  int ii[kDeg + 1][kPiecesExt];
  for (int c = 0; c < kPiecesExt; ++c) {
    for (int r = 0; r <= kDeg; ++r) ii[r][c] = std::min(r + c, kPiecesExt - 1);
  }

  double h_expanded[kSpline * kPiecesExt];
  for (int i = 0; i < kSpline * kPiecesExt; ++i) {
    h_expanded[i] = h_ext[ii[i % kSpline][i / kSpline]];
  }

  double q[kSpline][kPiecesExt];
  for (int k = 1; k < kSpline; ++k) {
    for (int j = 0; j < k; ++j) {
      for (int l = 0; l < kSpline * kPiecesExt; ++l) {
        coefs[l][j] *= h_expanded[l] / (k - j);
      }
    }
    for (int l = 0; l < kSpline * kPiecesExt; ++l) {
      double acc = 0.0;
      for (int m = 0; m < kSpline; ++m) acc += coefs[l][m];
      q[l % kSpline][l / kSpline] = acc;
    }
    for (int l = 0; l < kPiecesExt; ++l) {
      for (int m = 1; m < kSpline; ++m) q[m][l] += q[m - 1][l];
    }
    for (int l = 0; l < kSpline * kPiecesExt; ++l) {
      coefs[l][k] = (l % kSpline == 0) ? 0.0 : q[l % kSpline - 1][l / kSpline];
    }
    double fmax[kSpline * kPiecesExt];
    for (int i = 0; i < kPiecesExt; ++i) {
      for (int j = 0; j < kSpline; ++j) fmax[i * kSpline + j] = q[kSpline - 1][i];
    }
    for (int j = 0; j <= k; ++j) {
      for (int l = 0; l < kSpline * kPiecesExt; ++l) coefs[l][j] /= fmax[l];
    }
    for (int i = 0; i < kSpline * kPiecesExt - kDeg; ++i) {
      for (int j = 0; j <= k; ++j) coefs[i][j] -= coefs[kDeg + i][j];
    }
    for (int i = 0; i < kSpline * kPiecesExt; i += kSpline) coefs[i][k] = 0.0;
  }

  double scale[kSpline * kPiecesExt];
  for (double& s : scale) s = 1.0;
  for (int k = 0; k < kSpline - 1; ++k) {
    for (int i = 0; i < kSpline * kPiecesExt; ++i) scale[i] /= h_expanded[i];
    for (int i = 0; i < kSpline * kPiecesExt; ++i) {
      coefs[i][(kSpline - 1) - (k + 1)] *= scale[i];
    }
  }

  int jj[kSpline][kPieces];
  for (int i = 0; i < kSpline; ++i) {
    for (int j = 0; j < kPieces; ++j) jj[i][j] = (i == 0) ? kSpline * (1 + j) : kDeg;
  }
  for (int i = 1; i < kSpline; ++i) {
    for (int j = 0; j < kPieces; ++j) jj[i][j] += jj[i - 1][j];
  }

  double coefs_out[kSpline * kPieces][kSpline];
  for (int i = 0; i < kSpline * kPieces; ++i) {
    const int flat = jj[i % kSpline][i / kSpline] - 1;
    for (int j = 0; j < kSpline; ++j) coefs_out[i][j] = coefs[flat][j];
  }

  std::vector<int> xs_b(size * kSpline), index_b(size * kSpline);
  int break_ind = 1;
  for (int i = 0; i < n; ++i) {
    if (i >= breaks[break_ind] && break_ind < 2) break_ind += 1;
    for (int j = 0; j < kSpline; ++j) {
      xs_b[static_cast<std::size_t>(i * kSpline + j)] = i - breaks[break_ind - 1];
      index_b[static_cast<std::size_t>(i * kSpline + j)] = j + (break_ind - 1) * kSpline;
    }
  }

  std::vector<double> v_b(size * kSpline);
  for (std::size_t i = 0; i < size * kSpline; ++i) {
    v_b[i] = coefs_out[index_b[i]][0];
  }
  for (int k = 1; k < kSpline; ++k) {
    for (std::size_t j = 0; j < size * kSpline; ++j) {
      v_b[j] = v_b[j] * xs_b[j] + coefs_out[index_b[j]][k];
    }
  }

  std::vector<double> a(size * (kSpline + 1), 0.0);
  break_ind = 0;
  for (std::size_t i = 0; i < kSpline * size; ++i) {
    if (static_cast<int>(i) / kSpline >= breaks[1]) break_ind = 1;
    a[(i % kSpline) + static_cast<std::size_t>(break_ind) +
      (i / kSpline) * (kSpline + 1)] = v_b[i];
  }

  double x[kSpline + 1] = {};
  lsq_solve(size, kSpline + 1, a.data(), y, x);

  double c[kPieces + kSpline - 1][kSpline * kPieces] = {};
  for (int i = 0; i < kSpline * kSpline * kPieces; ++i) {
    const int c_row = i % kSpline + (i / kSpline) % 2;
    const int c_col = i / kSpline;
    const int coef_row = i % (kSpline * 2);
    const int coef_col = i / (kSpline * 2);
    c[c_row][c_col] = coefs_out[coef_row][coef_col];
  }

  double coefs_spline[kPieces][kSpline] = {};
  for (int j = 0; j < kSpline * kPieces; ++j) {
    const int coef_col = j / kPieces;
    const int coef_row = j % kPieces;
    for (int i = 0; i < kSpline + 1; ++i) {
      coefs_spline[coef_row][coef_col] += c[i][j] * x[i];
    }
  }

  for (int i = 0; i < n; ++i) {
    const int half = i < breaks[1] ? 0 : 1;
    y_out[i] = coefs_spline[half][0];
  }
  for (int k = 1; k < kSpline; ++k) {
    for (int j = 0; j < n; ++j) {
      const int half = j < breaks[1] ? 0 : 1;
      y_out[j] = y_out[j] * (j - breaks[1] * half) + coefs_spline[half][k];
    }
  }
}

double pd_periodicity_wang_th0_01(const double* z, std::size_t n) {
  const double th = 0.01;

  std::vector<double> spline(n);
  splinefit(z, n, spline.data());

  std::vector<double> sub(n);
  for (std::size_t i = 0; i < n; ++i) sub[i] = z[i] - spline[i];

  const auto acmax = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n) / 3.0));
  std::vector<double> acf(acmax);
  for (std::size_t tau = 1; tau <= acmax; ++tau) {
    acf[tau - 1] = autocov_lag(sub.data(), n, tau);
  }

  std::vector<std::size_t> troughs, peaks;
  for (std::size_t i = 1; i + 1 < acmax; ++i) {
    const double slope_in = acf[i] - acf[i - 1];
    const double slope_out = acf[i + 1] - acf[i];
    if (slope_in < 0.0 && slope_out > 0.0) {
      troughs.push_back(i);
    } else if (slope_in > 0.0 && slope_out < 0.0) {
      peaks.push_back(i);
    }
  }

  for (std::size_t pi = 0; pi < peaks.size(); ++pi) {
    const std::size_t i_peak = peaks[pi];
    const double the_peak = acf[i_peak];
    long long j = -1;
    while (j + 1 < static_cast<long long>(troughs.size()) &&
           troughs[static_cast<std::size_t>(j + 1)] < i_peak) {
      ++j;
    }
    if (j == -1) continue;
    const double the_trough = acf[troughs[static_cast<std::size_t>(j)]];
    if (the_peak - the_trough < th) continue;
    if (the_peak < 0.0) continue;
    return static_cast<double>(i_peak);
  }
  return 0.0;
}

}  // namespace

const std::array<std::string, kNumCatch22>& catch22_feature_names() {
  static const std::array<std::string, kNumCatch22> names = {
      "DN_HistogramMode_5",
      "DN_HistogramMode_10",
      "CO_f1ecac",
      "CO_FirstMin_ac",
      "CO_HistogramAMI_even_2_5",
      "CO_trev_1_num",
      "MD_hrv_classic_pnn40",
      "SB_BinaryStats_mean_longstretch1",
      "SB_TransitionMatrix_3ac_sumdiagcov",
      "PD_PeriodicityWang_th0_01",
      "CO_Embed2_Dist_tau_d_expfit_meandiff",
      "IN_AutoMutualInfoStats_40_gaussian_fmmi",
      "FC_LocalSimple_mean1_tauresrat",
      "DN_OutlierInclude_p_001_mdrmd",
      "DN_OutlierInclude_n_001_mdrmd",
      "SP_Summaries_welch_rect_area_5_1",
      "SB_BinaryStats_diff_longstretch0",
      "SB_MotifThree_quantile_hh",
      "SC_FluctAnal_2_rsrangefit_50_1_logi_prop_r1",
      "SC_FluctAnal_2_dfa_50_1_2_logi_prop_r1",
      "SP_Summaries_welch_rect_centroid",
      "FC_LocalSimple_mean3_stderr",
  };
  return names;
}

std::array<double, kNumCatch22> catch22(std::span<const double> series) {
  const std::size_t n = series.size();
  require(n >= 2, "catch22: series must have at least 2 samples");

  // z-score with sample std; a constant series degenerates to NaN and every
  // feature then falls under the NaN-to-0 policy
  std::vector<double> z(n);
  const double m = vec_mean(series.data(), n);
  const double sd = vec_stddev(series.data(), n);
  for (std::size_t i = 0; i < n; ++i) z[i] = (series[i] - m) / sd;

  std::array<double, kNumCatch22> out{};
  bool has_nan = false;
  for (double v : z) {
    if (std::isnan(v)) {
      has_nan = true;
      break;
    }
  }

  if (!has_nan) {
    const double* zp = z.data();
    out[0] = dn_histogram_mode(zp, n, 5);
    out[1] = dn_histogram_mode(zp, n, 10);
    out[2] = co_f1ecac(zp, n);
    out[3] = co_first_min_ac(zp, n);
    out[4] = n > 2 ? co_histogram_ami_even_2_5(zp, n)
                   : std::numeric_limits<double>::quiet_NaN();
    out[5] = co_trev_1_num(zp, n);
    out[6] = md_hrv_classic_pnn40(zp, n);
    out[7] = sb_binarystats_mean_longstretch1(zp, n);
    out[8] = sb_transition_matrix_3ac_sumdiagcov(zp, n);
    out[9] = n >= 4 ? pd_periodicity_wang_th0_01(zp, n)
                    : std::numeric_limits<double>::quiet_NaN();
    out[10] = co_embed2_dist_tau_d_expfit_meandiff(zp, n);
    out[11] = in_automutualinfostats_40_gaussian_fmmi(zp, n);
    out[12] = fc_local_simple_mean1_tauresrat(zp, n);
    out[13] = dn_outlier_include_np_001_mdrmd(zp, n, 1.0);
    out[14] = dn_outlier_include_np_001_mdrmd(zp, n, -1.0);
    out[15] = sp_summaries_welch_rect(zp, n, false);
    out[16] = sb_binarystats_diff_longstretch0(zp, n);
    out[17] = sb_motif_three_quantile_hh(zp, n);
    out[18] = sc_fluct_anal_2_50_1_logi_prop_r1(zp, n, 1, true);
    out[19] = sc_fluct_anal_2_50_1_logi_prop_r1(zp, n, 2, false);
    out[20] = sp_summaries_welch_rect(zp, n, true);
    out[21] = fc_local_simple_mean3_stderr(zp, n);
  } else {
    out.fill(std::numeric_limits<double>::quiet_NaN());
  }

  for (double& v : out) {
    if (!std::isfinite(v)) v = 0.0;
  }
  return out;
}

FeatureVector c22_24(std::span<const double> series) {
  const auto feats = catch22(series);

  const std::size_t n = series.size();
  const double m = vec_mean(series.data(), n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) var += (series[i] - m) * (series[i] - m);
  const double sd = std::sqrt(var / static_cast<double>(n));  // population

  FeatureVector out;
  out.scheme = FeatureScheme::kC22_24;
  out.values.assign(feats.begin(), feats.end());
  out.values.push_back(m);
  out.values.push_back(sd);
  return out;
}

}  // namespace mvox
