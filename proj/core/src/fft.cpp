// core/src/fft.cpp

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

#include "mvox/fft.hpp"

#include <cmath>

namespace mvox {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 decimation-in-time. sign = -1 forward, +1 inverse
// (without the 1/N factor).
void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  if (n <= 1) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Bluestein: expresses an arbitrary-length DFT as a convolution, which is
// evaluated with a power-of-two FFT. Exact DFT semantics for any n.
void fft_bluestein(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  const std::size_t m = next_pow2(2 * n + 1);

  std::vector<std::complex<double>> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    // angle = pi * k^2 / n, k^2 reduced mod 2n to keep it well-conditioned
    const std::size_t k2 = (k * k) % (2 * n);
    const double ang = sign * kPi * static_cast<double>(k2) / static_cast<double>(n);
    w[k] = {std::cos(ang), std::sin(ang)};
  }

  std::vector<std::complex<double>> x(m, {0.0, 0.0});
  std::vector<std::complex<double>> y(m, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * w[k];
  y[0] = std::conj(w[0]);
  for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(w[k]);

  fft_pow2(x, -1);
  fft_pow2(y, -1);
  for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
  fft_pow2(x, +1);
  const double inv_m = 1.0 / static_cast<double>(m);

  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * inv_m * w[k];
}

void transform(std::vector<std::complex<double>>& a, int sign) {
  if (a.size() <= 1) return;
  if (is_pow2(a.size())) {
    fft_pow2(a, sign);
  } else {
    fft_bluestein(a, sign);
  }
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft(std::vector<std::complex<double>>& a) { transform(a, -1); }

void ifft(std::vector<std::complex<double>>& a) {
  transform(a, +1);
  const double inv_n = 1.0 / static_cast<double>(a.size());
  for (auto& v : a) v *= inv_n;
}

std::vector<std::complex<double>> real_dft(const std::vector<double>& x) {
  std::vector<std::complex<double>> a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = {x[i], 0.0};
  fft(a);
  a.resize(x.size() / 2 + 1);
  return a;
}

}  // namespace mvox
