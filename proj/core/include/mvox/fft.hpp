// core/include/mvox/fft.hpp

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

#ifndef MVOX_FFT_HPP
#define MVOX_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace mvox {

// Forward DFT, any length: radix-2 Cooley-Tukey for powers of two,
// Bluestein's chirp-z transform otherwise.
void fft(std::vector<std::complex<double>>& a);

// Inverse DFT (includes the 1/N factor).
void ifft(std::vector<std::complex<double>>& a);

// DFT of a real signal; returns the n/2+1 non-redundant bins.
std::vector<std::complex<double>> real_dft(const std::vector<double>& x);

std::size_t next_pow2(std::size_t n);

}  // namespace mvox

#endif  // MVOX_FFT_HPP
