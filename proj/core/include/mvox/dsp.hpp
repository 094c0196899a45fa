// core/include/mvox/dsp.hpp

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

#ifndef MVOX_DSP_HPP
#define MVOX_DSP_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "mvox/matrix.hpp"

namespace mvox {

struct AudioBuffer {
  std::vector<double> samples;
  double sample_rate = 0.0;  // Hz
};

enum class WindowFn { kHann, kRectangular };

// Short-time analysis parameterization. The presets below mirror the
// front-end settings of the pre-trained models whose embeddings this
// toolkit ingests, so locally computed spectrograms line up with them.
struct LogMelConfig {
  double sample_rate = 16000.0;
  std::size_t window_len = 1024;  // samples
  std::size_t hop_len = 160;      // samples
  std::size_t n_mels = 64;
  double fmin = 0.0;
  double fmax = 8000.0;
  WindowFn window_fn = WindowFn::kHann;
  double log_floor = 1e-10;

  void validate() const;
};

// 16 kHz input, 64 ms window, 10 ms hop, mel span 60-7800 Hz.
LogMelConfig byol_a_preset();

// Bandwidth regime in {4, 8, 16} kHz (Nyquist of the model family's input
// rate). 16 kHz bandwidth: 32 kHz rate, window 1024, hop 320; window and
// hop halve with the bandwidth. Mel span 50 Hz to Nyquist.
LogMelConfig pann_preset(int bandwidth_khz);

// One-sided complex STFT, n_bins = window_len/2 + 1 per frame.
struct ComplexSpectrogram {
  std::size_t n_frames = 0;
  std::size_t n_bins = 0;
  std::size_t window_len = 0;
  double sample_rate = 0.0;
  std::vector<std::complex<double>> data;  // row-major frames x bins

  std::complex<double>& at(std::size_t frame, std::size_t bin) {
    return data[frame * n_bins + bin];
  }
  std::complex<double> at(std::size_t frame, std::size_t bin) const {
    return data[frame * n_bins + bin];
  }
  double bin_hz(std::size_t bin) const {
    return static_cast<double>(bin) * sample_rate / static_cast<double>(window_len);
  }
};

struct MelSpectrogram {
  Matrix frames;  // n_frames x n_mels, log-energies
  LogMelConfig config;
};

// Per-class frequency profile: time-averaged magnitude spectrum, mean and
// spread across a class's segments, low bins nulled, peak-normalized.
struct ClassSpectrum {
  int class_id = -1;
  std::vector<double> mean;
  std::vector<double> std_dev;
  std::vector<double> bin_hz;
};

// Band-limited windowed-sinc resampling; output length is
// round(len * target / source). Equal rates return the input unchanged.
AudioBuffer resample(const AudioBuffer& audio, double target_rate);

// Frames are centered: the signal is reflect-padded by window_len/2 on each
// side, so n_frames = 1 + floor((padded_len - window_len) / hop_len).
// Inputs shorter than one window are zero-padded to one window first.
ComplexSpectrogram stft(const AudioBuffer& audio, const LogMelConfig& config);

// Triangular unit-peak filters on the HTK mel scale
// (mel = 2595 log10(1 + f/700)), rows = mels, cols = FFT bins.
Matrix mel_filterbank(const LogMelConfig& config);

// Filterbank energies of the power spectrum, before the log.
Matrix mel_energies(const ComplexSpectrogram& spec, const LogMelConfig& config);

// log(energy + log_floor), natural log.
MelSpectrogram log_mel(const ComplexSpectrogram& spec, const LogMelConfig& config);

// Magnitude spectrum of each segment averaged over frames, then mean/std
// across segments; bins below min_hz are zeroed and the mean is rescaled to
// peak 1 (std by the same factor).
ClassSpectrum mean_spectrum(const std::vector<AudioBuffer>& segments, int class_id,
                            const LogMelConfig& config, double min_hz = 500.0);

// CSV export, header "bin_hz,mean,std".
void write_class_spectrum_csv(const ClassSpectrum& spectrum, const std::string& path);

}  // namespace mvox

#endif  // MVOX_DSP_HPP
