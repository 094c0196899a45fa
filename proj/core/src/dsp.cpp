// core/src/dsp.cpp

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

#include "mvox/dsp.hpp"

#include <cmath>
#include <fstream>

#include "mvox/common.hpp"
#include "mvox/csv.hpp"
#include "mvox/fft.hpp"

namespace mvox {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

double modified_bessel_i0(double x) {
  // power series; converges fast for the window arguments used here
  double sum = 1.0, term = 1.0;
  const double x2 = x * x / 4.0;
  for (int k = 1; k < 64; ++k) {
    term *= x2 / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

std::vector<double> make_window(WindowFn fn, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (fn == WindowFn::kHann) {
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) /
                                   static_cast<double>(n)));
    }
  }
  return w;
}

// Reflect-padded sample access; pad regions mirror without repeating the
// edge sample. Falls back to edge clamping for out-of-range reflections
// (only reachable for signals shorter than the pad, which stft() prevents
// by zero-padding to one window first).
double padded_sample(const std::vector<double>& x, long long idx) {
  const long long n = static_cast<long long>(x.size());
  if (idx < 0) idx = -idx;
  if (idx >= n) idx = 2 * (n - 1) - idx;
  if (idx < 0) idx = 0;
  if (idx >= n) idx = n - 1;
  return x[static_cast<std::size_t>(idx)];
}

}  // namespace

void LogMelConfig::validate() const {
  require(sample_rate > 0.0, "LogMelConfig: sample_rate must be positive");
  require(window_len >= 2, "LogMelConfig: window_len must be >= 2");
  require(hop_len >= 1 && hop_len <= window_len,
          "LogMelConfig: need 0 < hop_len <= window_len");
  require(n_mels >= 1, "LogMelConfig: n_mels must be >= 1");
  require(fmin >= 0.0 && fmin < fmax && fmax <= sample_rate / 2.0,
          "LogMelConfig: need 0 <= fmin < fmax <= Nyquist");
  require(log_floor > 0.0, "LogMelConfig: log_floor must be positive");
}

LogMelConfig byol_a_preset() {
  LogMelConfig c;
  c.sample_rate = 16000.0;
  c.window_len = 1024;  // 64 ms
  c.hop_len = 160;      // 10 ms
  c.n_mels = 64;
  c.fmin = 60.0;
  c.fmax = 7800.0;
  return c;
}

LogMelConfig pann_preset(int bandwidth_khz) {
  LogMelConfig c;
  c.n_mels = 64;
  c.fmin = 50.0;
  switch (bandwidth_khz) {
    case 16:
      c.sample_rate = 32000.0;
      c.window_len = 1024;
      c.hop_len = 320;
      break;
    case 8:
      c.sample_rate = 16000.0;
      c.window_len = 512;
      c.hop_len = 160;
      break;
    case 4:
      c.sample_rate = 8000.0;
      c.window_len = 256;
      c.hop_len = 80;
      break;
    default:
      throw InvalidArgument("pann_preset: bandwidth must be 4, 8 or 16 kHz");
  }
  c.fmax = c.sample_rate / 2.0;
  return c;
}

AudioBuffer resample(const AudioBuffer& audio, double target_rate) {
  require(target_rate > 0.0, "resample: target rate must be positive");
  require(audio.sample_rate > 0.0, "resample: source rate must be positive");
  if (target_rate == audio.sample_rate) return audio;

  const double ratio = target_rate / audio.sample_rate;
  const std::size_t n_in = audio.samples.size();
  const auto n_out = static_cast<std::size_t>(
      std::llround(static_cast<double>(n_in) * ratio));

  AudioBuffer out;
  out.sample_rate = target_rate;
  out.samples.assign(n_out, 0.0);
  if (n_in == 0 || n_out == 0) return out;

  // Kaiser-windowed sinc, 32 zero crossings per side at the anti-alias
  // scale; cutoff sits just under the narrower Nyquist. The windowed-sinc
  // kernel is tabulated once per call and linearly interpolated per tap.
  const double scale = std::min(1.0, ratio);
  const double cutoff = 0.975 * scale;
  const double beta = 9.6;
  const double inv_i0_beta = 1.0 / modified_bessel_i0(beta);
  const int zeros = 32;
  const double half_width = static_cast<double>(zeros) / cutoff;

  constexpr std::size_t kTableRes = 1024;  // kernel samples per sinc zero crossing
  std::vector<double> kernel(static_cast<std::size_t>(zeros) * kTableRes + 2, 0.0);
  for (std::size_t i = 0; i + 1 < kernel.size(); ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(kTableRes);
    const double frac = u / static_cast<double>(zeros);
    const double arg = 1.0 - frac * frac;
    if (arg < 0.0) continue;
    const double w = modified_bessel_i0(beta * std::sqrt(arg)) * inv_i0_beta;
    kernel[i] = sinc(u) * w;
  }

  auto kernel_at = [&](double u) {
    const double pos = u * static_cast<double>(kTableRes);
    const auto idx = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(idx);
    return kernel[idx] + frac * (kernel[idx + 1] - kernel[idx]);
  };

  for (std::size_t j = 0; j < n_out; ++j) {
    const double t = static_cast<double>(j) / ratio;  // position in input samples
    const auto k_lo = static_cast<long long>(std::ceil(t - half_width));
    const auto k_hi = static_cast<long long>(std::floor(t + half_width));
    double acc = 0.0;
    for (long long k = std::max(k_lo, 0LL);
         k <= std::min(k_hi, static_cast<long long>(n_in) - 1); ++k) {
      const double u = std::fabs(t - static_cast<double>(k)) * cutoff;
      if (u >= static_cast<double>(zeros)) continue;
      acc += audio.samples[static_cast<std::size_t>(k)] * cutoff * kernel_at(u);
    }
    out.samples[j] = acc;
  }
  return out;
}

ComplexSpectrogram stft(const AudioBuffer& audio, const LogMelConfig& config) {
  config.validate();
  require(!audio.samples.empty(), "stft: audio must contain at least one sample");

  std::vector<double> signal = audio.samples;
  if (signal.size() < config.window_len) signal.resize(config.window_len, 0.0);

  const std::size_t w = config.window_len;
  const std::size_t pad = w / 2;
  const std::size_t padded_len = signal.size() + 2 * pad;
  const std::size_t n_frames = 1 + (padded_len - w) / config.hop_len;

  const std::vector<double> window = make_window(config.window_fn, w);

  ComplexSpectrogram spec;
  spec.window_len = w;
  spec.n_bins = w / 2 + 1;
  spec.n_frames = n_frames;
  spec.sample_rate = audio.sample_rate > 0 ? audio.sample_rate : config.sample_rate;
  spec.data.resize(n_frames * spec.n_bins);

  std::vector<std::complex<double>> frame(w);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const long long start = static_cast<long long>(f * config.hop_len) -
                            static_cast<long long>(pad);
    for (std::size_t i = 0; i < w; ++i) {
      frame[i] = {padded_sample(signal, start + static_cast<long long>(i)) * window[i],
                  0.0};
    }
    fft(frame);
    for (std::size_t b = 0; b < spec.n_bins; ++b) spec.at(f, b) = frame[b];
  }
  return spec;
}

Matrix mel_filterbank(const LogMelConfig& config) {
  config.validate();
  const std::size_t n_bins = config.window_len / 2 + 1;
  Matrix fb(config.n_mels, n_bins);

  const double mel_lo = hz_to_mel(config.fmin);
  const double mel_hi = hz_to_mel(config.fmax);
  std::vector<double> edges(config.n_mels + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double mel = mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                    static_cast<double>(config.n_mels + 1);
    edges[i] = mel_to_hz(mel);
  }

  for (std::size_t m = 0; m < config.n_mels; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    for (std::size_t b = 0; b < n_bins; ++b) {
      const double hz = static_cast<double>(b) * config.sample_rate /
                        static_cast<double>(config.window_len);
      double v = 0.0;
      if (hz > left && hz < right) {
        v = hz <= center ? (hz - left) / (center - left)
                         : (right - hz) / (right - center);
      }
      fb(m, b) = v;
    }
  }
  return fb;
}

Matrix mel_energies(const ComplexSpectrogram& spec, const LogMelConfig& config) {
  require(spec.window_len == config.window_len,
          "mel_energies: spectrogram window does not match config");
  const Matrix fb = mel_filterbank(config);
  Matrix out(spec.n_frames, config.n_mels);
  for (std::size_t f = 0; f < spec.n_frames; ++f) {
    for (std::size_t m = 0; m < config.n_mels; ++m) {
      double acc = 0.0;
      for (std::size_t b = 0; b < spec.n_bins; ++b) {
        acc += std::norm(spec.at(f, b)) * fb(m, b);
      }
      out(f, m) = acc;
    }
  }
  return out;
}

MelSpectrogram log_mel(const ComplexSpectrogram& spec, const LogMelConfig& config) {
  Matrix e = mel_energies(spec, config);
  for (double& v : e.data()) v = std::log(v + config.log_floor);
  return MelSpectrogram{std::move(e), config};
}

ClassSpectrum mean_spectrum(const std::vector<AudioBuffer>& segments, int class_id,
                            const LogMelConfig& config, double min_hz) {
  require(!segments.empty(), "mean_spectrum: need at least one segment");
  for (const auto& s : segments) {
    require(s.sample_rate == segments.front().sample_rate,
            "mean_spectrum: segments must share one sample rate");
  }

  const std::size_t n_bins = config.window_len / 2 + 1;
  Matrix per_segment(segments.size(), n_bins);
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const ComplexSpectrogram spec = stft(segments[s], config);
    for (std::size_t b = 0; b < n_bins; ++b) {
      double acc = 0.0;
      for (std::size_t f = 0; f < spec.n_frames; ++f) acc += std::abs(spec.at(f, b));
      per_segment(s, b) = acc / static_cast<double>(spec.n_frames);
    }
  }

  ClassSpectrum cs;
  cs.class_id = class_id;
  cs.mean.assign(n_bins, 0.0);
  cs.std_dev.assign(n_bins, 0.0);
  cs.bin_hz.assign(n_bins, 0.0);
  const double sr = segments.front().sample_rate;
  const auto n_seg = static_cast<double>(segments.size());

  for (std::size_t b = 0; b < n_bins; ++b) {
    cs.bin_hz[b] = static_cast<double>(b) * sr / static_cast<double>(config.window_len);
    double m = 0.0;
    for (std::size_t s = 0; s < segments.size(); ++s) m += per_segment(s, b);
    m /= n_seg;
    double var = 0.0;
    for (std::size_t s = 0; s < segments.size(); ++s) {
      const double d = per_segment(s, b) - m;
      var += d * d;
    }
    cs.mean[b] = m;
    cs.std_dev[b] = std::sqrt(var / n_seg);
  }

  for (std::size_t b = 0; b < n_bins; ++b) {
    if (cs.bin_hz[b] < min_hz) {
      cs.mean[b] = 0.0;
      cs.std_dev[b] = 0.0;
    }
  }

  double peak = 0.0;
  for (double v : cs.mean) peak = std::max(peak, v);
  if (peak > 0.0) {
    for (double& v : cs.mean) v /= peak;
    for (double& v : cs.std_dev) v /= peak;
  }
  return cs;
}

void write_class_spectrum_csv(const ClassSpectrum& spectrum, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "bin_hz,mean,std\n";
  for (std::size_t b = 0; b < spectrum.mean.size(); ++b) {
    out << format_double(spectrum.bin_hz[b]) << ',' << format_double(spectrum.mean[b])
        << ',' << format_double(spectrum.std_dev[b]) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace mvox
