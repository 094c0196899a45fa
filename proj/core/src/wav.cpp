// core/src/wav.cpp

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

#include "mvox/wav.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "mvox/common.hpp"

namespace mvox {

namespace {

static_assert(std::endian::native == std::endian::little,
              "WAV I/O assumes a little-endian host");

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

template <typename T>
T read_le(const std::vector<char>& buf, std::size_t offset, const std::string& path) {
  if (offset + sizeof(T) > buf.size())
    throw ParseError(path + ": truncated WAV data");
  T v;
  std::memcpy(&v, buf.data() + offset, sizeof(T));
  return v;
}

void append_le(std::vector<char>& out, const void* p, std::size_t n) {
  const char* c = static_cast<const char*>(p);
  out.insert(out.end(), c, c + n);
}

template <typename T>
void append_scalar(std::vector<char>& out, T v) {
  append_le(out, &v, sizeof(T));
}

}  // namespace

WavFile read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WAV file: " + path);
  std::vector<char> buf((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());

  if (buf.size() < 12 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
      std::memcmp(buf.data() + 8, "WAVE", 4) != 0) {
    throw ParseError(path + ": not a RIFF/WAVE file");
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::size_t data_offset = 0, data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    char id[5] = {0};
    std::memcpy(id, buf.data() + pos, 4);
    const auto chunk_size = read_le<std::uint32_t>(buf, pos + 4, path);
    const std::size_t body = pos + 8;
    if (std::memcmp(id, "fmt ", 4) == 0) {
      format = read_le<std::uint16_t>(buf, body, path);
      channels = read_le<std::uint16_t>(buf, body + 2, path);
      rate = read_le<std::uint32_t>(buf, body + 4, path);
      bits = read_le<std::uint16_t>(buf, body + 14, path);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_offset = body;
      data_size = chunk_size;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt) throw ParseError(path + ": missing fmt chunk");
  if (data_offset == 0) throw ParseError(path + ": missing data chunk");
  if (channels == 0) throw ParseError(path + ": zero channels");
  if (data_offset + data_size > buf.size())
    throw ParseError(path + ": data chunk extends past end of file");

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool f32 = format == kFormatFloat && bits == 32;
  const bool f64 = format == kFormatFloat && bits == 64;
  if (!pcm16 && !f32 && !f64) {
    throw ParseError(path + ": unsupported WAV encoding (format " +
                     std::to_string(format) + ", " + std::to_string(bits) +
                     " bits); expected 16-bit PCM or IEEE float");
  }

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * channels;
  const std::size_t n_frames = data_size / frame_bytes;

  WavFile wav;
  wav.source_channels = channels;
  wav.audio.sample_rate = static_cast<double>(rate);
  wav.audio.samples.resize(n_frames);

  for (std::size_t f = 0; f < n_frames; ++f) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const std::size_t off = data_offset + f * frame_bytes + c * bytes_per_sample;
      if (pcm16) {
        acc += read_le<std::int16_t>(buf, off, path) / 32768.0;
      } else if (f32) {
        acc += read_le<float>(buf, off, path);
      } else {
        acc += read_le<double>(buf, off, path);
      }
    }
    wav.audio.samples[f] = acc / channels;
  }
  return wav;
}

void write_wav(const std::string& path, const AudioBuffer& audio,
               WavSampleFormat format) {
  require(audio.sample_rate > 0.0, "write_wav: sample rate must be positive");

  const bool pcm = format == WavSampleFormat::kPcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint32_t rate = static_cast<std::uint32_t>(audio.sample_rate);
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(audio.samples.size() * (bits / 8));

  std::vector<char> out;
  out.reserve(44 + data_size);
  append_le(out, "RIFF", 4);
  append_scalar<std::uint32_t>(out, 36 + data_size);
  append_le(out, "WAVE", 4);
  append_le(out, "fmt ", 4);
  append_scalar<std::uint32_t>(out, 16);
  append_scalar<std::uint16_t>(out, pcm ? kFormatPcm : kFormatFloat);
  append_scalar<std::uint16_t>(out, 1);  // mono
  append_scalar<std::uint32_t>(out, rate);
  append_scalar<std::uint32_t>(out, rate * (bits / 8));
  append_scalar<std::uint16_t>(out, static_cast<std::uint16_t>(bits / 8));
  append_scalar<std::uint16_t>(out, bits);
  append_le(out, "data", 4);
  append_scalar<std::uint32_t>(out, data_size);

  for (double s : audio.samples) {
    if (pcm) {
      double v = s * 32768.0;
      if (v > 32767.0) v = 32767.0;
      if (v < -32768.0) v = -32768.0;
      append_scalar<std::int16_t>(out, static_cast<std::int16_t>(std::lrint(v)));
    } else {
      append_scalar<float>(out, static_cast<float>(s));
    }
  }

  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace mvox
