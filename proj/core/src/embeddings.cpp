// core/src/embeddings.cpp

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

#include "mvox/embeddings.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "mvox/common.hpp"
#include "mvox/csv.hpp"

namespace mvox {

namespace {

static_assert(std::endian::native == std::endian::little,
              "EMB1 I/O assumes a little-endian host");

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};
constexpr std::uint16_t kVersion = 1;

template <typename T>
void read_exact(std::ifstream& in, T* out, std::size_t count, const std::string& path,
                const char* what) {
  in.read(reinterpret_cast<char*>(out), static_cast<std::streamsize>(sizeof(T) * count));
  if (static_cast<std::size_t>(in.gcount()) != sizeof(T) * count) {
    throw ParseError(path + ": truncated " + what + " (expected " +
                     std::to_string(sizeof(T) * count) + " bytes, found " +
                     std::to_string(in.gcount()) + ")");
  }
}

}  // namespace

FrameMatrix read_embedding_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding file: " + path);

  char magic[4];
  read_exact(in, magic, 4, path, "header");
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw ParseError(path + ": bad magic, not an EMB1 file");

  std::uint16_t version = 0;
  read_exact(in, &version, 1, path, "header");
  if (version != kVersion)
    throw ParseError(path + ": unsupported EMB1 version " + std::to_string(version));

  std::uint32_t n_frames = 0, frame_dim = 0;
  std::uint16_t tag_len = 0;
  read_exact(in, &n_frames, 1, path, "header");
  read_exact(in, &frame_dim, 1, path, "header");
  read_exact(in, &tag_len, 1, path, "header");

  FrameMatrix m;
  m.n_frames = n_frames;
  m.frame_dim = frame_dim;
  m.source_tag.resize(tag_len);
  if (tag_len > 0) read_exact(in, m.source_tag.data(), tag_len, path, "source tag");

  const std::size_t count = static_cast<std::size_t>(n_frames) * frame_dim;
  m.data.resize(count);
  if (count > 0) read_exact(in, m.data.data(), count, path, "payload");

  for (float v : m.data) {
    if (!std::isfinite(v))
      throw ParseError(path + ": payload contains a non-finite value");
  }
  return m;
}

void write_embedding_file(const FrameMatrix& matrix, const std::string& path) {
  require(matrix.data.size() == matrix.n_frames * matrix.frame_dim,
          "write_embedding_file: shape does not match payload size");
  require(matrix.source_tag.size() <= 0xFFFF,
          "write_embedding_file: source tag too long");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);

  out.write(kMagic, 4);
  const std::uint16_t version = kVersion;
  const auto n_frames = static_cast<std::uint32_t>(matrix.n_frames);
  const auto frame_dim = static_cast<std::uint32_t>(matrix.frame_dim);
  const auto tag_len = static_cast<std::uint16_t>(matrix.source_tag.size());
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&n_frames), sizeof n_frames);
  out.write(reinterpret_cast<const char*>(&frame_dim), sizeof frame_dim);
  out.write(reinterpret_cast<const char*>(&tag_len), sizeof tag_len);
  out.write(matrix.source_tag.data(), tag_len);
  out.write(reinterpret_cast<const char*>(matrix.data.data()),
            static_cast<std::streamsize>(matrix.data.size() * sizeof(float)));
  if (!out) throw IoError("write failed: " + path);
}

FrameMatrix read_embedding_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding CSV: " + path);

  FrameMatrix m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (m.n_frames == 0) {
      m.frame_dim = fields.size();
    } else if (fields.size() != m.frame_dim) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": inconsistent column count");
    }
    for (const auto& f : fields) {
      m.data.push_back(static_cast<float>(
          parse_double(f, path + ":" + std::to_string(line_no))));
    }
    ++m.n_frames;
  }
  return m;
}

void write_embedding_csv(const FrameMatrix& matrix, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (std::size_t f = 0; f < matrix.n_frames; ++f) {
    for (std::size_t d = 0; d < matrix.frame_dim; ++d) {
      if (d) out << ',';
      out << format_double(matrix.at(f, d));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

FeatureVector aggregate(const FrameMatrix& frames) {
  require(frames.n_frames >= 1, "aggregate: matrix has no frames");
  const std::size_t d = frames.frame_dim;
  const auto n = static_cast<double>(frames.n_frames);

  FeatureVector out;
  out.scheme = FeatureScheme::kNeuralAgg;
  out.values.assign(2 * d, 0.0);

  for (std::size_t j = 0; j < d; ++j) {
    double m = 0.0;
    for (std::size_t f = 0; f < frames.n_frames; ++f) m += frames.at(f, j);
    m /= n;
    double var = 0.0;
    for (std::size_t f = 0; f < frames.n_frames; ++f) {
      const double dev = frames.at(f, j) - m;
      var += dev * dev;
    }
    out.values[j] = m;
    out.values[d + j] = std::sqrt(var / n);  // population std: n=1 gives 0
  }
  return out;
}

FeatureVector mean_half(const FeatureVector& vector) {
  require(vector.scheme == FeatureScheme::kNeuralAgg,
          "mean_half: only aggregated neural vectors carry a mean half");
  require(vector.dim() % 2 == 0, "mean_half: dimension must be even");
  FeatureVector out;
  out.scheme = vector.scheme;
  out.values.assign(vector.values.begin(),
                    vector.values.begin() + static_cast<long>(vector.dim() / 2));
  return out;
}

void LayerSet::validate() const {
  require(!layers.empty(), "LayerSet: empty");
  const auto& first = layers.begin()->second;
  int expected = layers.begin()->first;
  for (const auto& [idx, m] : layers) {
    require(idx == expected, "LayerSet: layer indices must be contiguous");
    require(m.n_frames == first.n_frames && m.frame_dim == first.frame_dim,
            "LayerSet: all layers must share n_frames and frame_dim");
    ++expected;
  }
}

std::vector<FeatureVector> table_to_vectors(const FrameMatrix& table,
                                            FeatureScheme scheme) {
  std::vector<FeatureVector> out(table.n_frames);
  for (std::size_t r = 0; r < table.n_frames; ++r) {
    out[r].scheme = scheme;
    out[r].values.resize(table.frame_dim);
    for (std::size_t d = 0; d < table.frame_dim; ++d) out[r].values[d] = table.at(r, d);
  }
  return out;
}

FrameMatrix vectors_to_table(const std::vector<FeatureVector>& vectors,
                             const std::string& source_tag) {
  require(!vectors.empty(), "vectors_to_table: empty input");
  FrameMatrix table;
  table.n_frames = vectors.size();
  table.frame_dim = vectors.front().dim();
  table.source_tag = source_tag;
  table.data.reserve(table.n_frames * table.frame_dim);
  for (const auto& v : vectors) {
    require(v.dim() == table.frame_dim, "vectors_to_table: inconsistent dims");
    for (double x : v.values) table.data.push_back(static_cast<float>(x));
  }
  return table;
}

FeatureScheme scheme_from_tag(const std::string& source_tag) {
  if (source_tag.rfind("agg:", 0) == 0) return FeatureScheme::kNeuralAgg;
  return FeatureScheme::kC22_24;
}

}  // namespace mvox
