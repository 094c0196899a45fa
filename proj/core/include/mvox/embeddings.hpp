// core/include/mvox/embeddings.hpp

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

#ifndef MVOX_EMBEDDINGS_HPP
#define MVOX_EMBEDDINGS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mvox/feature_vector.hpp"

namespace mvox {

// Frame-level embedding matrix for one utterance, or — by convention used
// throughout the toolkit — an utterance-level feature table (one row per
// record). Values are binary32, the payload type of the EMB1 format, so a
// write/read round trip is bit-exact.
struct FrameMatrix {
  std::size_t n_frames = 0;
  std::size_t frame_dim = 0;
  std::vector<float> data;  // row-major
  std::string source_tag;

  float& at(std::size_t frame, std::size_t d) { return data[frame * frame_dim + d]; }
  float at(std::size_t frame, std::size_t d) const {
    return data[frame * frame_dim + d];
  }
};

// EMB1 container, little-endian throughout:
//   magic "EMB1" | u16 version=1 | u32 n_frames | u32 frame_dim |
//   u16 tag_len | tag bytes (UTF-8) | n_frames*frame_dim float32, row-major.
FrameMatrix read_embedding_file(const std::string& path);
void write_embedding_file(const FrameMatrix& matrix, const std::string& path);

// CSV alternative for small fixtures: one frame per row, plain decimal floats.
FrameMatrix read_embedding_csv(const std::string& path);
void write_embedding_csv(const FrameMatrix& matrix, const std::string& path);

// [mean over frames ++ population std over frames]; dim = 2 * frame_dim.
FeatureVector aggregate(const FrameMatrix& frames);

// First half of an aggregated vector — the frame-wise means.
FeatureVector mean_half(const FeatureVector& vector);

// Per-layer frame matrices for one utterance, contiguous 0..L indexing.
struct LayerSet {
  std::map<int, FrameMatrix> layers;

  void validate() const;  // all layers share n_frames and frame_dim
};

// Feature-table helpers: a table is a FrameMatrix with one row per record.
std::vector<FeatureVector> table_to_vectors(const FrameMatrix& table,
                                            FeatureScheme scheme);
FrameMatrix vectors_to_table(const std::vector<FeatureVector>& vectors,
                             const std::string& source_tag);

// Scheme convention for table tags: featurize writes "c22_24", imported
// neural tables get "agg:<original tag>".
FeatureScheme scheme_from_tag(const std::string& source_tag);

}  // namespace mvox

#endif  // MVOX_EMBEDDINGS_HPP
