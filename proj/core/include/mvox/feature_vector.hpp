// core/include/mvox/feature_vector.hpp

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

#ifndef MVOX_FEATURE_VECTOR_HPP
#define MVOX_FEATURE_VECTOR_HPP

#include <cstddef>
#include <vector>

namespace mvox {

enum class FeatureScheme {
  kC22_24,     // 22 canonical time-series features + mean + std
  kNeuralAgg,  // frame-axis mean ++ std pooling of imported embeddings
};

struct FeatureVector {
  std::vector<double> values;
  FeatureScheme scheme = FeatureScheme::kC22_24;

  std::size_t dim() const { return values.size(); }
};

}  // namespace mvox

#endif  // MVOX_FEATURE_VECTOR_HPP
