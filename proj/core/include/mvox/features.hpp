// core/include/mvox/features.hpp

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

#ifndef MVOX_FEATURES_HPP
#define MVOX_FEATURES_HPP

#include <array>
#include <span>
#include <string>

#include "mvox/feature_vector.hpp"

namespace mvox {

inline constexpr std::size_t kNumCatch22 = 22;

// Canonical names, in the order catch22() emits values.
const std::array<std::string, kNumCatch22>& catch22_feature_names();

// The 22 canonical time-series characteristics (catch22), computed on the
// z-scored series as in the reference implementation. Any feature that is
// undefined on a degenerate input (constant series, no autocorrelation
// zero crossing, ...) is mapped to 0.
std::array<double, kNumCatch22> catch22(std::span<const double> series);

// catch22 plus the raw series mean and population standard deviation
// appended; dim = 24.
FeatureVector c22_24(std::span<const double> series);

}  // namespace mvox

#endif  // MVOX_FEATURES_HPP
