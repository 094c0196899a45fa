// core/include/mvox/wav.hpp

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

#ifndef MVOX_WAV_HPP
#define MVOX_WAV_HPP

#include <string>

#include "mvox/dsp.hpp"

namespace mvox {

struct WavFile {
  AudioBuffer audio;        // mono; multichannel input is averaged
  int source_channels = 1;  // callers warn when > 1
};

// RIFF/WAVE reader for PCM 16-bit and IEEE float (32/64-bit) data.
WavFile read_wav(const std::string& path);

enum class WavSampleFormat { kPcm16, kFloat32 };

void write_wav(const std::string& path, const AudioBuffer& audio,
               WavSampleFormat format = WavSampleFormat::kFloat32);

}  // namespace mvox

#endif  // MVOX_WAV_HPP
