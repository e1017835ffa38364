// mcse/wav.h

// Copyright 2026  The mcse authors

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

#ifndef MCSE_WAV_H_
#define MCSE_WAV_H_

#include <string>

#include "mcse/signal.h"

namespace mcse {

enum class WavFormat { kPcm16, kFloat32 };

// Reads PCM16 or IEEE float32 RIFF/WAVE, 1-16 channels. PCM16 samples are
// scaled to [-1, 1).
Waveform read_wav(const std::string& path);

// Writes atomically (temp file + rename). Float32 round-trips float data
// losslessly; PCM16 clips to [-1, 1] and quantizes.
void write_wav(const std::string& path, const Waveform& w,
               WavFormat format = WavFormat::kFloat32);

}  // namespace mcse

#endif  // MCSE_WAV_H_
