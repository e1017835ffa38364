// mcse/augment.h

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

#ifndef MCSE_AUGMENT_H_
#define MCSE_AUGMENT_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "mcse/features.h"
#include "mcse/mvdr.h"
#include "mcse/rng.h"
#include "mcse/signal.h"

namespace mcse {

enum class CaMode { kFreqIndependentZero, kFreqIndependentSlice, kFreqDependent };

// Channel-dropping policy. For the frequency-independent modes the number
// of kept channels is drawn uniformly from {c_min, ..., c_max}; keeping
// zero channels is degenerate for every frontend, so c_min >= 1. The
// frequency-dependent mode keeps each (frequency, channel) cell with
// probability p_keep.
struct ChannelAugmentPolicy {
  CaMode mode = CaMode::kFreqIndependentSlice;
  int c_min = 1;
  int c_max = 1;
  double p_keep = 1.0;
  uint64_t seed = 0;
};

// Kept channel indices, ascending and unique, out of original_c.
struct ChannelSubset {
  std::vector<int> kept;
  int original_c = 0;
};

void validate(const ChannelSubset& z);

// Draws |Z| uniformly from {c_min, ..., c_max}, then |Z| distinct channels
// uniformly without replacement. Deterministic given the generator state.
ChannelSubset ca_sample_subset(int channels, const ChannelAugmentPolicy& policy,
                               Rng& rng);

// Keeps the subset, zeroes everything else; shape preserved.
ComplexSpectrum ca_zero(const ComplexSpectrum& x, const ChannelSubset& z);

// Removes the dropped channels; output has |Z| channels in ascending
// original order.
ComplexSpectrum ca_slice(const ComplexSpectrum& x, const ChannelSubset& z);

// Per-channel masks and waveforms restricted the same way.
PerChannelMasks slice_masks(const PerChannelMasks& m, const ChannelSubset& z);
Waveform slice_channels(const Waveform& w, const ChannelSubset& z);

// Time-invariant Bernoulli keep mask, keep[f*channels + c] in {0, 1}.
struct FreqDependentMask {
  int bins = 0;
  int channels = 0;
  std::vector<uint8_t> keep;
};

FreqDependentMask sample_freq_mask(int bins, int channels, double p_keep,
                                   Rng& rng);

// x'[t,f,c] = x[t,f,c] * m[f,c] with m ~ Bernoulli(p_keep), identical
// across frames. The drawn mask is returned for inspection.
std::pair<ComplexSpectrum, FreqDependentMask> ca_freq_dependent(
    const ComplexSpectrum& x, double p_keep, Rng& rng);

// Feature-domain masking: m_f frequency regions of width uniform on
// {0..f_max} and m_t time regions of width uniform on {0..t_max}, each
// starting uniformly over the valid positions, set to zero. Time masking
// is available but defaults off.
struct SpecAugmentPolicy {
  int f_max = 0;
  int m_f = 0;
  int t_max = 0;
  int m_t = 0;
  uint64_t seed = 0;
};

FeatureMatrix spec_augment(const FeatureMatrix& feat,
                           const SpecAugmentPolicy& policy, Rng& rng);

}  // namespace mcse

#endif  // MCSE_AUGMENT_H_
