// mcse/augment.cc

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

#include "mcse/augment.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mcse/error.h"

namespace mcse {

void validate(const ChannelSubset& z) {
  if (z.kept.empty()) throw DataError("channel subset: empty");
  for (size_t i = 0; i < z.kept.size(); ++i) {
    if (z.kept[i] < 0 || z.kept[i] >= z.original_c)
      throw DataError("channel subset: index out of range");
    if (i > 0 && z.kept[i] <= z.kept[i - 1])
      throw DataError("channel subset: indices must be ascending and unique");
  }
}

ChannelSubset ca_sample_subset(int channels, const ChannelAugmentPolicy& policy,
                               Rng& rng) {
  if (channels < 1)
    throw std::invalid_argument("ca_sample_subset: need channels >= 1");
  if (policy.c_min < 1 || policy.c_min > policy.c_max)
    throw std::invalid_argument(
        "ca_sample_subset: need 1 <= c_min <= c_max");
  if (policy.c_max > channels)
    throw std::invalid_argument("ca_sample_subset: c_max exceeds channel count (" +
                                std::to_string(policy.c_max) + " > " +
                                std::to_string(channels) + ")");

  const int keep =
      static_cast<int>(rng.next_int(policy.c_min, policy.c_max));
  // Partial Fisher-Yates: the first `keep` slots are a uniform sample
  // without replacement.
  std::vector<int> pool(channels);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < keep; ++i) {
    const int j = static_cast<int>(rng.next_int(i, channels - 1));
    std::swap(pool[i], pool[j]);
  }
  ChannelSubset z;
  z.original_c = channels;
  z.kept.assign(pool.begin(), pool.begin() + keep);
  std::sort(z.kept.begin(), z.kept.end());
  return z;
}

ComplexSpectrum ca_zero(const ComplexSpectrum& x, const ChannelSubset& z) {
  validate(z);
  if (z.original_c != x.channels)
    throw std::invalid_argument("ca_zero: subset built for a different channel count");
  ComplexSpectrum out = x;
  std::vector<char> keep(x.channels, 0);
  for (int c : z.kept) keep[c] = 1;
  for (int t = 0; t < x.frames; ++t)
    for (int f = 0; f < x.bins; ++f)
      for (int c = 0; c < x.channels; ++c)
        if (!keep[c]) out.at(t, f, c) = Cplx(0, 0);
  return out;
}

ComplexSpectrum ca_slice(const ComplexSpectrum& x, const ChannelSubset& z) {
  validate(z);
  if (z.original_c != x.channels)
    throw std::invalid_argument("ca_slice: subset built for a different channel count");
  ComplexSpectrum out;
  out.frames = x.frames;
  out.bins = x.bins;
  out.channels = static_cast<int>(z.kept.size());
  out.cfg = x.cfg;
  out.sample_rate = x.sample_rate;
  out.data.resize(static_cast<size_t>(x.frames) * x.bins * z.kept.size());
  for (int t = 0; t < x.frames; ++t)
    for (int f = 0; f < x.bins; ++f)
      for (size_t k = 0; k < z.kept.size(); ++k)
        out.at(t, f, static_cast<int>(k)) = x.at(t, f, z.kept[k]);
  return out;
}

PerChannelMasks slice_masks(const PerChannelMasks& m, const ChannelSubset& z) {
  validate(z);
  if (z.original_c != m.channels)
    throw std::invalid_argument("slice_masks: subset built for a different channel count");
  PerChannelMasks out;
  out.frames = m.frames;
  out.bins = m.bins;
  out.channels = static_cast<int>(z.kept.size());
  out.v.resize(static_cast<size_t>(m.frames) * m.bins * z.kept.size());
  for (int t = 0; t < m.frames; ++t)
    for (int f = 0; f < m.bins; ++f)
      for (size_t k = 0; k < z.kept.size(); ++k)
        out.at(t, f, static_cast<int>(k)) = m.at(t, f, z.kept[k]);
  return out;
}

Waveform slice_channels(const Waveform& w, const ChannelSubset& z) {
  validate(z);
  if (z.original_c != w.channels())
    throw std::invalid_argument("slice_channels: subset built for a different channel count");
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.reserve(z.kept.size());
  for (int c : z.kept) out.samples.push_back(w.samples[c]);
  return out;
}

FreqDependentMask sample_freq_mask(int bins, int channels, double p_keep,
                                   Rng& rng) {
  if (!(p_keep > 0.0 && p_keep <= 1.0))
    throw std::invalid_argument("sample_freq_mask: need 0 < p_keep <= 1");
  if (bins < 1 || channels < 1)
    throw std::invalid_argument("sample_freq_mask: bad shape");
  FreqDependentMask m;
  m.bins = bins;
  m.channels = channels;
  m.keep.resize(static_cast<size_t>(bins) * channels);
  for (auto& cell : m.keep)
    cell = (rng.next_double() < p_keep) ? 1 : 0;
  return m;
}

std::pair<ComplexSpectrum, FreqDependentMask> ca_freq_dependent(
    const ComplexSpectrum& x, double p_keep, Rng& rng) {
  FreqDependentMask m = sample_freq_mask(x.bins, x.channels, p_keep, rng);
  ComplexSpectrum out = x;
  for (int t = 0; t < x.frames; ++t)
    for (int f = 0; f < x.bins; ++f)
      for (int c = 0; c < x.channels; ++c)
        if (!m.keep[static_cast<size_t>(f) * x.channels + c])
          out.at(t, f, c) = Cplx(0, 0);
  return {std::move(out), std::move(m)};
}

FeatureMatrix spec_augment(const FeatureMatrix& feat,
                           const SpecAugmentPolicy& policy, Rng& rng) {
  if (policy.f_max < 0 || policy.m_f < 0 || policy.t_max < 0 || policy.m_t < 0)
    throw std::invalid_argument("spec_augment: negative policy parameter");
  if (policy.f_max > feat.bands)
    throw std::invalid_argument("spec_augment: f_max exceeds band count");
  if (policy.t_max > feat.frames)
    throw std::invalid_argument("spec_augment: t_max exceeds frame count");

  FeatureMatrix out = feat;
  // For each region: width ~ U{0..max} ("up to"), then start ~ U over the
  // valid positions. The draw order is part of the determinism contract.
  for (int i = 0; i < policy.m_f; ++i) {
    const int width = static_cast<int>(rng.next_int(0, policy.f_max));
    const int start = static_cast<int>(rng.next_int(0, feat.bands - width));
    for (int t = 0; t < feat.frames; ++t)
      for (int m = start; m < start + width; ++m) out.at(t, m) = 0.0;
  }
  for (int i = 0; i < policy.m_t; ++i) {
    const int width = static_cast<int>(rng.next_int(0, policy.t_max));
    const int start = static_cast<int>(rng.next_int(0, feat.frames - width));
    for (int t = start; t < start + width; ++t)
      for (int m = 0; m < feat.bands; ++m) out.at(t, m) = 0.0;
  }
  return out;
}

}  // namespace mcse
