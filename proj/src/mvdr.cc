// mcse/mvdr.cc

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

#include "mcse/mvdr.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mcse/error.h"

namespace mcse {

void validate(const TimeFreqMask& m) {
  for (double v : m.v)
    if (!(v >= 0.0 && v <= 1.0))
      throw DataError("mask: value outside [0, 1]");
}

void validate(const PerChannelMasks& m) {
  for (double v : m.v)
    if (!(v >= 0.0 && v <= 1.0))
      throw DataError("mask: value outside [0, 1]");
}

TimeFreqMask average_masks(const PerChannelMasks& masks,
                           const std::vector<int>* kept) {
  validate(masks);
  std::vector<int> all;
  if (kept == nullptr) {
    all.resize(masks.channels);
    for (int c = 0; c < masks.channels; ++c) all[c] = c;
    kept = &all;
  }
  if (kept->empty()) throw std::invalid_argument("average_masks: empty channel set");
  for (int c : *kept)
    if (c < 0 || c >= masks.channels)
      throw std::invalid_argument("average_masks: channel index out of range");

  TimeFreqMask out;
  out.frames = masks.frames;
  out.bins = masks.bins;
  out.v.assign(static_cast<size_t>(masks.frames) * masks.bins, 0.0);
  const double inv = 1.0 / kept->size();
  for (int t = 0; t < masks.frames; ++t)
    for (int f = 0; f < masks.bins; ++f) {
      double acc = 0.0;
      for (int c : *kept) acc += masks.at(t, f, c);
      out.at(t, f) = acc * inv;
    }
  return out;
}

PerChannelMasks floor_masks(const PerChannelMasks& masks, double floor) {
  if (floor < 0.0 || floor > 1.0)
    throw std::invalid_argument("floor_masks: floor outside [0, 1]");
  PerChannelMasks out = masks;
  for (double& v : out.v) v = std::clamp(v, floor, 1.0);
  return out;
}

PsdMatrices estimate_psd(const ComplexSpectrum& x, const TimeFreqMask& m,
                         PsdRole role) {
  if (m.frames != x.frames || m.bins != x.bins)
    throw std::invalid_argument("estimate_psd: mask/spectrum shape mismatch");
  validate(m);

  PsdMatrices out;
  out.role = role;
  out.bins = x.bins;
  out.channels = x.channels;
  out.phi.reserve(x.bins);

  const int c_count = x.channels;
  for (int f = 0; f < x.bins; ++f) {
    ComplexMatrix acc(c_count);
    double mass = 0.0;
    for (int t = 0; t < x.frames; ++t) {
      const double w = m.at(t, f);
      if (w == 0.0) continue;
      mass += w;
      const Cplx* xc = &x.at(t, f, 0);
      for (int r = 0; r < c_count; ++r) {
        const Cplx wr = w * xc[r];
        for (int c = 0; c < c_count; ++c) acc(r, c) += wr * std::conj(xc[c]);
      }
    }
    if (!(mass > 0.0))
      throw DataError("estimate_psd: zero mask mass at frequency bin " +
                      std::to_string(f) + "; floor the mask to proceed");
    const double inv = 1.0 / mass;
    for (int r = 0; r < c_count; ++r)
      for (int c = 0; c < c_count; ++c) acc(r, c) *= inv;
    out.phi.push_back(hermitian_project(acc));
  }
  return out;
}

BeamformerCoeffs mvdr_coeffs(const PsdMatrices& speech,
                             const PsdMatrices& noise, int reference,
                             double eps_rel) {
  if (speech.bins != noise.bins || speech.channels != noise.channels)
    throw std::invalid_argument("mvdr_coeffs: speech/noise shape mismatch");
  if (reference < 0 || reference >= speech.channels)
    throw std::invalid_argument("mvdr_coeffs: reference channel out of range");

  BeamformerCoeffs out;
  out.bins = speech.bins;
  out.channels = speech.channels;
  out.reference = reference;
  out.g.assign(static_cast<size_t>(speech.bins) * speech.channels, Cplx(0, 0));

  for (int f = 0; f < speech.bins; ++f) {
    HermitianMatrix noise_inv;
    try {
      noise_inv = regularized_inverse(noise.phi[f], eps_rel);
    } catch (const DataError& e) {
      throw DataError("mvdr_coeffs: at frequency bin " + std::to_string(f) +
                      ": " + e.what());
    }
    const ComplexMatrix ratio = matmul(noise_inv.m, speech.phi[f].m);
    const Cplx tr = trace(ratio);
    if (std::abs(tr) < 1e-12)
      throw DataError(
          "mvdr_coeffs: degenerate speech PSD (|trace| < 1e-12) at frequency "
          "bin " +
          std::to_string(f));
    // g_f = ratio * u / Tr = the reference column, trace-normalized.
    for (int r = 0; r < speech.channels; ++r)
      out.at(f, r) = ratio(r, reference) / tr;
  }
  return out;
}

int select_reference(const ComplexSpectrum& x, const TimeFreqMask& speech_mask,
                     const TimeFreqMask& noise_mask) {
  if (speech_mask.frames != x.frames || speech_mask.bins != x.bins ||
      noise_mask.frames != x.frames || noise_mask.bins != x.bins)
    throw std::invalid_argument("select_reference: mask shape mismatch");
  validate(speech_mask);
  validate(noise_mask);

  std::vector<double> score(x.channels, 0.0);
  for (int c = 0; c < x.channels; ++c) {
    double speech_power = 0.0, noise_power = 0.0;
    for (int t = 0; t < x.frames; ++t)
      for (int f = 0; f < x.bins; ++f) {
        const double p = std::norm(x.at(t, f, c));
        speech_power += speech_mask.at(t, f) * p;
        noise_power += noise_mask.at(t, f) * p;
      }
    score[c] = speech_power / (noise_power + 1e-12);
  }
  const double best = *std::max_element(score.begin(), score.end());
  // Lowest index within a 1e-12 relative band of the best counts as a tie.
  const double threshold = best - 1e-12 * std::max(1.0, std::abs(best));
  for (int c = 0; c < x.channels; ++c)
    if (score[c] >= threshold) return c;
  return 0;
}

MvdrOutput mvdr_apply(const ComplexSpectrum& x, const BeamformerCoeffs& g) {
  if (g.bins != x.bins || g.channels != x.channels)
    throw std::invalid_argument("mvdr_apply: coefficient shape mismatch");

  MvdrOutput out;
  out.enhanced.frames = x.frames;
  out.enhanced.bins = x.bins;
  out.enhanced.channels = 1;
  out.enhanced.cfg = x.cfg;
  out.enhanced.sample_rate = x.sample_rate;
  out.enhanced.data.assign(static_cast<size_t>(x.frames) * x.bins, Cplx(0, 0));
  out.power.frames = x.frames;
  out.power.bins = x.bins;
  out.power.v.assign(static_cast<size_t>(x.frames) * x.bins, 0.0);

  for (int t = 0; t < x.frames; ++t)
    for (int f = 0; f < x.bins; ++f) {
      const Cplx* xc = &x.at(t, f, 0);
      const Cplx* gf = &g.at(f, 0);
      Cplx s(0, 0);
      for (int c = 0; c < x.channels; ++c) s += std::conj(gf[c]) * xc[c];
      out.enhanced.at(t, f, 0) = s;
      out.power.at(t, f) = std::norm(s);
    }
  return out;
}

MvdrResult mvdr_pipeline(const ComplexSpectrum& x,
                         const PerChannelMasks& speech,
                         const PerChannelMasks& noise,
                         const MvdrOptions& opts) {
  if (speech.frames != x.frames || speech.bins != x.bins ||
      speech.channels != x.channels || noise.frames != x.frames ||
      noise.bins != x.bins || noise.channels != x.channels)
    throw std::invalid_argument("mvdr_pipeline: mask/spectrum shape mismatch");

  MvdrResult res;
  if (opts.mask_floor > 0.0) {
    res.speech_mask = average_masks(floor_masks(speech, opts.mask_floor));
    res.noise_mask = average_masks(floor_masks(noise, opts.mask_floor));
  } else {
    res.speech_mask = average_masks(speech);
    res.noise_mask = average_masks(noise);
  }

  const PsdMatrices speech_psd =
      estimate_psd(x, res.speech_mask, PsdRole::kSpeech);
  const PsdMatrices noise_psd = estimate_psd(x, res.noise_mask, PsdRole::kNoise);

  int reference = opts.reference
                      ? *opts.reference
                      : select_reference(x, res.speech_mask, res.noise_mask);
  if (reference < 0 || reference >= x.channels)
    throw std::invalid_argument("mvdr_pipeline: reference channel out of range");

  res.coeffs = mvdr_coeffs(speech_psd, noise_psd, reference, opts.eps_rel);
  MvdrOutput applied = mvdr_apply(x, res.coeffs);
  res.enhanced = std::move(applied.enhanced);
  res.power = std::move(applied.power);
  return res;
}

}  // namespace mcse
