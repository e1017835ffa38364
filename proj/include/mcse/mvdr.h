// mcse/mvdr.h

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

#ifndef MCSE_MVDR_H_
#define MCSE_MVDR_H_

#include <optional>
#include <vector>

#include "mcse/linalg.h"
#include "mcse/signal.h"

namespace mcse {

// Per-bin weights in [0, 1], shape frames x bins.
struct TimeFreqMask {
  int frames = 0;
  int bins = 0;
  std::vector<double> v;

  double& at(int t, int f) { return v[static_cast<size_t>(t) * bins + f]; }
  const double& at(int t, int f) const {
    return v[static_cast<size_t>(t) * bins + f];
  }
};

// Per-channel masks before averaging, shape frames x bins x channels.
struct PerChannelMasks {
  int frames = 0;
  int bins = 0;
  int channels = 0;
  std::vector<double> v;

  double& at(int t, int f, int c) {
    return v[(static_cast<size_t>(t) * bins + f) * channels + c];
  }
  const double& at(int t, int f, int c) const {
    return v[(static_cast<size_t>(t) * bins + f) * channels + c];
  }
};

void validate(const TimeFreqMask& m);
void validate(const PerChannelMasks& m);

enum class PsdRole { kSpeech, kNoise };

// Per-frequency spatial covariance stack, bins x (channels x channels).
struct PsdMatrices {
  PsdRole role = PsdRole::kSpeech;
  int bins = 0;
  int channels = 0;
  std::vector<HermitianMatrix> phi;
};

// Time-invariant beamformer, g: bins x channels (channel fastest).
struct BeamformerCoeffs {
  int bins = 0;
  int channels = 0;
  std::vector<Cplx> g;
  int reference = 0;

  Cplx& at(int f, int c) { return g[static_cast<size_t>(f) * channels + c]; }
  const Cplx& at(int f, int c) const {
    return g[static_cast<size_t>(f) * channels + c];
  }
};

// Arithmetic mean over the kept channels (all channels when kept is
// absent). Throws on an empty kept set.
TimeFreqMask average_masks(const PerChannelMasks& masks,
                           const std::vector<int>* kept = nullptr);

// Masks clamped to [floor, 1]; floor = 0 is the identity.
PerChannelMasks floor_masks(const PerChannelMasks& masks, double floor);

// Mask-weighted covariance per frequency:
// phi_f = sum_t m[t,f] x[t,f] x[t,f]^dagger / sum_t m[t,f].
// Throws DataError naming the frequency when a bin has zero mask mass
// (callers may floor the mask first).
PsdMatrices estimate_psd(const ComplexSpectrum& x, const TimeFreqMask& m,
                         PsdRole role);

// g_f = (phi_N^-1 phi_S / Tr(phi_N^-1 phi_S)) u, u = one-hot(reference).
// The noise PSD is inverted through regularized_inverse(., eps_rel).
// Throws DataError when |Tr| < 1e-12 (degenerate speech PSD) or when the
// noise PSD is singular, naming the frequency.
BeamformerCoeffs mvdr_coeffs(const PsdMatrices& speech,
                             const PsdMatrices& noise, int reference,
                             double eps_rel);

// Deterministic stand-in for a learned reference selector: argmax over
// channels of mask-weighted speech power over mask-weighted noise power,
// ties (relative gap <= 1e-12) broken toward the lowest index.
int select_reference(const ComplexSpectrum& x, const TimeFreqMask& speech_mask,
                     const TimeFreqMask& noise_mask);

struct MvdrOutput {
  ComplexSpectrum enhanced;  // frames x bins x 1, s[t,f] = g_f^dagger x[t,f]
  PowerSpectrum power;       // |s|^2
};

MvdrOutput mvdr_apply(const ComplexSpectrum& x, const BeamformerCoeffs& g);

struct MvdrOptions {
  double eps_rel = 1e-6;
  // Clamp averaged masks to [mask_floor, 1] before PSD estimation; 0 (the
  // default) keeps the estimator exact and lets zero-mass bins error out.
  double mask_floor = 0.0;
  // Fixed reference channel; unset selects by mask-weighted SNR.
  std::optional<int> reference;
};

struct MvdrResult {
  ComplexSpectrum enhanced;
  PowerSpectrum power;
  BeamformerCoeffs coeffs;
  TimeFreqMask speech_mask;
  TimeFreqMask noise_mask;
};

// average -> (floor) -> PSD(speech/noise) -> reference -> coeffs -> apply.
MvdrResult mvdr_pipeline(const ComplexSpectrum& x,
                         const PerChannelMasks& speech,
                         const PerChannelMasks& noise,
                         const MvdrOptions& opts = {});

}  // namespace mcse

#endif  // MCSE_MVDR_H_
