// mcse/sf.h

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

#ifndef MCSE_SF_H_
#define MCSE_SF_H_

#include <vector>

#include "mcse/geometry.h"
#include "mcse/rng.h"
#include "mcse/signal.h"

namespace mcse {

// Spatial filtering layer: a bank of per-frequency filter-and-sum
// beamformers, one branch per look direction.
//
// w: bins x dirs x channels (channel fastest), b: bins x dirs.
struct SfWeights {
  int bins = 0;
  int dirs = 0;
  int channels = 0;
  std::vector<Cplx> w;
  std::vector<Cplx> b;

  Cplx& weight(int f, int d, int c) {
    return w[(static_cast<size_t>(f) * dirs + d) * channels + c];
  }
  const Cplx& weight(int f, int d, int c) const {
    return w[(static_cast<size_t>(f) * dirs + d) * channels + c];
  }
  Cplx& bias(int f, int d) { return b[static_cast<size_t>(f) * dirs + d]; }
  const Cplx& bias(int f, int d) const {
    return b[static_cast<size_t>(f) * dirs + d];
  }
};

// Per look direction beamformed spectra, shape frames x bins x dirs.
struct LookDirectionTensor {
  int frames = 0;
  int bins = 0;
  int dirs = 0;
  std::vector<Cplx> y;

  Cplx& at(int t, int f, int d) {
    return y[(static_cast<size_t>(t) * bins + f) * dirs + d];
  }
  const Cplx& at(int t, int f, int d) const {
    return y[(static_cast<size_t>(t) * bins + f) * dirs + d];
  }
};

// y[t,f,d] = sum_c w[f,d,c] * x[t,f,c] + b[f,d].
LookDirectionTensor sf_forward(const ComplexSpectrum& x, const SfWeights& w);

// Average pooling over look directions: out[t,f] = mean_d |y[t,f,d]|^2.
PowerSpectrum sf_pool(const LookDirectionTensor& y);

// Far-field delay-and-sum steering initialization: for look azimuth theta
// (degrees, 0 = endfire along the array axis for a ULA built by ula()),
// w[f,d,c] = (1/C) exp(-j 2 pi f_hz tau_c) with tau_c the arrival advance
// of mic c relative to the array centroid, and b = 0.
SfWeights sf_init_das(const ArrayGeometry& geom,
                      const std::vector<double>& azimuth_deg,
                      const StftConfig& cfg, int sample_rate,
                      double c_sound = 343.0);

// Complex-Gaussian random initialization, scale 1/sqrt(C).
SfWeights sf_init_random(int bins, int dirs, int channels, Rng& rng);

// The default D = 11 look azimuths, evenly spaced over [0, 180] degrees.
std::vector<double> default_look_directions(int count = 11);

// Weights restricted to a channel subset (ascending original order).
SfWeights restrict_channels(const SfWeights& w, const std::vector<int>& kept);

struct SfGradient {
  std::vector<Cplx> grad_w;  // bins x dirs x channels
  std::vector<Cplx> grad_b;  // bins x dirs
  double loss = 0.0;
};

// Mean-squared-error loss between the pooled power spectrum and `target`,
// with gradients for every complex weight and bias. A gradient component
// packs (dLoss/dRe, dLoss/dIm) as a complex number, so W - eta * grad is
// plain steepest descent and every component can be checked against
// central finite differences on the real and imaginary parts.
SfGradient sf_grad_mse(const ComplexSpectrum& x, const SfWeights& w,
                       const PowerSpectrum& target);

}  // namespace mcse

#endif  // MCSE_SF_H_
