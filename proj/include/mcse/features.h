// mcse/features.h

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

#ifndef MCSE_FEATURES_H_
#define MCSE_FEATURES_H_

#include <vector>

#include "mcse/signal.h"

namespace mcse {

// Triangular mel filterbank, weights: n_mels x bins (bin fastest).
struct MelFilterbank {
  int n_mels = 0;
  int bins = 0;
  double f_low = 0.0;
  double f_high = 0.0;
  std::vector<double> weights;

  double& at(int m, int f) { return weights[static_cast<size_t>(m) * bins + f]; }
  const double& at(int m, int f) const {
    return weights[static_cast<size_t>(m) * bins + f];
  }
};

// Real feature rows per frame, shape frames x bands.
struct FeatureMatrix {
  int frames = 0;
  int bands = 0;
  std::vector<double> v;

  double& at(int t, int m) { return v[static_cast<size_t>(t) * bands + m]; }
  const double& at(int t, int m) const {
    return v[static_cast<size_t>(t) * bands + m];
  }
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangular filters with centers equally spaced on the mel scale,
// evaluated at the STFT bin frequencies.
MelFilterbank mel_filterbank(int n_mels, const StftConfig& cfg,
                             int sample_rate, double f_low = 20.0,
                             double f_high = 7600.0);

// ln(max(fb * p_t, floor)) per frame.
FeatureMatrix log_mel(const PowerSpectrum& p, const MelFilterbank& fb,
                      double floor = 1e-10);

// Per-utterance cepstral mean normalization: subtracts each band's time
// mean.
FeatureMatrix cmn(const FeatureMatrix& feat);

}  // namespace mcse

#endif  // MCSE_FEATURES_H_
