// mcse/features.cc

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

#include "mcse/features.h"

#include <cmath>
#include <stdexcept>

#include "mcse/error.h"

namespace mcse {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank mel_filterbank(int n_mels, const StftConfig& cfg,
                             int sample_rate, double f_low, double f_high) {
  validate(cfg);
  if (n_mels < 1) throw std::invalid_argument("mel_filterbank: n_mels >= 1");
  if (!(f_low >= 0.0) || !(f_low < f_high) || !(f_high <= 0.5 * sample_rate))
    throw std::invalid_argument(
        "mel_filterbank: need 0 <= f_low < f_high <= sample_rate/2");

  MelFilterbank fb;
  fb.n_mels = n_mels;
  fb.bins = cfg.bins();
  fb.f_low = f_low;
  fb.f_high = f_high;
  fb.weights.assign(static_cast<size_t>(n_mels) * fb.bins, 0.0);

  // n_mels + 2 edge points equally spaced in mel; filter m spans
  // (edge[m], edge[m+2]) and peaks at edge[m+1].
  const double mel_lo = hz_to_mel(f_low), mel_hi = hz_to_mel(f_high);
  std::vector<double> edge_hz(n_mels + 2);
  for (int i = 0; i < n_mels + 2; ++i)
    edge_hz[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (n_mels + 1));

  for (int m = 0; m < n_mels; ++m) {
    const double lo = edge_hz[m], center = edge_hz[m + 1], hi = edge_hz[m + 2];
    for (int f = 0; f < fb.bins; ++f) {
      const double hz = static_cast<double>(f) * sample_rate / cfg.fft_size;
      if (hz <= lo || hz >= hi) continue;
      fb.at(m, f) = (hz <= center) ? (hz - lo) / (center - lo)
                                   : (hi - hz) / (hi - center);
    }
  }
  return fb;
}

FeatureMatrix log_mel(const PowerSpectrum& p, const MelFilterbank& fb,
                      double floor) {
  if (!(floor > 0.0)) throw std::invalid_argument("log_mel: floor must be > 0");
  if (p.bins != fb.bins)
    throw std::invalid_argument("log_mel: power/filterbank bin mismatch");

  FeatureMatrix feat;
  feat.frames = p.frames;
  feat.bands = fb.n_mels;
  feat.v.assign(static_cast<size_t>(p.frames) * fb.n_mels, 0.0);
  for (int t = 0; t < p.frames; ++t)
    for (int m = 0; m < fb.n_mels; ++m) {
      double acc = 0.0;
      for (int f = 0; f < fb.bins; ++f) acc += fb.at(m, f) * p.at(t, f);
      feat.at(t, m) = std::log(std::max(acc, floor));
    }
  return feat;
}

FeatureMatrix cmn(const FeatureMatrix& feat) {
  if (feat.frames < 1) throw std::invalid_argument("cmn: need at least one frame");
  FeatureMatrix out = feat;
  for (int m = 0; m < feat.bands; ++m) {
    double mean = 0.0;
    for (int t = 0; t < feat.frames; ++t) mean += feat.at(t, m);
    mean /= feat.frames;
    for (int t = 0; t < feat.frames; ++t) out.at(t, m) -= mean;
  }
  return out;
}

}  // namespace mcse
