// mcse/sf.cc

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

#include "mcse/sf.h"

#include <cmath>
#include <stdexcept>

#include "mcse/error.h"

namespace mcse {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_shapes(const ComplexSpectrum& x, const SfWeights& w) {
  if (x.channels != w.channels || x.bins != w.bins)
    throw std::invalid_argument("sf_forward: spectrum/weight shape mismatch");
  if (w.dirs < 1) throw std::invalid_argument("sf: need at least one look direction");
}
}  // namespace

LookDirectionTensor sf_forward(const ComplexSpectrum& x, const SfWeights& w) {
  check_shapes(x, w);
  LookDirectionTensor out;
  out.frames = x.frames;
  out.bins = x.bins;
  out.dirs = w.dirs;
  out.y.assign(static_cast<size_t>(x.frames) * x.bins * w.dirs, Cplx(0, 0));
  for (int t = 0; t < x.frames; ++t)
    for (int f = 0; f < x.bins; ++f) {
      const Cplx* xc = &x.at(t, f, 0);
      for (int d = 0; d < w.dirs; ++d) {
        Cplx acc = w.bias(f, d);
        const Cplx* wc = &w.weight(f, d, 0);
        for (int c = 0; c < x.channels; ++c) acc += wc[c] * xc[c];
        out.at(t, f, d) = acc;
      }
    }
  return out;
}

PowerSpectrum sf_pool(const LookDirectionTensor& y) {
  if (y.dirs < 1) throw std::invalid_argument("sf_pool: need dirs >= 1");
  PowerSpectrum out;
  out.frames = y.frames;
  out.bins = y.bins;
  out.v.assign(static_cast<size_t>(y.frames) * y.bins, 0.0);
  const double inv_d = 1.0 / y.dirs;
  for (int t = 0; t < y.frames; ++t)
    for (int f = 0; f < y.bins; ++f) {
      double acc = 0.0;
      for (int d = 0; d < y.dirs; ++d) acc += std::norm(y.at(t, f, d));
      out.at(t, f) = acc * inv_d;
    }
  return out;
}

SfWeights sf_init_das(const ArrayGeometry& geom,
                      const std::vector<double>& azimuth_deg,
                      const StftConfig& cfg, int sample_rate, double c_sound) {
  validate(geom);
  validate(cfg);
  if (azimuth_deg.empty())
    throw std::invalid_argument("sf_init_das: need at least one look direction");
  if (!(c_sound > 0.0) || sample_rate <= 0)
    throw std::invalid_argument("sf_init_das: bad sample rate or sound speed");

  const int channels = geom.size();
  const int dirs = static_cast<int>(azimuth_deg.size());
  const Vec3 centroid = geom.centroid();

  SfWeights w;
  w.bins = cfg.bins();
  w.dirs = dirs;
  w.channels = channels;
  w.w.assign(static_cast<size_t>(w.bins) * dirs * channels, Cplx(0, 0));
  w.b.assign(static_cast<size_t>(w.bins) * dirs, Cplx(0, 0));

  // tau[d][c]: arrival advance (seconds) of mic c for a far-field plane
  // wave from azimuth theta_d, measured in the x-y plane relative to the
  // array centroid. Conjugate steering w = exp(-j 2 pi f tau) then sums
  // that wave coherently.
  std::vector<std::vector<double>> tau(dirs, std::vector<double>(channels));
  for (int d = 0; d < dirs; ++d) {
    const double theta = azimuth_deg[d] * kPi / 180.0;
    const Vec3 look{std::cos(theta), std::sin(theta), 0.0};
    for (int c = 0; c < channels; ++c)
      tau[d][c] = dot(geom.mics[c] - centroid, look) / c_sound;
  }

  const double gain = 1.0 / channels;
  for (int f = 0; f < w.bins; ++f) {
    const double f_hz = static_cast<double>(f) * sample_rate / cfg.fft_size;
    for (int d = 0; d < dirs; ++d)
      for (int c = 0; c < channels; ++c) {
        const double phase = -2.0 * kPi * f_hz * tau[d][c];
        w.weight(f, d, c) = gain * Cplx(std::cos(phase), std::sin(phase));
      }
  }
  return w;
}

SfWeights sf_init_random(int bins, int dirs, int channels, Rng& rng) {
  if (bins < 1 || dirs < 1 || channels < 1)
    throw std::invalid_argument("sf_init_random: bad shape");
  SfWeights w;
  w.bins = bins;
  w.dirs = dirs;
  w.channels = channels;
  w.w.resize(static_cast<size_t>(bins) * dirs * channels);
  w.b.assign(static_cast<size_t>(bins) * dirs, Cplx(0, 0));
  const double scale = 1.0 / std::sqrt(static_cast<double>(channels));
  for (Cplx& v : w.w)
    v = scale * Cplx(rng.next_gaussian(), rng.next_gaussian());
  return w;
}

std::vector<double> default_look_directions(int count) {
  if (count < 1) throw std::invalid_argument("need at least one look direction");
  std::vector<double> az(count);
  if (count == 1) {
    az[0] = 90.0;
    return az;
  }
  for (int i = 0; i < count; ++i) az[i] = 180.0 * i / (count - 1);
  return az;
}

SfWeights restrict_channels(const SfWeights& w, const std::vector<int>& kept) {
  SfWeights out;
  out.bins = w.bins;
  out.dirs = w.dirs;
  out.channels = static_cast<int>(kept.size());
  out.w.resize(static_cast<size_t>(w.bins) * w.dirs * kept.size());
  out.b = w.b;
  for (int f = 0; f < w.bins; ++f)
    for (int d = 0; d < w.dirs; ++d)
      for (size_t k = 0; k < kept.size(); ++k) {
        const int c = kept[k];
        if (c < 0 || c >= w.channels)
          throw std::invalid_argument("restrict_channels: index out of range");
        out.weight(f, d, static_cast<int>(k)) = w.weight(f, d, c);
      }
  return out;
}

SfGradient sf_grad_mse(const ComplexSpectrum& x, const SfWeights& w,
                       const PowerSpectrum& target) {
  check_shapes(x, w);
  if (target.frames != x.frames || target.bins != x.bins)
    throw std::invalid_argument("sf_grad_mse: target shape mismatch");

  const LookDirectionTensor y = sf_forward(x, w);
  const PowerSpectrum pooled = sf_pool(y);

  SfGradient g;
  g.grad_w.assign(w.w.size(), Cplx(0, 0));
  g.grad_b.assign(w.b.size(), Cplx(0, 0));

  const size_t cells = static_cast<size_t>(x.frames) * x.bins;
  double loss = 0.0;
  // loss = mean_{t,f} (pooled - target)^2 with pooled = mean_d |y|^2 and
  // y = sum_c w x + b. Packing (dL/dRe, dL/dIm) as a complex number gives
  // grad_w[f,d,c] = (4 / (T F D)) sum_t (pooled - target) y[t,f,d] conj(x[t,f,c])
  // and the same without the conj(x) factor for the bias.
  const double scale = 4.0 / (static_cast<double>(cells) * w.dirs);
  for (int t = 0; t < x.frames; ++t)
    for (int f = 0; f < x.bins; ++f) {
      const double err = pooled.at(t, f) - target.at(t, f);
      loss += err * err;
      const Cplx* xc = &x.at(t, f, 0);
      for (int d = 0; d < w.dirs; ++d) {
        const Cplx factor = scale * err * y.at(t, f, d);
        Cplx* gw = &g.grad_w[(static_cast<size_t>(f) * w.dirs + d) * w.channels];
        for (int c = 0; c < x.channels; ++c) gw[c] += factor * std::conj(xc[c]);
        g.grad_b[static_cast<size_t>(f) * w.dirs + d] += factor;
      }
    }
  g.loss = loss / static_cast<double>(cells);
  return g;
}

}  // namespace mcse
