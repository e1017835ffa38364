// mcse/signal.cc

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

#include "mcse/signal.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mcse/error.h"
#include "mcse/fft.h"

namespace mcse {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

void validate(const StftConfig& cfg) {
  if (!is_pow2(cfg.fft_size))
    throw ConfigError("stft: fft_size must be a power of two, got " +
                      std::to_string(cfg.fft_size));
  if (cfg.hop <= 0 || cfg.hop > cfg.fft_size)
    throw ConfigError("stft: hop must satisfy 0 < hop <= fft_size");
}

void validate(const Waveform& w) {
  if (w.sample_rate <= 0) throw DataError("waveform: sample_rate must be > 0");
  for (const auto& ch : w.samples) {
    if (ch.size() != w.samples[0].size())
      throw DataError("waveform: channels have unequal lengths");
    for (double v : ch)
      if (!std::isfinite(v)) throw DataError("waveform: non-finite sample");
  }
}

std::vector<double> window_samples(Window window, int length) {
  std::vector<double> w(length);
  for (int n = 0; n < length; ++n) {
    double hann = 0.5 - 0.5 * std::cos(2.0 * kPi * n / length);
    w[n] = (window == Window::kHann) ? hann : std::sqrt(hann);
  }
  return w;
}

double ola_norm_constant(const StftConfig& cfg) {
  validate(cfg);
  std::vector<double> w = window_samples(cfg.window, cfg.fft_size);
  // Periodize w^2 over the hop: s[j] = sum of w^2 over samples congruent
  // to j mod hop. Reconstruction divides by this, so it must be a
  // constant strictly above zero.
  std::vector<double> s(cfg.hop, 0.0);
  for (int n = 0; n < cfg.fft_size; ++n) s[n % cfg.hop] += w[n] * w[n];
  double lo = s[0], hi = s[0];
  for (double v : s) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo <= 0.0 || (hi - lo) > 1e-8 * hi)
    throw ConfigError(
        "istft: window/hop pair violates the constant-overlap-add condition "
        "(squared-window sum varies between " +
        std::to_string(lo) + " and " + std::to_string(hi) + ")");
  return s[0];
}

ComplexSpectrum stft(const Waveform& w, const StftConfig& cfg) {
  validate(cfg);
  validate(w);
  const long num_samples = w.num_samples();
  if (w.channels() < 1 || num_samples == 0)
    throw DataError("stft: empty waveform");
  if (num_samples < cfg.fft_size)
    throw DataError("stft: waveform shorter than one analysis frame (" +
                    std::to_string(num_samples) + " < " +
                    std::to_string(cfg.fft_size) + " samples)");

  const long full = (num_samples - cfg.fft_size) / cfg.hop + 1;
  const bool partial = (num_samples - cfg.fft_size) % cfg.hop != 0;
  const int frames = static_cast<int>(full + (partial ? 1 : 0));

  ComplexSpectrum spec;
  spec.frames = frames;
  spec.bins = cfg.bins();
  spec.channels = w.channels();
  spec.cfg = cfg;
  spec.sample_rate = w.sample_rate;
  spec.data.assign(static_cast<size_t>(frames) * spec.bins * spec.channels,
                   Cplx(0.0, 0.0));

  const std::vector<double> win = window_samples(cfg.window, cfg.fft_size);
  std::vector<double> frame(cfg.fft_size);
  for (int c = 0; c < spec.channels; ++c) {
    const std::vector<double>& x = w.samples[c];
    for (int t = 0; t < frames; ++t) {
      const long start = static_cast<long>(t) * cfg.hop;
      for (int n = 0; n < cfg.fft_size; ++n) {
        const long idx = start + n;
        frame[n] = (idx < num_samples) ? x[idx] * win[n] : 0.0;
      }
      std::vector<Cplx> bins = rfft(frame);
      for (int f = 0; f < spec.bins; ++f) spec.at(t, f, c) = bins[f];
    }
  }
  return spec;
}

Waveform istft(const ComplexSpectrum& spec, long trim_samples) {
  const StftConfig& cfg = spec.cfg;
  validate(cfg);
  if (spec.frames < 1 || spec.channels < 1 || spec.bins != cfg.bins())
    throw DataError("istft: spectrum shape inconsistent with its config");
  const double norm = ola_norm_constant(cfg);

  const long out_len =
      static_cast<long>(spec.frames - 1) * cfg.hop + cfg.fft_size;
  const std::vector<double> win = window_samples(cfg.window, cfg.fft_size);

  Waveform out;
  out.sample_rate = spec.sample_rate;
  out.samples.assign(spec.channels, std::vector<double>(out_len, 0.0));

  std::vector<Cplx> bins(spec.bins);
  for (int c = 0; c < spec.channels; ++c) {
    std::vector<double>& y = out.samples[c];
    for (int t = 0; t < spec.frames; ++t) {
      for (int f = 0; f < spec.bins; ++f) bins[f] = spec.at(t, f, c);
      std::vector<double> frame = irfft(bins, cfg.fft_size);
      const long start = static_cast<long>(t) * cfg.hop;
      for (int n = 0; n < cfg.fft_size; ++n)
        y[start + n] += frame[n] * win[n];
    }
    for (double& v : y) v /= norm;
    if (trim_samples >= 0) y.resize(trim_samples, 0.0);
  }
  return out;
}

Waveform highpass(const Waveform& w, double cutoff_hz) {
  validate(w);
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < 0.5 * w.sample_rate))
    throw std::invalid_argument(
        "highpass: cutoff must satisfy 0 < cutoff < sample_rate/2");

  // Bilinear-transformed second-order Butterworth high-pass.
  const double k = std::tan(kPi * cutoff_hz / w.sample_rate);
  const double d = 1.0 + std::sqrt(2.0) * k + k * k;
  const double b0 = 1.0 / d;
  const double b1 = -2.0 / d;
  const double b2 = 1.0 / d;
  const double a1 = 2.0 * (k * k - 1.0) / d;
  const double a2 = (1.0 - std::sqrt(2.0) * k + k * k) / d;

  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.reserve(w.channels());
  for (const auto& x : w.samples) {
    std::vector<double> y(x.size());
    double s1 = 0.0, s2 = 0.0;  // transposed direct form II state
    for (size_t n = 0; n < x.size(); ++n) {
      const double yn = b0 * x[n] + s1;
      s1 = b1 * x[n] - a1 * yn + s2;
      s2 = b2 * x[n] - a2 * yn;
      y[n] = yn;
    }
    out.samples.push_back(std::move(y));
  }
  return out;
}

}  // namespace mcse
