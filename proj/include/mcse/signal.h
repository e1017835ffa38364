// mcse/signal.h

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

#ifndef MCSE_SIGNAL_H_
#define MCSE_SIGNAL_H_

#include <complex>
#include <vector>

namespace mcse {

using Cplx = std::complex<double>;

enum class Window { kHann, kSqrtHann };

// Analysis/synthesis frame parameters. fft_size must be a power of two;
// the onesided spectrum has fft_size/2 + 1 bins.
struct StftConfig {
  int fft_size = 512;
  int hop = 128;
  Window window = Window::kHann;

  int bins() const { return fft_size / 2 + 1; }
};

// Throws if fft_size is not a power of two, hop is out of range, etc.
void validate(const StftConfig& cfg);

// Multi-channel time-domain signal; samples[c] is channel c.
// All channels have equal length.
struct Waveform {
  int sample_rate = 16000;
  std::vector<std::vector<double>> samples;

  int channels() const { return static_cast<int>(samples.size()); }
  long num_samples() const {
    return samples.empty() ? 0 : static_cast<long>(samples[0].size());
  }
};

void validate(const Waveform& w);

// Multi-channel complex spectrum, shape frames x bins x channels,
// row-major with the channel index fastest.
struct ComplexSpectrum {
  int frames = 0;
  int bins = 0;
  int channels = 0;
  StftConfig cfg;
  int sample_rate = 0;
  std::vector<Cplx> data;

  Cplx& at(int t, int f, int c) {
    return data[(static_cast<size_t>(t) * bins + f) * channels + c];
  }
  const Cplx& at(int t, int f, int c) const {
    return data[(static_cast<size_t>(t) * bins + f) * channels + c];
  }
};

// Single-channel real power values, shape frames x bins.
struct PowerSpectrum {
  int frames = 0;
  int bins = 0;
  std::vector<double> v;

  double& at(int t, int f) { return v[static_cast<size_t>(t) * bins + f]; }
  const double& at(int t, int f) const {
    return v[static_cast<size_t>(t) * bins + f];
  }
};

// Periodic window of the given length, w[n] in [0, 1].
std::vector<double> window_samples(Window window, int length);

// Steady-state overlap-add normalizer sum_t w^2(n - t*hop). Throws
// ConfigError if the squared window does not overlap-add to a constant
// (the window/hop pair then cannot reconstruct).
double ola_norm_constant(const StftConfig& cfg);

// Windowed onesided STFT of every channel. Frames start at multiples of
// cfg.hop; a trailing partial frame is kept and zero-padded, so
// frames = ceil((num_samples - fft_size)/hop) + 1. Throws DataError when
// the input is shorter than one frame.
ComplexSpectrum stft(const Waveform& w, const StftConfig& cfg);

// Weighted overlap-add synthesis (analysis and synthesis windows are the
// same), normalized by ola_norm_constant. Output length is
// (frames-1)*hop + fft_size, or trim_samples if nonnegative. Exact
// reconstruction away from the first/last fft_size samples.
Waveform istft(const ComplexSpectrum& spec, long trim_samples = -1);

// Forward-only second-order Butterworth high-pass biquad per channel.
// 0 < cutoff_hz < sample_rate/2 required.
Waveform highpass(const Waveform& w, double cutoff_hz);

}  // namespace mcse

#endif  // MCSE_SIGNAL_H_
