// mcse/fft.h

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

#ifndef MCSE_FFT_H_
#define MCSE_FFT_H_

#include <complex>
#include <vector>

namespace mcse {

// Real-to-complex forward transform of length n = x.size(); returns the
// onesided spectrum of n/2 + 1 bins, unnormalized (bin k = sum_n x[n] e^{-j2pikn/n}).
std::vector<std::complex<double>> rfft(const std::vector<double>& x);

// Inverse of rfft for a real signal of length n; includes the 1/n scaling,
// so irfft(rfft(x), n) == x up to rounding.
std::vector<double> irfft(const std::vector<std::complex<double>>& spec, int n);

// Full linear convolution (size a + b - 1) via zero-padded FFTs.
std::vector<double> fft_convolve(const std::vector<double>& a,
                                 const std::vector<double>& b);

}  // namespace mcse

#endif  // MCSE_FFT_H_
