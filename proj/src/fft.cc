// mcse/fft.cc

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

#include "mcse/fft.h"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace mcse {

namespace {

// FFTW plan creation is not thread-safe; execution on caller-owned arrays is.
// Plans are cached per transform size and created with FFTW_UNALIGNED so the
// new-array execute functions accept plain std::vector storage.
std::mutex g_plan_mutex;

fftw_plan r2c_plan(int n) {
  static std::map<int, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> in(n);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan plan = fftw_plan_dft_r2c_1d(
      n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(n, plan);
  return plan;
}

fftw_plan c2r_plan(int n) {
  static std::map<int, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> in(n / 2 + 1);
  std::vector<double> out(n);
  fftw_plan plan = fftw_plan_dft_c2r_1d(
      n, reinterpret_cast<fftw_complex*>(in.data()), out.data(),
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(n, plan);
  return plan;
}

int next_pow2(long n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("rfft: empty input");
  int n = static_cast<int>(x.size());
  std::vector<double> in(x);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(r2c_plan(n), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& spec, int n) {
  if (n <= 0 || static_cast<int>(spec.size()) != n / 2 + 1)
    throw std::invalid_argument("irfft: spectrum size does not match length");
  // c2r destroys its input, so work on a copy.
  std::vector<std::complex<double>> in(spec);
  std::vector<double> out(n);
  fftw_execute_dft_c2r(c2r_plan(n), reinterpret_cast<fftw_complex*>(in.data()),
                       out.data());
  for (double& v : out) v /= n;
  return out;
}

std::vector<double> fft_convolve(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("fft_convolve: empty input");
  long out_len = static_cast<long>(a.size()) + static_cast<long>(b.size()) - 1;
  int n = next_pow2(out_len);
  std::vector<double> pa(n, 0.0), pb(n, 0.0);
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  std::vector<std::complex<double>> fa = rfft(pa), fb = rfft(pb);
  for (size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  std::vector<double> full = irfft(fa, n);
  full.resize(out_len);
  return full;
}

}  // namespace mcse
