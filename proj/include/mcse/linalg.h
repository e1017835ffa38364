// mcse/linalg.h

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

#ifndef MCSE_LINALG_H_
#define MCSE_LINALG_H_

#include <complex>
#include <vector>

namespace mcse {

using Cplx = std::complex<double>;

// Dense square complex matrix, row-major. Channel counts stay small
// (C <= 16), so no clever storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim) : dim_(dim), a_(dim * dim, Cplx(0, 0)) {}

  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }
  Cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
  const Cplx& operator()(int r, int c) const {
    return a_[static_cast<size_t>(r) * dim_ + c];
  }

 private:
  int dim_ = 0;
  std::vector<Cplx> a_;
};

// Hermitian matrix plus the diagonal loading that produced it (zero when
// none was applied). Obtain one through hermitian_project or
// regularized_inverse; the stored matrix then satisfies A == A^dagger to
// within 1e-12.
struct HermitianMatrix {
  ComplexMatrix m;
  double loading = 0.0;

  int dim() const { return m.dim(); }
  Cplx& operator()(int r, int c) { return m(r, c); }
  const Cplx& operator()(int r, int c) const { return m(r, c); }
};

// (A + A^dagger) / 2.
HermitianMatrix hermitian_project(const ComplexMatrix& a);

// Inverse of (A + eps*I) with eps = eps_rel * trace(A)/dim (eps = eps_rel
// when the trace is zero), computed by Gaussian elimination with partial
// pivoting and Hermitian-projected on the way out. Throws DataError when
// the loaded matrix is still numerically singular (pivot-ratio condition
// estimate above 1e14).
HermitianMatrix regularized_inverse(const HermitianMatrix& a, double eps_rel);

Cplx trace(const ComplexMatrix& a);
inline Cplx trace(const HermitianMatrix& a) { return trace(a.m); }

// y = A x.
std::vector<Cplx> matvec(const ComplexMatrix& a, const std::vector<Cplx>& x);

// Conjugate-linear in the first argument: sum_i conj(u_i) * v_i.
Cplx inner(const std::vector<Cplx>& u, const std::vector<Cplx>& v);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest absolute deviation from Hermitian symmetry, max |A - A^dagger|.
double hermitian_defect(const ComplexMatrix& a);

}  // namespace mcse

#endif  // MCSE_LINALG_H_
