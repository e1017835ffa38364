// mcse/linalg.cc

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

#include "mcse/linalg.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mcse/error.h"

namespace mcse {

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = Cplx(1.0, 0.0);
  return m;
}

HermitianMatrix hermitian_project(const ComplexMatrix& a) {
  const int n = a.dim();
  HermitianMatrix h;
  h.m = ComplexMatrix(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      h.m(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));
  return h;
}

HermitianMatrix regularized_inverse(const HermitianMatrix& a, double eps_rel) {
  if (eps_rel < 0.0)
    throw std::invalid_argument("regularized_inverse: eps_rel must be >= 0");
  const int n = a.dim();
  if (n == 0) throw std::invalid_argument("regularized_inverse: empty matrix");

  const double tr = trace(a).real();
  const double eps = (eps_rel > 0.0)
                         ? (tr != 0.0 ? eps_rel * tr / n : eps_rel)
                         : 0.0;

  // Gauss-Jordan with partial pivoting on [A + eps*I | I].
  ComplexMatrix work = a.m;
  for (int i = 0; i < n; ++i) work(i, i) += eps;
  ComplexMatrix inv = ComplexMatrix::identity(n);

  double max_pivot = 0.0, min_pivot = 0.0;
  for (int col = 0; col < n; ++col) {
    int pivot_row = col;
    double pivot_mag = std::abs(work(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double mag = std::abs(work(r, col));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = r;
      }
    }
    if (col == 0) {
      max_pivot = min_pivot = pivot_mag;
    } else {
      max_pivot = std::max(max_pivot, pivot_mag);
      min_pivot = std::min(min_pivot, pivot_mag);
    }
    // Pivot-ratio condition estimate; catches exact singularity and the
    // rank-deficient PSDs that masks can produce.
    if (pivot_mag == 0.0 || max_pivot / pivot_mag > 1e14)
      throw DataError(
          "matrix numerically singular (pivot-ratio condition estimate > "
          "1e14); increase diagonal loading");
    if (pivot_row != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(work(pivot_row, c), work(col, c));
        std::swap(inv(pivot_row, c), inv(col, c));
      }
    }
    const Cplx piv = work(col, col);
    for (int c = 0; c < n; ++c) {
      work(col, c) /= piv;
      inv(col, c) /= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Cplx factor = work(r, col);
      if (factor == Cplx(0.0, 0.0)) continue;
      for (int c = 0; c < n; ++c) {
        work(r, c) -= factor * work(col, c);
        inv(r, c) -= factor * inv(col, c);
      }
    }
  }

  HermitianMatrix result = hermitian_project(inv);
  result.loading = eps;
  return result;
}

Cplx trace(const ComplexMatrix& a) {
  Cplx t(0.0, 0.0);
  for (int i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

std::vector<Cplx> matvec(const ComplexMatrix& a, const std::vector<Cplx>& x) {
  const int n = a.dim();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<Cplx> y(n, Cplx(0.0, 0.0));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) y[r] += a(r, c) * x[c];
  return y;
}

Cplx inner(const std::vector<Cplx>& u, const std::vector<Cplx>& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("inner: dimension mismatch");
  Cplx s(0.0, 0.0);
  for (size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("matmul: dimension mismatch");
  const int n = a.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Cplx aik = a(i, k);
      if (aik == Cplx(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

double hermitian_defect(const ComplexMatrix& a) {
  double worst = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      worst = std::max(worst, std::abs(a(r, c) - std::conj(a(c, r))));
  return worst;
}

}  // namespace mcse
