// mcse/geometry.cc

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

#include "mcse/geometry.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mcse/error.h"

namespace mcse {

double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
double distance(Vec3 a, Vec3 b) { return norm(a - b); }

Vec3 ArrayGeometry::centroid() const {
  Vec3 c{0, 0, 0};
  for (const Vec3& m : mics) c = c + m;
  return mics.empty() ? c : (1.0 / mics.size()) * c;
}

void validate(const ArrayGeometry& geom) {
  if (geom.mics.empty())
    throw DataError("array geometry: need at least one microphone");
  for (const Vec3& m : geom.mics)
    if (!std::isfinite(m.x) || !std::isfinite(m.y) || !std::isfinite(m.z))
      throw DataError("array geometry: non-finite microphone position");
  for (size_t i = 0; i < geom.mics.size(); ++i)
    for (size_t j = i + 1; j < geom.mics.size(); ++j)
      if (distance(geom.mics[i], geom.mics[j]) == 0.0)
        throw DataError("array geometry: coincident microphones " +
                        std::to_string(i) + " and " + std::to_string(j));
}

ArrayGeometry ula(int n_mics, double spacing_m, Vec3 center, Vec3 axis) {
  if (n_mics < 1) throw std::invalid_argument("ula: need n_mics >= 1");
  if (!(spacing_m > 0.0) && n_mics > 1)
    throw std::invalid_argument("ula: spacing must be > 0");
  const double axis_norm = norm(axis);
  if (!(axis_norm > 0.0)) throw std::invalid_argument("ula: zero axis");
  const Vec3 dir = (1.0 / axis_norm) * axis;

  ArrayGeometry geom;
  geom.mics.reserve(n_mics);
  for (int i = 0; i < n_mics; ++i) {
    const double offset = (i - 0.5 * (n_mics - 1)) * spacing_m;
    geom.mics.push_back(center + offset * dir);
  }
  return geom;
}

ArrayGeometry subset_geometry(const ArrayGeometry& geom,
                              const std::vector<int>& kept) {
  ArrayGeometry out;
  out.mics.reserve(kept.size());
  for (int idx : kept) {
    if (idx < 0 || idx >= geom.size())
      throw std::invalid_argument("subset_geometry: mic index out of range");
    out.mics.push_back(geom.mics[idx]);
  }
  validate(out);
  return out;
}

}  // namespace mcse
