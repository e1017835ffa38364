// mcse/geometry.h

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

#ifndef MCSE_GEOMETRY_H_
#define MCSE_GEOMETRY_H_

#include <vector>

namespace mcse {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(Vec3 a);
double distance(Vec3 a, Vec3 b);

// Microphone positions in meters.
struct ArrayGeometry {
  std::vector<Vec3> mics;

  int size() const { return static_cast<int>(mics.size()); }
  Vec3 centroid() const;
};

// Throws on empty, non-finite or coincident microphone positions.
void validate(const ArrayGeometry& geom);

// Uniform linear array: n equally spaced collinear mics centered at
// `center`, laid out along the unit direction `axis`.
ArrayGeometry ula(int n_mics, double spacing_m, Vec3 center = {0, 0, 0},
                  Vec3 axis = {1, 0, 0});

// Geometry restricted to the given (sorted, unique) mic indices.
ArrayGeometry subset_geometry(const ArrayGeometry& geom,
                              const std::vector<int>& kept);

}  // namespace mcse

#endif  // MCSE_GEOMETRY_H_
