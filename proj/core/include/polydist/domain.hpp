// Copyright 2026 The polydist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <vector>

#include "polydist/vec3.hpp"

namespace polydist {

/// Axis-aligned rectangle embedded in 3D: the plane `x[axis] == coord`,
/// spanning [lo, hi] in the two remaining coordinates (cyclic order:
/// axis u = (axis+1)%3, axis v = (axis+2)%3). `outward` is +1/-1 along
/// `axis` when the rectangle is part of a domain boundary.
struct RectPatch {
  int axis = 0;
  double coord = 0.0;
  double lo_u = 0.0, hi_u = 0.0;
  double lo_v = 0.0, hi_v = 0.0;
  int outward = 1;

  int axis_u() const { return (axis + 1) % 3; }
  int axis_v() const { return (axis + 2) % 3; }

  /// Euclidean distance from a point to the (closed) rectangle.
  double distance(const Vec3& p) const;

  /// Closest point of the rectangle to `p`.
  Vec3 closest_point(const Vec3& p) const;
};

/// Computational domain: an axis-aligned box, optionally with an axis-aligned
/// box removed (the cut reproduces the non-convex shapes used by the test
/// problems). The cut may share faces with the outer box.
struct Domain {
  Aabb box;
  std::optional<Aabb> cut;

  static Domain make_box(const Vec3& lo, const Vec3& hi);
  static Domain make_box_minus_box(const Vec3& lo, const Vec3& hi, const Vec3& cut_lo,
                                   const Vec3& cut_hi);

  bool has_cut() const { return cut.has_value(); }

  /// Point membership in the closed domain (tolerance applied on all planes).
  bool contains(const Vec3& p, double tol = 0.0) const;

  /// Strictly inside the removed region by more than `tol`.
  bool in_open_cut(const Vec3& p, double tol = 0.0) const;

  double volume() const;

  /// Boundary decomposed into axis-aligned rectangles with outward normals.
  /// Outer faces partially covered by the cut are split into up to four
  /// rectangles; exposed cut faces appear with outward normal pointing into
  /// the removed region.
  std::vector<RectPatch> boundary_patches() const;

  /// Distance from an interior point to the nearest boundary patch
  /// (straight-line; valid near the boundary even in non-convex domains).
  double wall_distance(const Vec3& p) const;
};

}  // namespace polydist
