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

#include <array>
#include <vector>

#include "polydist/vec3.hpp"

namespace polydist {

/// Closest point on a triangle to `p` (Voronoi-region walk).
Vec3 closest_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

/// Distance from a point to a (possibly degenerate) tetrahedron; 0 inside.
double point_tet_distance(const Vec3& p, const std::array<Vec3, 4>& tet);

/// Max distance from `p` to the tetrahedron (attained at a corner).
double point_tet_max_distance(const Vec3& p, const std::array<Vec3, 4>& tet);

/// Cross-section of a tetrahedron with the plane n.(x - origin) = 0.
/// Returns the section polygon vertices (unordered suffices for convex
/// min/max queries, but they are returned ordered around their mean);
/// empty when the tet does not touch the plane. Vertices within
/// `tol` of the plane are included.
std::vector<Vec3> tet_plane_section(const std::array<Vec3, 4>& tet, const Vec3& origin,
                                    const Vec3& unit_normal, double tol);

/// Min distance from the 2D origin to a point set interpreted as the convex
/// polygon hull boundary+interior (0 when the origin is inside the hull).
double polygon2_min_distance(const std::vector<std::array<double, 2>>& pts);

/// Max distance from the 2D origin over the points.
double polygon2_max_distance(const std::vector<std::array<double, 2>>& pts);

/// Convex polygon (as point cloud of its vertices) vs axis-aligned 2D box
/// intersection test, boundaries included.
bool convex_points_intersect_box2(const std::vector<std::array<double, 2>>& pts,
                                  double lo_u, double hi_u, double lo_v, double hi_v);

}  // namespace polydist
