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

#include "polydist/geom.hpp"

#include <algorithm>
#include <cmath>

namespace polydist {

Vec3 closest_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Vec3 bp = p - b;
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;

  const Vec3 cp = p - c;
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);

  const double denom = 1.0 / (va + vb + vc);
  return a + (vb * denom) * ab + (vc * denom) * ac;
}

double point_tet_distance(const Vec3& p, const std::array<Vec3, 4>& tet) {
  // Inside test via consistent signed volumes.
  const auto signed6 = [](const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    return dot(b - a, cross(c - a, d - a));
  };
  const double v = signed6(tet[0], tet[1], tet[2], tet[3]);
  if (v != 0.0) {
    const double s = v > 0.0 ? 1.0 : -1.0;
    const bool inside = s * signed6(p, tet[1], tet[2], tet[3]) >= 0.0 &&
                        s * signed6(tet[0], p, tet[2], tet[3]) >= 0.0 &&
                        s * signed6(tet[0], tet[1], p, tet[3]) >= 0.0 &&
                        s * signed6(tet[0], tet[1], tet[2], p) >= 0.0;
    if (inside) return 0.0;
  }
  double best = std::numeric_limits<double>::max();
  static constexpr int kFaces[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (const auto& f : kFaces) {
    const Vec3 q = closest_point_triangle(p, tet[f[0]], tet[f[1]], tet[f[2]]);
    best = std::min(best, norm(p - q));
  }
  return best;
}

double point_tet_max_distance(const Vec3& p, const std::array<Vec3, 4>& tet) {
  double best = 0.0;
  for (const Vec3& q : tet) best = std::max(best, norm(p - q));
  return best;
}

std::vector<Vec3> tet_plane_section(const std::array<Vec3, 4>& tet, const Vec3& origin,
                                    const Vec3& unit_normal, double tol) {
  std::array<double, 4> s;
  for (int i = 0; i < 4; ++i) s[i] = dot(tet[i] - origin, unit_normal);

  std::vector<Vec3> pts;
  for (int i = 0; i < 4; ++i)
    if (std::abs(s[i]) <= tol) pts.push_back(tet[i]);
  static constexpr int kEdges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (const auto& e : kEdges) {
    const double sa = s[e[0]], sb = s[e[1]];
    if ((sa > tol && sb < -tol) || (sa < -tol && sb > tol)) {
      const double t = sa / (sa - sb);
      pts.push_back(tet[e[0]] + t * (tet[e[1]] - tet[e[0]]));
    }
  }
  // Dedupe near-coincident points.
  std::vector<Vec3> uniq;
  for (const Vec3& p : pts) {
    bool seen = false;
    for (const Vec3& q : uniq)
      if (norm2(p - q) <= tol * tol) {
        seen = true;
        break;
      }
    if (!seen) uniq.push_back(p);
  }
  if (uniq.size() > 3) {
    // Order around the mean so the points form a convex polygon.
    Vec3 mean{};
    for (const Vec3& p : uniq) mean += p;
    mean /= static_cast<double>(uniq.size());
    Vec3 ref = uniq[0] - mean;
    const Vec3 refn = cross(unit_normal, ref);
    std::sort(uniq.begin(), uniq.end(), [&](const Vec3& a, const Vec3& b) {
      const Vec3 da = a - mean, db = b - mean;
      return std::atan2(dot(da, refn), dot(da, ref)) <
             std::atan2(dot(db, refn), dot(db, ref));
    });
  }
  return uniq;
}

double polygon2_min_distance(const std::vector<std::array<double, 2>>& pts) {
  if (pts.empty()) return std::numeric_limits<double>::max();
  if (pts.size() == 1) return std::hypot(pts[0][0], pts[0][1]);
  if (pts.size() == 2) {
    // Point-segment distance from the origin.
    const double ax = pts[0][0], ay = pts[0][1];
    const double bx = pts[1][0], by = pts[1][1];
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? -(ax * dx + ay * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(ax + t * dx, ay + t * dy);
  }
  // Inside test (convex, ordered polygon): consistent cross-product sign.
  int pos = 0, neg = 0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % n];
    const double cr = (b[0] - a[0]) * (-a[1]) - (b[1] - a[1]) * (-a[0]);
    if (cr > 0) ++pos;
    if (cr < 0) ++neg;
  }
  if (pos == 0 || neg == 0) return 0.0;
  double best = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % n];
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? -(a[0] * dx + a[1] * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(a[0] + t * dx, a[1] + t * dy));
  }
  return best;
}

double polygon2_max_distance(const std::vector<std::array<double, 2>>& pts) {
  double best = 0.0;
  for (const auto& p : pts) best = std::max(best, std::hypot(p[0], p[1]));
  return best;
}

bool convex_points_intersect_box2(const std::vector<std::array<double, 2>>& pts,
                                  double lo_u, double hi_u, double lo_v, double hi_v) {
  if (pts.empty()) return false;
  // Separating axis test. Axes: box axes plus polygon edge normals.
  auto project_minmax = [&](double ax, double ay, double& mn, double& mx) {
    mn = std::numeric_limits<double>::max();
    mx = std::numeric_limits<double>::lowest();
    for (const auto& p : pts) {
      const double s = p[0] * ax + p[1] * ay;
      mn = std::min(mn, s);
      mx = std::max(mx, s);
    }
  };
  double mn, mx;
  project_minmax(1.0, 0.0, mn, mx);
  if (mx < lo_u || mn > hi_u) return false;
  project_minmax(0.0, 1.0, mn, mx);
  if (mx < lo_v || mn > hi_v) return false;

  const std::size_t n = pts.size();
  if (n < 3) {
    // Segment or point: the two box-axis tests plus the segment normal.
    if (n == 2) {
      const double ex = pts[1][0] - pts[0][0], ey = pts[1][1] - pts[0][1];
      const double ax = -ey, ay = ex;
      project_minmax(ax, ay, mn, mx);
      double bmn = std::numeric_limits<double>::max();
      double bmx = std::numeric_limits<double>::lowest();
      for (const double u : {lo_u, hi_u})
        for (const double v : {lo_v, hi_v}) {
          const double s = u * ax + v * ay;
          bmn = std::min(bmn, s);
          bmx = std::max(bmx, s);
        }
      if (mx < bmn || mn > bmx) return false;
    }
    return true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % n];
    const double ax = -(b[1] - a[1]), ay = b[0] - a[0];
    if (ax == 0.0 && ay == 0.0) continue;
    project_minmax(ax, ay, mn, mx);
    double bmn = std::numeric_limits<double>::max();
    double bmx = std::numeric_limits<double>::lowest();
    for (const double u : {lo_u, hi_u})
      for (const double v : {lo_v, hi_v}) {
        const double s = u * ax + v * ay;
        bmn = std::min(bmn, s);
        bmx = std::max(bmx, s);
      }
    if (mx < bmn || mn > bmx) return false;
  }
  return true;
}

}  // namespace polydist
