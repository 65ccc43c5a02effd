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

#include "polydist/domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polydist {

double RectPatch::distance(const Vec3& p) const {
  return norm(p - closest_point(p));
}

Vec3 RectPatch::closest_point(const Vec3& p) const {
  Vec3 q;
  q[axis] = coord;
  q[axis_u()] = std::clamp(p[axis_u()], lo_u, hi_u);
  q[axis_v()] = std::clamp(p[axis_v()], lo_v, hi_v);
  return q;
}

Domain Domain::make_box(const Vec3& lo, const Vec3& hi) {
  Domain d;
  d.box.lo = lo;
  d.box.hi = hi;
  for (int a = 0; a < 3; ++a) {
    if (!(lo[a] < hi[a])) throw std::invalid_argument("domain box has empty extent");
  }
  return d;
}

Domain Domain::make_box_minus_box(const Vec3& lo, const Vec3& hi, const Vec3& cut_lo,
                                  const Vec3& cut_hi) {
  Domain d = make_box(lo, hi);
  Aabb c;
  c.lo = cut_lo;
  c.hi = cut_hi;
  for (int a = 0; a < 3; ++a) {
    if (!(cut_lo[a] < cut_hi[a])) throw std::invalid_argument("cut box has empty extent");
    if (cut_lo[a] < lo[a] || cut_hi[a] > hi[a])
      throw std::invalid_argument("cut box must lie inside the outer box");
  }
  d.cut = c;
  return d;
}

bool Domain::contains(const Vec3& p, double tol) const {
  if (!box.contains(p, tol)) return false;
  return !in_open_cut(p, tol);
}

bool Domain::in_open_cut(const Vec3& p, double tol) const {
  if (!cut) return false;
  return cut->contains_interior(p, tol);
}

double Domain::volume() const {
  double v = box.volume();
  if (cut) v -= cut->volume();
  return v;
}

namespace {

struct Rect2 {
  double lo_u, hi_u, lo_v, hi_v;
  bool empty() const { return lo_u >= hi_u || lo_v >= hi_v; }
};

// a minus b as up to four rectangles.
void rect_subtract(const Rect2& a, const Rect2& b, std::vector<Rect2>& out) {
  Rect2 ov{std::max(a.lo_u, b.lo_u), std::min(a.hi_u, b.hi_u), std::max(a.lo_v, b.lo_v),
           std::min(a.hi_v, b.hi_v)};
  if (ov.empty()) {
    out.push_back(a);
    return;
  }
  const Rect2 left{a.lo_u, ov.lo_u, a.lo_v, a.hi_v};
  const Rect2 right{ov.hi_u, a.hi_u, a.lo_v, a.hi_v};
  const Rect2 bottom{ov.lo_u, ov.hi_u, a.lo_v, ov.lo_v};
  const Rect2 top{ov.lo_u, ov.hi_u, ov.hi_v, a.hi_v};
  for (const Rect2& r : {left, right, bottom, top})
    if (!r.empty()) out.push_back(r);
}

}  // namespace

std::vector<RectPatch> Domain::boundary_patches() const {
  std::vector<RectPatch> patches;
  for (int axis = 0; axis < 3; ++axis) {
    const int au = (axis + 1) % 3;
    const int av = (axis + 2) % 3;
    for (int side = 0; side < 2; ++side) {
      const double coord = side == 0 ? box.lo[axis] : box.hi[axis];
      const int outward = side == 0 ? -1 : +1;
      const Rect2 full{box.lo[au], box.hi[au], box.lo[av], box.hi[av]};
      std::vector<Rect2> pieces;
      const bool cut_touches =
          cut && (side == 0 ? cut->lo[axis] == box.lo[axis] : cut->hi[axis] == box.hi[axis]);
      if (cut_touches) {
        const Rect2 shadow{cut->lo[au], cut->hi[au], cut->lo[av], cut->hi[av]};
        rect_subtract(full, shadow, pieces);
      } else {
        pieces.push_back(full);
      }
      for (const Rect2& r : pieces)
        patches.push_back({axis, coord, r.lo_u, r.hi_u, r.lo_v, r.hi_v, outward});
    }
  }
  if (cut) {
    // Exposed cut faces; outward normal of the domain points into the cut.
    for (int axis = 0; axis < 3; ++axis) {
      const int au = (axis + 1) % 3;
      const int av = (axis + 2) % 3;
      for (int side = 0; side < 2; ++side) {
        const double coord = side == 0 ? cut->lo[axis] : cut->hi[axis];
        const bool on_outer = (side == 0 ? coord == box.lo[axis] : coord == box.hi[axis]);
        if (on_outer) continue;
        const int outward = side == 0 ? +1 : -1;
        patches.push_back(
            {axis, coord, cut->lo[au], cut->hi[au], cut->lo[av], cut->hi[av], outward});
      }
    }
  }
  return patches;
}

double Domain::wall_distance(const Vec3& p) const {
  double d = std::numeric_limits<double>::max();
  for (const RectPatch& patch : boundary_patches()) d = std::min(d, patch.distance(p));
  return d;
}

}  // namespace polydist
