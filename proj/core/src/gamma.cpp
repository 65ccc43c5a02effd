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

#include "polydist/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "polydist/geom.hpp"

namespace polydist {

namespace {

// Orthonormal tangent basis of a plane with unit normal n.
std::pair<Vec3, Vec3> plane_basis(const Vec3& n) {
  Vec3 t = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 u = normalized(t - dot(t, n) * n);
  Vec3 v = cross(n, u);
  return {u, v};
}

int axis_of_normal(const Vec3& n) {
  for (int a = 0; a < 3; ++a) {
    Vec3 e{};
    e[a] = 1.0;
    if (norm(cross(n, e)) < 1e-12) return a;
  }
  return -1;
}

double rect_distance(const RectPatch& r, const Vec3& x) { return r.distance(x); }

double square_distance(const SquareGamma& s, const Vec3& x) {
  const int axis = axis_of_normal(s.normal);
  if (axis < 0) throw std::invalid_argument("square normal must be a coordinate axis");
  const int au = (axis + 1) % 3, av = (axis + 2) % 3;
  const double hside = 0.5 * s.side;
  const double du = std::max(std::abs(x[au] - s.center[au]) - hside, 0.0);
  const double dv = std::max(std::abs(x[av] - s.center[av]) - hside, 0.0);
  const double dn = x[axis] - s.center[axis];
  return std::sqrt(du * du + dv * dv + dn * dn);
}

Aabb inflated(Aabb b, double m) {
  b.lo -= Vec3{m, m, m};
  b.hi += Vec3{m, m, m};
  return b;
}

Aabb gamma_bounds(const GammaVariant& v, const Domain& domain) {
  Aabb b;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, SphereGamma>) {
          const Vec3 r{g.radius, g.radius, g.radius};
          b.extend(g.center - r);
          b.extend(g.center + r);
        } else if constexpr (std::is_same_v<T, PlanePatchGamma>) {
          Vec3 lo, hi;
          lo[g.rect.axis] = hi[g.rect.axis] = g.rect.coord;
          lo[g.rect.axis_u()] = g.rect.lo_u;
          hi[g.rect.axis_u()] = g.rect.hi_u;
          lo[g.rect.axis_v()] = g.rect.lo_v;
          hi[g.rect.axis_v()] = g.rect.hi_v;
          b.extend(lo);
          b.extend(hi);
        } else if constexpr (std::is_same_v<T, PatchUnionGamma>) {
          for (const RectPatch& r : g.rects) {
            Aabb rb = gamma_bounds(PlanePatchGamma{r}, domain);
            b.extend(rb.lo);
            b.extend(rb.hi);
          }
        } else if constexpr (std::is_same_v<T, CircleGamma> ||
                             std::is_same_v<T, DiskGamma>) {
          const Vec3 r{g.radius, g.radius, g.radius};
          b.extend(g.center - r);
          b.extend(g.center + r);
        } else if constexpr (std::is_same_v<T, SquareGamma>) {
          const double s = 0.5 * g.side * std::sqrt(2.0);
          b.extend(g.center - Vec3{s, s, s});
          b.extend(g.center + Vec3{s, s, s});
        } else if constexpr (std::is_same_v<T, SquarePairGamma>) {
          Aabb b1 = gamma_bounds(g.first, domain);
          Aabb b2 = gamma_bounds(g.second, domain);
          b.extend(b1.lo);
          b.extend(b1.hi);
          b.extend(b2.lo);
          b.extend(b2.hi);
        } else {
          b = domain.box;
        }
      },
      v);
  return b;
}

// Tets of the star tessellation of cell p (apex at the vertex mean).
template <typename F>
void for_cell_tets(const PolyMesh& mesh, int p, F&& fn) {
  const Vec3 apex = mesh.cell_vertex_means[p];
  for (int t : mesh.cell_internal_tris[p])
    fn(std::array<Vec3, 4>{apex, mesh.tris[t].pts[0], mesh.tris[t].pts[1],
                           mesh.tris[t].pts[2]});
  for (int t : mesh.cell_boundary_tris[p])
    fn(std::array<Vec3, 4>{apex, mesh.tris[t].pts[0], mesh.tris[t].pts[1],
                           mesh.tris[t].pts[2]});
}

// In-plane section of a tet mapped to 2D coordinates around `center`.
std::vector<std::array<double, 2>> tet_section_2d(const std::array<Vec3, 4>& tet,
                                                  const Vec3& center, const Vec3& normal,
                                                  double tol) {
  const auto pts = tet_plane_section(tet, center, normal, tol);
  const auto [eu, ev] = plane_basis(normal);
  std::vector<std::array<double, 2>> out;
  out.reserve(pts.size());
  for (const Vec3& p : pts) {
    const Vec3 d = p - center;
    out.push_back({dot(d, eu), dot(d, ev)});
  }
  return out;
}

bool tet_intersects(const GammaVariant& v, const Domain& domain,
                    const std::array<Vec3, 4>& tet, double tol) {
  return std::visit(
      [&](const auto& g) -> bool {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, SphereGamma>) {
          const double dmin = point_tet_distance(g.center, tet);
          const double dmax = point_tet_max_distance(g.center, tet);
          return dmin <= g.radius + tol && g.radius <= dmax + tol;
        } else if constexpr (std::is_same_v<T, PlanePatchGamma>) {
          Vec3 n{};
          n[g.rect.axis] = 1.0;
          Vec3 origin{};
          origin[g.rect.axis] = g.rect.coord;
          origin[g.rect.axis_u()] = 0.0;
          auto pts = tet_plane_section(tet, origin, n, tol);
          if (pts.empty()) return false;
          std::vector<std::array<double, 2>> uv;
          uv.reserve(pts.size());
          for (const Vec3& p : pts) uv.push_back({p[g.rect.axis_u()], p[g.rect.axis_v()]});
          return convex_points_intersect_box2(uv, g.rect.lo_u - tol, g.rect.hi_u + tol,
                                              g.rect.lo_v - tol, g.rect.hi_v + tol);
        } else if constexpr (std::is_same_v<T, PatchUnionGamma>) {
          for (const RectPatch& r : g.rects)
            if (tet_intersects(PlanePatchGamma{r}, domain, tet, tol)) return true;
          return false;
        } else if constexpr (std::is_same_v<T, CircleGamma>) {
          auto uv = tet_section_2d(tet, g.center, g.normal, tol);
          if (uv.empty()) return false;
          return polygon2_min_distance(uv) <= g.radius + tol &&
                 g.radius <= polygon2_max_distance(uv) + tol;
        } else if constexpr (std::is_same_v<T, DiskGamma>) {
          auto uv = tet_section_2d(tet, g.center, g.normal, tol);
          if (uv.empty()) return false;
          return polygon2_min_distance(uv) <= g.radius + tol;
        } else if constexpr (std::is_same_v<T, SquareGamma>) {
          const int axis = axis_of_normal(g.normal);
          if (axis < 0)
            throw std::invalid_argument("square normal must be a coordinate axis");
          Vec3 n{};
          n[axis] = 1.0;
          auto pts = tet_plane_section(tet, g.center, n, tol);
          if (pts.empty()) return false;
          const int au = (axis + 1) % 3, av = (axis + 2) % 3;
          std::vector<std::array<double, 2>> uv;
          uv.reserve(pts.size());
          for (const Vec3& p : pts)
            uv.push_back({p[au] - g.center[au], p[av] - g.center[av]});
          const double hs = 0.5 * g.side;
          return convex_points_intersect_box2(uv, -hs - tol, hs + tol, -hs - tol, hs + tol);
        } else if constexpr (std::is_same_v<T, SquarePairGamma>) {
          return tet_intersects(g.first, domain, tet, tol) ||
                 tet_intersects(g.second, domain, tet, tol);
        } else {
          (void)g;
          return false;  // whole boundary handled at the cell level
        }
      },
      v);
}

}  // namespace

bool GammaSpec::on_boundary(const Domain& domain) const {
  const double tol = 1e-9 * std::cbrt(domain.volume());
  return std::visit(
      [&](const auto& g) -> bool {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, WholeBoundaryGamma>) {
          return true;
        } else if constexpr (std::is_same_v<T, PlanePatchGamma> ||
                             std::is_same_v<T, PatchUnionGamma>) {
          // Patches must coincide with boundary planes.
          std::vector<RectPatch> rects;
          if constexpr (std::is_same_v<T, PlanePatchGamma>)
            rects.push_back(g.rect);
          else
            rects = g.rects;
          for (const RectPatch& r : rects) {
            bool on_wall = false;
            for (const RectPatch& w : domain.boundary_patches()) {
              if (w.axis == r.axis && std::abs(w.coord - r.coord) <= tol &&
                  r.lo_u >= w.lo_u - tol && r.hi_u <= w.hi_u + tol &&
                  r.lo_v >= w.lo_v - tol && r.hi_v <= w.hi_v + tol) {
                on_wall = true;
                break;
              }
            }
            if (!on_wall) throw std::runtime_error("mixed Gamma unsupported");
          }
          return true;
        } else {
          // Interior sources must keep clear of the boundary.
          const Aabb gb = gamma_bounds(v_, domain);
          Vec3 corners[8];
          int ci = 0;
          for (double x : {gb.lo.x, gb.hi.x})
            for (double y : {gb.lo.y, gb.hi.y})
              for (double z : {gb.lo.z, gb.hi.z}) corners[ci++] = Vec3{x, y, z};
          for (const Vec3& c : corners)
            if (!domain.contains(c, tol)) throw std::runtime_error("mixed Gamma unsupported");
          // Bounding box inside the domain is not enough if the cut carves
          // into it; check box-cut overlap.
          if (domain.cut && domain.cut->overlaps(gb)) {
            Aabb shrunk = *domain.cut;
            shrunk.lo += Vec3{tol, tol, tol};
            shrunk.hi -= Vec3{tol, tol, tol};
            if (shrunk.overlaps(gb)) throw std::runtime_error("mixed Gamma unsupported");
          }
          return false;
        }
      },
      v_);
}

double GammaSpec::exact_distance(const Domain& domain, const Vec3& x) const {
  return std::visit(
      [&](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, SphereGamma>) {
          return std::abs(norm(x - g.center) - g.radius);
        } else if constexpr (std::is_same_v<T, PlanePatchGamma>) {
          return rect_distance(g.rect, x);
        } else if constexpr (std::is_same_v<T, PatchUnionGamma>) {
          double d = std::numeric_limits<double>::max();
          for (const RectPatch& r : g.rects) d = std::min(d, rect_distance(r, x));
          return d;
        } else if constexpr (std::is_same_v<T, CircleGamma>) {
          const Vec3 d = x - g.center;
          const double h = dot(d, g.normal);
          const double rho = norm(d - h * g.normal);
          return std::hypot(rho - g.radius, h);
        } else if constexpr (std::is_same_v<T, DiskGamma>) {
          const Vec3 d = x - g.center;
          const double h = dot(d, g.normal);
          const double rho = norm(d - h * g.normal);
          if (rho <= g.radius) return std::abs(h);
          return std::hypot(rho - g.radius, h);
        } else if constexpr (std::is_same_v<T, SquareGamma>) {
          return square_distance(g, x);
        } else if constexpr (std::is_same_v<T, SquarePairGamma>) {
          return std::min(square_distance(g.first, x), square_distance(g.second, x));
        } else {
          (void)g;
          return domain.wall_distance(x);
        }
      },
      v_);
}

bool GammaSpec::intersects_cell(const PolyMesh& mesh, const Domain& domain, int p) const {
  if (std::holds_alternative<WholeBoundaryGamma>(v_)) {
    for (int g : mesh.cells[p].faces)
      for (int v : mesh.faces[g].verts)
        if (mesh.vertex_on_boundary[v]) return true;
    return false;
  }
  const double tol = 1e-9 * mesh.h;
  bool hit = false;
  for_cell_tets(mesh, p, [&](const std::array<Vec3, 4>& tet) {
    if (!hit && tet_intersects(v_, domain, tet, tol)) hit = true;
  });
  return hit;
}

std::string GammaSpec::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, SphereGamma>)
          os << "sphere(r=" << g.radius << ")";
        else if constexpr (std::is_same_v<T, PlanePatchGamma>)
          os << "plane-patch(axis=" << g.rect.axis << ")";
        else if constexpr (std::is_same_v<T, PatchUnionGamma>)
          os << "patch-union(" << g.rects.size() << ")";
        else if constexpr (std::is_same_v<T, CircleGamma>)
          os << "circle(r=" << g.radius << ")";
        else if constexpr (std::is_same_v<T, DiskGamma>)
          os << "disk(r=" << g.radius << ")";
        else if constexpr (std::is_same_v<T, SquareGamma>)
          os << "square(side=" << g.side << ")";
        else if constexpr (std::is_same_v<T, SquarePairGamma>)
          os << "square-pair(side=" << g.first.side << ")";
        else
          os << "whole-boundary";
      },
      v_);
  return os.str();
}

CellBinIndex::CellBinIndex(const PolyMesh& mesh, int bins_per_axis)
    : nbins_(std::max(bins_per_axis, 1)) {
  domain_ = mesh.bounding_box();
  const Vec3 e = domain_.extents();
  inv_width_ = {nbins_ / std::max(e.x, 1e-300), nbins_ / std::max(e.y, 1e-300),
                nbins_ / std::max(e.z, 1e-300)};
  bins_.resize(static_cast<std::size_t>(nbins_) * nbins_ * nbins_);
  for (std::size_t p = 0; p < mesh.num_cells(); ++p) {
    Aabb bb;
    for (int fi : mesh.cells[p].faces)
      for (int v : mesh.faces[fi].verts) bb.extend(mesh.vertices[v]);
    int lo[3], hi[3];
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::clamp(
          static_cast<int>((bb.lo[a] - domain_.lo[a]) * inv_width_[a]), 0, nbins_ - 1);
      hi[a] = std::clamp(
          static_cast<int>((bb.hi[a] - domain_.lo[a]) * inv_width_[a]), 0, nbins_ - 1);
    }
    for (int k = lo[2]; k <= hi[2]; ++k)
      for (int j = lo[1]; j <= hi[1]; ++j)
        for (int i = lo[0]; i <= hi[0]; ++i)
          bins_[(static_cast<std::size_t>(k) * nbins_ + j) * nbins_ + i].push_back(
              static_cast<int>(p));
  }
}

std::vector<int> CellBinIndex::query(const Aabb& box) const {
  int lo[3], hi[3];
  for (int a = 0; a < 3; ++a) {
    lo[a] = std::clamp(static_cast<int>((box.lo[a] - domain_.lo[a]) * inv_width_[a]), 0,
                       nbins_ - 1);
    hi[a] = std::clamp(static_cast<int>((box.hi[a] - domain_.lo[a]) * inv_width_[a]), 0,
                       nbins_ - 1);
  }
  std::vector<int> out;
  for (int k = lo[2]; k <= hi[2]; ++k)
    for (int j = lo[1]; j <= hi[1]; ++j)
      for (int i = lo[0]; i <= hi[0]; ++i) {
        const auto& b = bins_[(static_cast<std::size_t>(k) * nbins_ + j) * nbins_ + i];
        out.insert(out.end(), b.begin(), b.end());
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CellClassification classify_cells(const PolyMesh& mesh, const Domain& domain,
                                  const GammaSpec& gamma) {
  const bool boundary = gamma.on_boundary(domain);
  CellClassification out;
  std::vector<int>& hits =
      boundary ? out.boundary_source_cells : out.interior_source_cells;

  if (std::holds_alternative<WholeBoundaryGamma>(gamma.variant())) {
    for (std::size_t p = 0; p < mesh.num_cells(); ++p)
      if (gamma.intersects_cell(mesh, domain, static_cast<int>(p)))
        hits.push_back(static_cast<int>(p));
    return out;
  }

  // Prune candidates with a uniform-bin index around the source bounds.
  const int bins = std::max(
      2, static_cast<int>(std::cbrt(static_cast<double>(mesh.num_cells())) / 2.0));
  const CellBinIndex index(mesh, bins);
  const Aabb query = inflated(gamma_bounds(gamma.variant(), domain), 1e-6 * mesh.h);
  for (int p : index.query(query))
    if (gamma.intersects_cell(mesh, domain, p)) hits.push_back(p);
  return out;
}

std::vector<int> dilate(const PolyMesh& mesh, const std::vector<int>& K) {
  std::set<int> out(K.begin(), K.end());
  for (int p : K)
    for (int q : mesh.cell_neighbors[p]) out.insert(q);
  return {out.begin(), out.end()};
}

SeedSet build_seed_set(const PolyMesh& mesh, const Domain& domain, const GammaSpec& gamma) {
  const CellClassification cls = classify_cells(mesh, domain, gamma);

  std::vector<int> seeded;
  SeedSet::Provenance from;
  if (!cls.boundary_source_cells.empty()) {
    seeded = dilate(mesh, cls.boundary_source_cells);
    from = SeedSet::Provenance::kBoundarySource;
  } else {
    seeded = dilate(mesh, dilate(mesh, cls.interior_source_cells));
    from = SeedSet::Provenance::kInteriorSource;
  }

  SeedSet s;
  s.is_pinned.assign(mesh.num_cells(), 0);
  s.pinned_value.assign(mesh.num_cells(), 0.0);
  s.entries.reserve(seeded.size());
  for (int p : seeded) {
    const double d = gamma.exact_distance(domain, mesh.cell_centers[p]);
    s.entries.push_back({p, d, from});
    s.is_pinned[p] = 1;
    s.pinned_value[p] = d;
  }
  return s;
}

BoundaryData build_boundary_data(const PolyMesh& mesh, const Domain& domain,
                                 const GammaSpec& gamma) {
  BoundaryData bd;
  bd.tri_is_dirichlet.assign(mesh.tris.size(), 0);
  bd.tri_value.assign(mesh.tris.size(), 0.0);
  if (!gamma.on_boundary(domain)) return bd;

  const double tol = 1e-9 * mesh.h;
  for (std::size_t p = 0; p < mesh.num_cells(); ++p) {
    for (int t : mesh.cell_boundary_tris[p]) {
      const double d = gamma.exact_distance(domain, mesh.tris[t].center);
      if (d <= tol) {
        bd.tri_is_dirichlet[t] = 1;
        bd.tri_value[t] = d;
        bd.dirichlet_tris.push_back(t);
      }
    }
  }
  return bd;
}

}  // namespace polydist
