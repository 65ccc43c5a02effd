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

#include "polydist/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace polydist {

namespace {

Vec3 triangle_normal(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * cross(b - a, c - a);
}

double mesh_scale_sq(std::span<const Vec3> pts) {
  Aabb bb;
  for (const Vec3& p : pts) bb.extend(p);
  const Vec3 e = bb.extents();
  return std::max({e.x, e.y, e.z, 1.0}) * std::max({e.x, e.y, e.z, 1.0});
}

}  // namespace

std::size_t PolyMesh::num_internal_faces() const {
  std::size_t n = 0;
  for (const Face& f : faces)
    if (!f.is_boundary()) ++n;
  return n;
}

Aabb PolyMesh::bounding_box() const {
  Aabb bb;
  for (const Vec3& v : vertices) bb.extend(v);
  return bb;
}

FaceTessellation tessellate_face(std::span<const Vec3> loop, double degenerate_area_tol) {
  const std::size_t r = loop.size();
  if (r < 3) throw std::runtime_error("face with fewer than 3 vertices");
  for (std::size_t i = 0; i < r; ++i) {
    if (loop[i] == loop[(i + 1) % r])
      throw std::runtime_error("face with repeated consecutive vertices");
  }

  FaceTessellation out;
  if (r == 3) {
    const double area = norm(triangle_normal(loop[0], loop[1], loop[2]));
    if (area <= degenerate_area_tol) throw std::runtime_error("degenerate face");
    out.triangles.push_back({loop[0], loop[1], loop[2]});
    out.center = (loop[0] + loop[1] + loop[2]) / 3.0;
    return out;
  }

  Vec3 mass_center{};
  for (const Vec3& p : loop) mass_center += p;
  mass_center /= static_cast<double>(r);

  double area_sum = 0.0;
  Vec3 weighted{};
  for (std::size_t i = 0; i < r; ++i) {
    const Vec3& a = loop[i];
    const Vec3& b = loop[(i + 1) % r];
    const double area = norm(triangle_normal(a, b, mass_center));
    if (area <= degenerate_area_tol) continue;
    out.triangles.push_back({a, b, mass_center});
    const Vec3 centroid = (a + b + mass_center) / 3.0;
    weighted += area * centroid;
    area_sum += area;
  }
  if (area_sum <= degenerate_area_tol) throw std::runtime_error("degenerate face");
  out.center = weighted / area_sum;
  return out;
}

Vec3 face_vector(std::span<const Vec3> loop) {
  Vec3 n{};
  for (std::size_t i = 1; i + 1 < loop.size(); ++i)
    n += cross(loop[i] - loop[0], loop[i + 1] - loop[0]);
  return 0.5 * n;
}

CellGeometry cell_geometry(std::span<const Tri> tris, std::span<const int> tri_sides,
                           const Vec3& apex) {
  double vol6 = 0.0;
  Vec3 weighted{};
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const Tri& t = tris[i];
    const double s = static_cast<double>(tri_sides[i]);
    const Vec3 a = t.pts[0] - apex;
    const Vec3 b = t.pts[1] - apex;
    const Vec3 c = t.pts[2] - apex;
    const double v6 = s * dot(a, cross(b, c));
    vol6 += v6;
    weighted += v6 * (a + b + c);  // tet centroid relative to apex is (a+b+c)/4
  }
  CellGeometry g;
  g.volume = vol6 / 6.0;
  if (vol6 != 0.0) g.centroid = apex + weighted / (4.0 * vol6);
  return g;
}

double characteristic_length(const PolyMesh& mesh) {
  if (mesh.cells.empty()) throw std::runtime_error("characteristic length of empty mesh");
  double sum = 0.0;
  for (std::size_t p = 0; p < mesh.cells.size(); ++p) {
    Aabb bb;
    for (int fi : mesh.cells[p].faces)
      for (int v : mesh.faces[fi].verts) bb.extend(mesh.vertices[v]);
    sum += std::cbrt(bb.volume());
  }
  return sum / static_cast<double>(mesh.cells.size());
}

PolyMesh build_poly_mesh(std::vector<Vec3> vertices, std::vector<Face> faces,
                         std::vector<Cell> cells) {
  PolyMesh m;
  m.vertices = std::move(vertices);
  m.faces = std::move(faces);
  m.cells = std::move(cells);

  const int nf = static_cast<int>(m.faces.size());
  const int nc = static_cast<int>(m.cells.size());
  const double degen_tol = 1e-14 * mesh_scale_sq(m.vertices);

  for (int g = 0; g < nf; ++g) {
    const Face& f = m.faces[g];
    if (f.owner < 0 || f.owner >= nc) throw std::runtime_error("face with invalid owner");
    if (!f.is_boundary() && (f.neighbor < 0 || f.neighbor >= nc || f.neighbor == f.owner))
      throw std::runtime_error("face with invalid neighbor");
    for (int v : f.verts)
      if (v < 0 || v >= static_cast<int>(m.vertices.size()))
        throw std::runtime_error("face with invalid vertex index");
  }

  // Tessellation, face centers and face vectors.
  m.face_centers.resize(nf);
  m.face_vectors.resize(nf);
  m.face_tri_begin.assign(nf + 1, 0);
  std::vector<Vec3> loop;
  for (int g = 0; g < nf; ++g) {
    loop.clear();
    for (int v : m.faces[g].verts) loop.push_back(m.vertices[v]);
    FaceTessellation tess = tessellate_face(loop, degen_tol);
    m.face_centers[g] = tess.center;
    m.face_vectors[g] = face_vector(loop);
    m.face_tri_begin[g] = static_cast<int>(m.tris.size());
    for (const auto& tp : tess.triangles) {
      Tri t;
      t.face = g;
      t.pts = tp;
      t.center = (tp[0] + tp[1] + tp[2]) / 3.0;
      t.normal = triangle_normal(tp[0], tp[1], tp[2]);
      m.tris.push_back(t);
    }
  }
  m.face_tri_begin[nf] = static_cast<int>(m.tris.size());

  // Adjacency.
  m.cell_neighbors.resize(nc);
  m.cell_internal_faces.resize(nc);
  m.cell_internal_tris.resize(nc);
  m.cell_boundary_tris.resize(nc);
  for (int p = 0; p < nc; ++p) {
    for (int g : m.cells[p].faces) {
      if (g < 0 || g >= nf) throw std::runtime_error("cell with invalid face index");
      const Face& f = m.faces[g];
      if (f.owner != p && f.neighbor != p)
        throw std::runtime_error("cell lists a face it is not adjacent to");
      if (!f.is_boundary()) {
        m.cell_neighbors[p].push_back(f.owner == p ? f.neighbor : f.owner);
        m.cell_internal_faces[p].push_back(g);
        for (int t = m.face_tri_begin[g]; t < m.face_tri_begin[g + 1]; ++t)
          m.cell_internal_tris[p].push_back(t);
      } else {
        if (f.owner != p) throw std::runtime_error("boundary face owned by another cell");
        for (int t = m.face_tri_begin[g]; t < m.face_tri_begin[g + 1]; ++t)
          m.cell_boundary_tris[p].push_back(t);
      }
    }
  }

  // Cell centroids and volumes from the star tessellation around the vertex
  // mean, then the closed-surface and positivity checks.
  m.cell_centers.resize(nc);
  m.cell_volumes.resize(nc);
  m.cell_vertex_means.resize(nc);
  std::vector<Tri> cell_tris;
  std::vector<int> sides;
  for (int p = 0; p < nc; ++p) {
    Vec3 vmean{};
    int nv = 0;
    for (int g : m.cells[p].faces)
      for (int v : m.faces[g].verts) {
        vmean += m.vertices[v];
        ++nv;
      }
    vmean /= static_cast<double>(nv);
    m.cell_vertex_means[p] = vmean;

    cell_tris.clear();
    sides.clear();
    Vec3 normal_sum{};
    double area_sum = 0.0;
    for (int t : m.cell_internal_tris[p]) {
      cell_tris.push_back(m.tris[t]);
      sides.push_back(m.faces[m.tris[t].face].owner == p ? 1 : -1);
      normal_sum += m.tri_normal_from(t, p);
      area_sum += m.tris[t].area();
    }
    for (int t : m.cell_boundary_tris[p]) {
      cell_tris.push_back(m.tris[t]);
      sides.push_back(1);
      normal_sum += m.tris[t].normal;
      area_sum += m.tris[t].area();
    }
    if (cell_tris.empty()) throw std::runtime_error("cell without faces");
    if (norm(normal_sum) > 1e-12 * area_sum)
      throw std::runtime_error("cell surface is not closed (non-watertight cell)");

    const CellGeometry geo = cell_geometry(cell_tris, sides, vmean);
    if (!(geo.volume > 0.0)) throw std::runtime_error("cell with non-positive volume");
    m.cell_centers[p] = geo.centroid;
    m.cell_volumes[p] = geo.volume;
  }

  m.vertex_on_boundary.assign(m.vertices.size(), 0);
  for (const Face& f : m.faces)
    if (f.is_boundary())
      for (int v : f.verts) m.vertex_on_boundary[v] = 1;

  m.h = characteristic_length(m);
  return m;
}

void validate_mesh(const PolyMesh& m) {
  for (std::size_t p = 0; p < m.num_cells(); ++p) {
    Vec3 normal_sum{};
    double area_sum = 0.0;
    for (int t : m.cell_internal_tris[p]) {
      normal_sum += m.tri_normal_from(t, static_cast<int>(p));
      area_sum += m.tris[t].area();
    }
    for (int t : m.cell_boundary_tris[p]) {
      normal_sum += m.tris[t].normal;
      area_sum += m.tris[t].area();
    }
    if (norm(normal_sum) > 1e-12 * area_sum)
      throw std::runtime_error("closed-surface identity violated");
    if (!(m.cell_volumes[p] > 0.0)) throw std::runtime_error("non-positive cell volume");
  }
}

}  // namespace polydist
