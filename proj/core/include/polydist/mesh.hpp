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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polydist/vec3.hpp"

namespace polydist {

constexpr int kBoundary = -1;  ///< neighbor tag of boundary faces

/// Polygonal face given as an ordered vertex loop. The loop is oriented so
/// that the face vector points out of the owner cell; the neighbor (if any)
/// sees the negated orientation.
struct Face {
  std::vector<int> verts;
  int owner = -1;
  int neighbor = kBoundary;

  bool is_boundary() const { return neighbor == kBoundary; }
};

struct Cell {
  std::vector<int> faces;
};

/// Triangle of the face tessellation. Polygonal faces are fanned around the
/// face center; triangle faces are kept as-is. `normal` is area-scaled and
/// oriented out of the owner cell of the parent face.
struct Tri {
  int face = -1;
  std::array<Vec3, 3> pts;
  Vec3 center;
  Vec3 normal;

  double area() const { return norm(normal); }
};

/// Result of tessellating one vertex loop.
struct FaceTessellation {
  Vec3 center;  ///< area-weighted face center
  std::vector<std::array<Vec3, 3>> triangles;
};

/// Immutable polyhedral mesh with precomputed geometry. Construct through
/// build_poly_mesh() (or the generators/readers), which derives the
/// tessellation, centers, volumes and adjacency and validates the
/// closed-surface and positivity invariants.
struct PolyMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<Cell> cells;

  // Derived geometry.
  std::vector<Tri> tris;
  std::vector<Vec3> face_centers;    ///< x_g per face
  std::vector<Vec3> face_vectors;    ///< n_g per face, owner-outward
  std::vector<int> face_tri_begin;   ///< tris of face g: [begin[g], begin[g+1])
  std::vector<Vec3> cell_centers;    ///< volume centroids
  std::vector<double> cell_volumes;
  std::vector<Vec3> cell_vertex_means;  ///< tessellation apex per cell

  // Adjacency (aligned lists: neighbor q of cell p across internal face
  // cell_internal_faces[p][j] is cell_neighbors[p][j]).
  std::vector<std::vector<int>> cell_neighbors;
  std::vector<std::vector<int>> cell_internal_faces;
  std::vector<std::vector<int>> cell_internal_tris;
  std::vector<std::vector<int>> cell_boundary_tris;
  std::vector<std::uint8_t> vertex_on_boundary;

  double h = 0.0;  ///< characteristic length

  std::size_t num_cells() const { return cells.size(); }
  std::size_t num_faces() const { return faces.size(); }
  std::size_t num_internal_faces() const;

  /// Outward normal of triangle `t` as seen from cell `p` (p must be owner
  /// or neighbor of the parent face).
  Vec3 tri_normal_from(int t, int p) const {
    return faces[tris[t].face].owner == p ? tris[t].normal : -tris[t].normal;
  }

  /// Cell on the other side of internal triangle `t` relative to `p`.
  int tri_other_cell(int t, int p) const {
    const Face& f = faces[tris[t].face];
    return f.owner == p ? f.neighbor : f.owner;
  }

  Aabb bounding_box() const;
};

/// Tessellate one face loop: a triangle is returned unchanged with its
/// centroid as center; larger polygons are fanned around the vertex mean and
/// the center is the triangle-area-weighted mean of triangle centroids.
/// Throws on degenerate faces (total area below `degenerate_area_tol`).
FaceTessellation tessellate_face(std::span<const Vec3> loop, double degenerate_area_tol);

/// Face vector n_g of a vertex loop: half the fan sum of cross products.
/// Equals the area-scaled normal for planar faces.
Vec3 face_vector(std::span<const Vec3> loop);

/// Volume and centroid of a closed triangulated surface, via signed
/// tetrahedra against `apex`.
struct CellGeometry {
  Vec3 centroid;
  double volume = 0.0;
};
CellGeometry cell_geometry(std::span<const Tri> tris, std::span<const int> tri_sides,
                           const Vec3& apex);

/// Mean cube root of the per-cell vertex bounding-box volumes.
double characteristic_length(const PolyMesh& mesh);

/// Build derived geometry and adjacency from the raw tables and validate
/// the mesh invariants. Throws std::runtime_error on violation.
PolyMesh build_poly_mesh(std::vector<Vec3> vertices, std::vector<Face> faces,
                         std::vector<Cell> cells);

/// Re-check the construction invariants of an already-built mesh:
/// closed cell surfaces, positive volumes, consistent adjacency.
void validate_mesh(const PolyMesh& mesh);

}  // namespace polydist
