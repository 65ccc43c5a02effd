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

#include "polydist/mesh_gen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace polydist {

namespace {

struct GridIndexer {
  std::array<int, 3> n;  // cells per axis
  int vid(int i, int j, int k) const {
    return (k * (n[1] + 1) + j) * (n[0] + 1) + i;
  }
  int cid(int i, int j, int k) const { return (k * n[1] + j) * n[0] + i; }
};

// Cell-grid index range [lo, hi) covered by the cut, or nullopt if no cut.
// Throws unless every cut plane coincides with a grid plane.
std::optional<std::array<std::array<int, 2>, 3>> cut_index_range(
    const Domain& domain, const std::array<int, 3>& n, const Vec3& spacing) {
  if (!domain.cut) return std::nullopt;
  std::array<std::array<int, 2>, 3> r{};
  for (int a = 0; a < 3; ++a) {
    const double lo_f = (domain.cut->lo[a] - domain.box.lo[a]) / spacing[a];
    const double hi_f = (domain.cut->hi[a] - domain.box.lo[a]) / spacing[a];
    const int lo_i = static_cast<int>(std::llround(lo_f));
    const int hi_i = static_cast<int>(std::llround(hi_f));
    const double tol = 1e-9;
    if (std::abs(lo_f - lo_i) > tol || std::abs(hi_f - hi_i) > tol)
      throw std::runtime_error("cut region is not aligned with the grid");
    if (lo_i < 0 || hi_i > n[a] || lo_i >= hi_i)
      throw std::runtime_error("cut region outside the grid");
    r[a] = {lo_i, hi_i};
  }
  return r;
}

}  // namespace

PolyMesh generate_box_hex_mesh(const Domain& domain, const std::array<int, 3>& n) {
  for (int a = 0; a < 3; ++a)
    if (n[a] < 2) throw std::invalid_argument("need at least 2 cells per axis");

  const GridIndexer grid{n};
  Vec3 spacing;
  for (int a = 0; a < 3; ++a)
    spacing[a] = (domain.box.hi[a] - domain.box.lo[a]) / n[a];
  const auto cut = cut_index_range(domain, n, spacing);

  auto in_cut = [&](int i, int j, int k) {
    if (!cut) return false;
    const auto& r = *cut;
    return i >= r[0][0] && i < r[0][1] && j >= r[1][0] && j < r[1][1] && k >= r[2][0] &&
           k < r[2][1];
  };

  // Compact cell numbering over kept cells.
  std::vector<int> cell_id(static_cast<std::size_t>(n[0]) * n[1] * n[2], -1);
  int nc = 0;
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i)
        if (!in_cut(i, j, k)) cell_id[grid.cid(i, j, k)] = nc++;

  // Compact vertex numbering over vertices used by kept cells.
  std::vector<int> vert_id(
      static_cast<std::size_t>(n[0] + 1) * (n[1] + 1) * (n[2] + 1), -1);
  std::vector<Vec3> vertices;
  auto vertex = [&](int i, int j, int k) {
    int& id = vert_id[grid.vid(i, j, k)];
    if (id < 0) {
      id = static_cast<int>(vertices.size());
      vertices.push_back({domain.box.lo.x + i * spacing.x, domain.box.lo.y + j * spacing.y,
                          domain.box.lo.z + k * spacing.z});
    }
    return id;
  };

  // Quad loops per hex side, oriented outward. Corner offsets in (i,j,k).
  // Sides: -x, +x, -y, +y, -z, +z.
  static constexpr int kSideCorners[6][4][3] = {
      {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {0, 1, 0}},  // -x
      {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 0, 1}},  // +x
      {{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {0, 0, 1}},  // -y
      {{0, 1, 0}, {0, 1, 1}, {1, 1, 1}, {1, 1, 0}},  // +y
      {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}},  // -z
      {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}},  // +z
  };
  static constexpr int kSideStep[6][3] = {{-1, 0, 0}, {1, 0, 0},  {0, -1, 0},
                                          {0, 1, 0},  {0, 0, -1}, {0, 0, 1}};

  std::vector<Face> faces;
  std::vector<Cell> cells(nc);
  std::unordered_map<std::uint64_t, int> face_of;  // key: min vertex ids combined
  face_of.reserve(static_cast<std::size_t>(nc) * 3);

  auto face_key = [&](const std::array<int, 4>& v) {
    std::array<int, 4> s = v;
    std::sort(s.begin(), s.end());
    std::uint64_t key = 1469598103934665603ull;
    for (int x : s) {
      key ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull;
      key *= 1099511628211ull;
    }
    return key;
  };

  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        const int c = cell_id[grid.cid(i, j, k)];
        if (c < 0) continue;
        for (int side = 0; side < 6; ++side) {
          std::array<int, 4> loop;
          for (int v = 0; v < 4; ++v)
            loop[v] = vertex(i + kSideCorners[side][v][0], j + kSideCorners[side][v][1],
                             k + kSideCorners[side][v][2]);
          const std::uint64_t key = face_key(loop);
          auto it = face_of.find(key);
          if (it == face_of.end()) {
            Face f;
            f.verts.assign(loop.begin(), loop.end());
            f.owner = c;
            const int ni = i + kSideStep[side][0];
            const int nj = j + kSideStep[side][1];
            const int nk = k + kSideStep[side][2];
            const bool inside = ni >= 0 && ni < n[0] && nj >= 0 && nj < n[1] && nk >= 0 &&
                                nk < n[2] && !in_cut(ni, nj, nk);
            f.neighbor = inside ? -2 : kBoundary;  // resolved when visited
            const int fid = static_cast<int>(faces.size());
            faces.push_back(std::move(f));
            face_of.emplace(key, fid);
            cells[c].faces.push_back(fid);
          } else {
            faces[it->second].neighbor = c;
            cells[c].faces.push_back(it->second);
          }
        }
      }

  for (Face& f : faces)
    if (f.neighbor == -2) throw std::logic_error("unresolved internal face");

  return build_poly_mesh(std::move(vertices), std::move(faces), std::move(cells));
}

PolyMesh perturb_mesh(const PolyMesh& mesh, double amplitude, std::uint64_t seed) {
  if (amplitude < 0.0 || amplitude > 0.3)
    throw std::invalid_argument("perturbation amplitude must be in [0, 0.3]");
  if (amplitude == 0.0) return mesh;

  // Shortest incident edge per vertex, from the face loops.
  std::vector<double> local(mesh.vertices.size(), std::numeric_limits<double>::max());
  for (const Face& f : mesh.faces) {
    const std::size_t r = f.verts.size();
    for (std::size_t i = 0; i < r; ++i) {
      const int a = f.verts[i];
      const int b = f.verts[(i + 1) % r];
      const double len = norm(mesh.vertices[a] - mesh.vertices[b]);
      local[a] = std::min(local[a], len);
      local[b] = std::min(local[b], len);
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Vec3> moved = mesh.vertices;
  for (std::size_t v = 0; v < moved.size(); ++v) {
    // One draw per vertex in vertex order, consumed also for fixed vertices,
    // so the displacement pattern depends only on the seed and vertex ids.
    const Vec3 d{unit(rng), unit(rng), unit(rng)};
    if (mesh.vertex_on_boundary[v]) continue;
    moved[v] += 0.5 * amplitude * local[v] * d;
  }

  std::vector<Face> faces = mesh.faces;
  std::vector<Cell> cells = mesh.cells;
  return build_poly_mesh(std::move(moved), std::move(faces), std::move(cells));
}

}  // namespace polydist
