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

#include <cmath>

#include "doctest.h"
#include "polydist/assembly.hpp"
#include "polydist/gradient.hpp"
#include "polydist/linsolve.hpp"
#include "polydist/mesh_gen.hpp"

using namespace polydist;

namespace {

BoundaryData no_dirichlet(const PolyMesh& m) {
  BoundaryData bd;
  bd.tri_is_dirichlet.assign(m.tris.size(), 0);
  bd.tri_value.assign(m.tris.size(), 0.0);
  return bd;
}

SeedSet no_seeds(const PolyMesh& m) {
  SeedSet s;
  s.is_pinned.assign(m.num_cells(), 0);
  s.pinned_value.assign(m.num_cells(), 0.0);
  return s;
}

SeedSet pin(const PolyMesh& m, std::vector<std::pair<int, double>> values) {
  SeedSet s = no_seeds(m);
  for (auto [cell, v] : values) {
    s.entries.push_back({cell, v, SeedSet::Provenance::kInteriorSource});
    s.is_pinned[cell] = 1;
    s.pinned_value[cell] = v;
  }
  return s;
}

ExplicitFields zero_fields(const PolyMesh& m, std::vector<Vec3>& grad_storage) {
  grad_storage.assign(m.num_cells(), Vec3{});
  return ExplicitFields{grad_storage, grad_storage};
}

}  // namespace

TEST_CASE("fluxes follow the sigma-normalized advecting vector") {
  const PolyMesh m =
      generate_box_hex_mesh(Domain::make_box({0, 0, 0}, {1, 1, 1}), {2, 2, 2});

  SUBCASE("unit beta along the normal gives the triangle area") {
    std::vector<Vec3> beta(m.tris.size(), Vec3{1, 0, 0});
    const FluxField flux = compute_fluxes(m, beta);
    for (std::size_t t = 0; t < m.tris.size(); ++t) {
      const double along = m.tris[t].normal.x;
      CHECK(flux.tri_flux[t] ==
            doctest::Approx(along / std::sqrt(1.0 + kSigma * kSigma)).epsilon(1e-14));
      CHECK(std::abs(flux.tri_flux[t]) <= m.tris[t].area() + 1e-15);
    }
  }

  SUBCASE("zero beta gives zero flux") {
    std::vector<Vec3> beta(m.tris.size(), Vec3{});
    const FluxField flux = compute_fluxes(m, beta);
    for (double mu : flux.tri_flux) CHECK(mu == 0.0);
  }

  SUBCASE("beta orthogonal to the normal gives zero flux") {
    std::vector<Vec3> beta(m.tris.size());
    for (std::size_t t = 0; t < m.tris.size(); ++t) {
      const Vec3 n = m.tris[t].normal;
      beta[t] = std::abs(n.x) > 0.5 ? Vec3{0, 1, 0} : Vec3{1, 0, 0};
      if (std::abs(dot(beta[t], n)) > 1e-12) beta[t] = cross(normalized(n), Vec3{1, 1, 1});
    }
    const FluxField flux = compute_fluxes(m, beta);
    for (std::size_t t = 0; t < m.tris.size(); ++t)
      CHECK(std::abs(flux.tri_flux[t]) <= 1e-12);
  }
}

TEST_CASE("flux antisymmetry and split-set conventions") {
  PolyMesh m = perturb_mesh(
      generate_box_hex_mesh(Domain::make_box({0, 0, 0}, {1, 1, 1}), {3, 3, 3}), 0.2, 4);
  const BoundaryData bd = no_dirichlet(m);

  // A non-trivial advecting field.
  std::vector<double> u(m.num_cells());
  for (std::size_t p = 0; p < m.num_cells(); ++p)
    u[p] = norm(m.cell_centers[p] - Vec3{0.2, 0.3, 0.4});
  const auto grads = cell_gradients_wls(m, bd, u);
  const auto beta = face_gradients_beta(m, grads);
  const FluxField flux = compute_fluxes(m, beta);

  const auto splits = split_sets(m, flux, bd);
  for (std::size_t p = 0; p < m.num_cells(); ++p) {
    const CellSplit& s = splits[p];
    CHECK(s.internal_inflow.size() + s.internal_outflow.size() ==
          m.cell_internal_tris[p].size());
    for (int t : s.internal_inflow) {
      CHECK(flux.from_cell(m, t, static_cast<int>(p)) < 0.0);
      // The same triangle is outflow for the neighbor.
      const int q = m.tri_other_cell(t, static_cast<int>(p));
      CHECK(flux.from_cell(m, t, q) > 0.0);
      const auto& qo = splits[q].internal_outflow;
      CHECK(std::find(qo.begin(), qo.end(), t) != qo.end());
    }
  }

  SUBCASE("zero flux lands in the outflow sets") {
    std::vector<Vec3> zero_beta(m.tris.size(), Vec3{});
    const FluxField zero_flux = compute_fluxes(m, zero_beta);
    const auto zs = split_sets(m, zero_flux, bd);
    for (std::size_t p = 0; p < m.num_cells(); ++p) {
      CHECK(zs[p].internal_inflow.empty());
      CHECK(zs[p].boundary_inflow_dirichlet.empty());
      CHECK(zs[p].boundary_inflow_other.empty());
      CHECK(zs[p].boundary_outflow.size() == m.cell_boundary_tris[p].size());
    }
  }
}

TEST_CASE("skewness points vanish on orthogonal grids") {
  const PolyMesh m =
      generate_box_hex_mesh(Domain::make_box({0, 0, 0}, {1, 1, 1}), {4, 4, 4});
  for (std::size_t g = 0; g < m.num_faces(); ++g) {
    if (m.faces[g].is_boundary()) continue;
    const SkewnessPoints s = skewness_points(m, static_cast<int>(g));
    CHECK(norm(s.d_pp) <= 1e-14);
    CHECK(norm(s.d_qq) <= 1e-14);
    CHECK(s.d_pq_len == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("skewness points match a direct evaluation of the projections") {
  // Formula check on stated inputs first.
  {
    const Vec3 xp{0, 0, 0}, xq{1, 0.2, 0}, xg{0.5, 0, 0};
    const Vec3 nhat{1, 0, 0};
    const Vec3 dpg = xg - xp, dqg = xg - xq;
    const Vec3 dpp = dpg - dot(nhat, dpg) * nhat;
    const Vec3 dqq = dqg - dot(nhat, dqg) * nhat;
    CHECK(norm(dpp) <= 1e-15);
    CHECK(norm(dqq - Vec3{0.0, -0.2, 0.0}) <= 1e-15);
    CHECK(norm((xq + dqq) - (xp + dpp)) == doctest::Approx(1.0).epsilon(1e-15));
  }

  // Mesh route: every internal face of a perturbed mesh agrees with the
  // projections computed here from the raw face data.
  PolyMesh m = perturb_mesh(
      generate_box_hex_mesh(Domain::make_box({0, 0, 0}, {1, 1, 1}), {3, 3, 3}), 0.25, 8);
  for (std::size_t g = 0; g < m.num_faces(); ++g) {
    const Face& f = m.faces[g];
    if (f.is_boundary()) continue;
    const SkewnessPoints s = skewness_points(m, static_cast<int>(g));
    const Vec3 nhat = normalized(m.face_vectors[g]);
    CHECK(std::abs(dot(s.d_pp, nhat)) <= 1e-12);
    CHECK(std::abs(dot(s.d_qq, nhat)) <= 1e-12);
    const Vec3 dpg = m.face_centers[g] - m.cell_centers[f.owner];
    const Vec3 expect_dpp = dpg - dot(nhat, dpg) * nhat;
    CHECK(norm(s.d_pp - expect_dpp) <= 1e-13);
    CHECK(s.d_pq_len ==
          doctest::Approx(std::abs(dot(nhat, m.cell_centers[f.neighbor] -
                                                 m.cell_centers[f.owner])))
              .epsilon(1e-12));
  }
}

TEST_CASE("a three-cell chain assembles to the hand-built system") {
  // Three unit cubes in a row, built by hand (the generator wants at least
  // two cells per axis).
  std::vector<Vec3> verts;
  for (int i = 0; i <= 3; ++i)
    for (int y = 0; y <= 1; ++y)
      for (int z = 0; z <= 1; ++z) verts.push_back({double(i), double(y), double(z)});
  auto vid = [&](int i, int y, int z) { return (i * 2 + y) * 2 + z; };
  std::vector<Face> faces;
  std::vector<Cell> cells(3);
  auto add = [&](std::vector<int> loop, int owner, int neighbor) {
    Face f;
    f.verts = std::move(loop);
    f.owner = owner;
    f.neighbor = neighbor;
    faces.push_back(std::move(f));
    const int id = static_cast<int>(faces.size() - 1);
    cells[owner].faces.push_back(id);
    if (neighbor != kBoundary) cells[neighbor].faces.push_back(id);
    return id;
  };
  for (int c = 0; c < 3; ++c) {
    // -x face: boundary for cell 0, otherwise owned by the left cell.
    if (c == 0) add({vid(0, 0, 0), vid(0, 0, 1), vid(0, 1, 1), vid(0, 1, 0)}, 0, kBoundary);
    // +x face, outward from c.
    add({vid(c + 1, 0, 0), vid(c + 1, 1, 0), vid(c + 1, 1, 1), vid(c + 1, 0, 1)}, c,
        c == 2 ? kBoundary : c + 1);
    // y and z walls.
    add({vid(c, 0, 0), vid(c + 1, 0, 0), vid(c + 1, 0, 1), vid(c, 0, 1)}, c, kBoundary);
    add({vid(c, 1, 0), vid(c, 1, 1), vid(c + 1, 1, 1), vid(c + 1, 1, 0)}, c, kBoundary);
    add({vid(c, 0, 0), vid(c, 1, 0), vid(c + 1, 1, 0), vid(c + 1, 0, 0)}, c, kBoundary);
    add({vid(c, 0, 1), vid(c + 1, 0, 1), vid(c + 1, 1, 1), vid(c, 1, 1)}, c, kBoundary);
  }
  const PolyMesh three = build_poly_mesh(verts, faces, cells);
  REQUIRE(three.num_cells() == 3);

  const double eps = 0.37;
  const BoundaryData bd = no_dirichlet(three);
  const SeedSet seeds = no_seeds(three);
  const AssemblyGeometry geom = build_assembly_geometry(three, bd);
  std::vector<Vec3> zg;
  std::vector<Vec3> zero_beta(three.tris.size(), Vec3{});
  const FluxField flux = compute_fluxes(three, zero_beta);
  const SparseSystem sys =
      assemble(three, geom, seeds, bd, eps, flux, zero_fields(three, zg));
  verify_sparsity(sys, three, seeds);

  // Hand-assembled: unit faces, unit centers distance, |Omega| = 1.
  // Row 0: eps*(u0 - u1) = 1; row 1: eps*(2u1 - u0 - u2) = 1; row 2 mirrors 0.
  auto entry = [&](int r, int c) {
    const int k = sys.A.find(r, c);
    REQUIRE(k >= 0);
    return sys.A.values[k];
  };
  CHECK(entry(0, 0) == doctest::Approx(eps).epsilon(1e-14));
  CHECK(entry(0, 1) == doctest::Approx(-eps).epsilon(1e-14));
  CHECK(entry(1, 0) == doctest::Approx(-eps).epsilon(1e-14));
  CHECK(entry(1, 1) == doctest::Approx(2 * eps).epsilon(1e-14));
  CHECK(entry(1, 2) == doctest::Approx(-eps).epsilon(1e-14));
  CHECK(entry(2, 2) == doctest::Approx(eps).epsilon(1e-14));
  for (double f : sys.rhs) CHECK(f == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("single free cell among pinned neighbors solves the 7-point stencil value") {
  const PolyMesh m =
      generate_box_hex_mesh(Domain::make_box({0, 0, 0}, {1, 1, 1}), {3, 3, 3});
  int center = -1;
  for (std::size_t p = 0; p < m.num_cells(); ++p)
    if (norm(m.cell_centers[p] - Vec3{0.5, 0.5, 0.5}) < 1e-12) center = static_cast<int>(p);
  REQUIRE(center >= 0);

  std::vector<std::pair<int, double>> pins;
  for (std::size_t p = 0; p < m.num_cells(); ++p)
    if (static_cast<int>(p) != center)
      pins.push_back({static_cast<int>(p), 0.01 * static_cast<double>(p)});
  const SeedSet seeds = pin(m, pins);
  const BoundaryData bd = no_dirichlet(m);
  const AssemblyGeometry geom = build_assembly_geometry(m, bd);
  std::vector<Vec3> zg;
  std::vector<Vec3> zero_beta(m.tris.size(), Vec3{});
  const FluxField flux = compute_fluxes(m, zero_beta);
  const double eps = 1.0;
  const SparseSystem sys = assemble(m, geom, seeds, bd, eps, flux, zero_fields(m, zg));
  verify_sparsity(sys, m, seeds);

  std::vector<double> x(m.num_cells(), 0.0);
  for (const auto& e : seeds.entries) x[e.cell] = e.value;
  SolverConfig cfg;
  solve_linear(sys, x, cfg);

  // Closed form: volume 1/27, face transmissibility s^2/s = s = 1/3.
  const double s = 1.0 / 3.0;
  double rhs = 1.0 / 27.0;
  double diag = 0.0;
  for (int q : m.cell_neighbors[center]) {
    diag += eps * s;
    rhs += eps * s * seeds.pinned_value[q];
  }
  CHECK(x[center] == doctest::Approx(rhs / diag).epsilon(1e-10));
}

TEST_CASE("pinned rows are identity rows with the pinned value") {
  const PolyMesh m =
      generate_box_hex_mesh(Domain::make_box({0, 0, 0}, {1, 1, 1}), {3, 3, 3});
  const SeedSet seeds = pin(m, {{4, 0.1}, {13, 0.25}});
  const BoundaryData bd = no_dirichlet(m);
  const AssemblyGeometry geom = build_assembly_geometry(m, bd);
  std::vector<Vec3> zg;
  std::vector<Vec3> zero_beta(m.tris.size(), Vec3{});
  const SparseSystem sys = assemble(m, geom, seeds, bd, 0.5, compute_fluxes(m, zero_beta),
                                    zero_fields(m, zg));
  for (int r : {4, 13}) {
    for (int k = sys.A.row_ptr[r]; k < sys.A.row_ptr[r + 1]; ++k)
      CHECK(sys.A.values[k] == (sys.A.cols[k] == r ? 1.0 : 0.0));
    CHECK(sys.rhs[r] == seeds.pinned_value[r]);
  }
  verify_sparsity(sys, m, seeds);
}

TEST_CASE("assembly with zero advection equals an independent Poisson discretization") {
  const int n = 6;
  const Domain d = Domain::make_box({-1.25, -1.25, -1.25}, {1.25, 1.25, 1.25});
  const PolyMesh m = generate_box_hex_mesh(d, {n, n, n});
  const GammaSpec gamma{SphereGamma{{0, 0, 0}, 0.6}};
  const SeedSet seeds = build_seed_set(m, d, gamma);
  const BoundaryData bd = build_boundary_data(m, d, gamma);
  const AssemblyGeometry geom = build_assembly_geometry(m, bd);
  const double eps = 0.37;

  std::vector<Vec3> zg;
  std::vector<Vec3> zero_beta(m.tris.size(), Vec3{});
  const SparseSystem sys = assemble(m, geom, seeds, bd, eps, compute_fluxes(m, zero_beta),
                                    zero_fields(m, zg));

  // Independent two-point-flux matrix on the (i,j,k) lattice. The generator
  // numbers uncut cells with i fastest, which the centers confirm.
  const double s = 2.5 / n;
  auto cid = [&](int i, int j, int k) { return (k * n + j) * n + i; };
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int p = cid(i, j, k);
        REQUIRE(norm(m.cell_centers[p] - Vec3{-1.25 + s * (i + 0.5), -1.25 + s * (j + 0.5),
                                              -1.25 + s * (k + 0.5)}) < 1e-12);
        if (seeds.is_pinned[p]) continue;
        double diag = 0.0;
        const int di[6] = {-1, 1, 0, 0, 0, 0};
        const int dj[6] = {0, 0, -1, 1, 0, 0};
        const int dk[6] = {0, 0, 0, 0, -1, 1};
        for (int f = 0; f < 6; ++f) {
          const int ii = i + di[f], jj = j + dj[f], kk = k + dk[f];
          if (ii < 0 || ii >= n || jj < 0 || jj >= n || kk < 0 || kk >= n)
            continue;  // homogeneous Neumann wall at zero advection
          const double T = eps * s * s / s;
          diag += T;
          const int pos = sys.A.find(p, cid(ii, jj, kk));
          REQUIRE(pos >= 0);
          CHECK(sys.A.values[pos] == doctest::Approx(-T).epsilon(1e-12));
        }
        CHECK(sys.A.values[sys.A.diag_pos[p]] == doctest::Approx(diag).epsilon(1e-12));
        CHECK(sys.rhs[p] == doctest::Approx(s * s * s).epsilon(1e-12));
      }
}
