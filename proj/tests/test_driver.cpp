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
#include "polydist/driver.hpp"
#include "polydist/gradient.hpp"
#include "polydist/mesh_gen.hpp"

using namespace polydist;

namespace {

SeedSet pin(const PolyMesh& m, std::vector<std::pair<int, double>> values) {
  SeedSet s;
  s.is_pinned.assign(m.num_cells(), 0);
  s.pinned_value.assign(m.num_cells(), 0.0);
  for (auto [cell, v] : values) {
    s.entries.push_back({cell, v, SeedSet::Provenance::kInteriorSource});
    s.is_pinned[cell] = 1;
    s.pinned_value[cell] = v;
  }
  return s;
}

BoundaryData no_dirichlet(const PolyMesh& m) {
  BoundaryData bd;
  bd.tri_is_dirichlet.assign(m.tris.size(), 0);
  bd.tri_value.assign(m.tris.size(), 0.0);
  return bd;
}

}  // namespace

TEST_CASE("stage one reduces to the hand-solved chain") {
  // Three unit cells along x (2x2 on the other axes to satisfy the
  // generator); pin both end layers to zero and check the middle value.
  const PolyMesh m =
      generate_box_hex_mesh(Domain::make_box({0, 0, 0}, {3, 1, 1}), {3, 2, 2});
  std::vector<std::pair<int, double>> pins;
  for (std::size_t p = 0; p < m.num_cells(); ++p) {
    const double x = m.cell_centers[p].x;
    if (x < 1.0 || x > 2.0) pins.push_back({static_cast<int>(p), 0.0});
  }
  const SeedSet seeds = pin(m, pins);
  const BoundaryData bd = no_dirichlet(m);
  const double eps = 1.0;
  const auto u = run_stage1(m, seeds, bd, eps, SolverConfig{});

  // Each middle cell has two x-coupling faces (T = (1/2)^2 / 1 = 1/4 with
  // this layout) toward pinned zeros, four lateral faces to identical
  // values (which drop out), volume 1/4:
  //   2 * eps * T * u = |Omega|  =>  u = 0.5.
  for (std::size_t p = 0; p < m.num_cells(); ++p) {
    if (seeds.is_pinned[p]) {
      CHECK(u[p] == 0.0);
    } else {
      CHECK(u[p] == doctest::Approx(0.5 / eps).epsilon(1e-10));
    }
  }
}

TEST_CASE("stage one inherits the symmetry of the problem") {
  const Domain d = Domain::make_box({-1, -1, -1}, {1, 1, 1});
  const PolyMesh m = generate_box_hex_mesh(d, {6, 6, 6});
  const GammaSpec gamma{WholeBoundaryGamma{}};
  const SeedSet seeds = build_seed_set(m, d, gamma);
  const BoundaryData bd = build_boundary_data(m, d, gamma);
  const auto u = run_stage1(m, seeds, bd, std::sqrt(m.h), SolverConfig{});

  // Mirror symmetry in x: cells at (x, y, z) and (-x, y, z) agree.
  for (std::size_t p = 0; p < m.num_cells(); ++p) {
    const Vec3 c = m.cell_centers[p];
    for (std::size_t q = 0; q < m.num_cells(); ++q) {
      const Vec3 cq = m.cell_centers[q];
      if (std::abs(cq.x + c.x) < 1e-12 && std::abs(cq.y - c.y) < 1e-12 &&
          std::abs(cq.z - c.z) < 1e-12)
        CHECK(u[p] == doctest::Approx(u[q]).epsilon(1e-9));
    }
  }
  // Interior values exceed the pinned minimum; the maximum sits at the center.
  const double umax = *std::max_element(u.begin(), u.end());
  for (std::size_t p = 0; p < m.num_cells(); ++p) {
    if (!seeds.is_pinned[p]) CHECK(u[p] > 0.0);
    if (norm(m.cell_centers[p]) < 0.5) CHECK(u[p] == doctest::Approx(umax).epsilon(1e-9));
  }
}

TEST_CASE("stage one is linear in the right-hand side") {
  const Domain d = Domain::make_box({-1.25, -1.25, -1.25}, {1.25, 1.25, 1.25});
  const PolyMesh m = generate_box_hex_mesh(d, {6, 6, 6});
  const GammaSpec gamma{SphereGamma{{0, 0, 0}, 0.6}};
  const SeedSet seeds = build_seed_set(m, d, gamma);
  const BoundaryData bd = build_boundary_data(m, d, gamma);
  const AssemblyGeometry geom = build_assembly_geometry(m, bd);
  std::vector<Vec3> zero_grad(m.num_cells(), Vec3{});
  std::vector<Vec3> zero_beta(m.tris.size(), Vec3{});
  SparseSystem sys = assemble(m, geom, seeds, bd, 0.5, compute_fluxes(m, zero_beta),
                              ExplicitFields{zero_grad, zero_grad});

  std::vector<double> x1(m.num_cells(), 0.0);
  solve_linear(sys, x1, SolverConfig{});
  const double lambda = 3.5;
  for (double& f : sys.rhs) f *= lambda;
  std::vector<double> x2(m.num_cells(), 0.0);
  solve_linear(sys, x2, SolverConfig{});
  for (std::size_t p = 0; p < m.num_cells(); ++p)
    CHECK(x2[p] == doctest::Approx(lambda * x1[p]).epsilon(1e-9));
}

TEST_CASE("empty seed sets are rejected") {
  const PolyMesh m =
      generate_box_hex_mesh(Domain::make_box({0, 0, 0}, {1, 1, 1}), {2, 2, 2});
  const SeedSet empty = pin(m, {});
  CHECK_THROWS_WITH_AS(run_stage1(m, empty, no_dirichlet(m), 1.0, SolverConfig{}),
                       "no Dirichlet data", std::runtime_error);
}

TEST_CASE("full algorithm on a small sphere problem") {
  const Domain d = Domain::make_box({-1.25, -1.25, -1.25}, {1.25, 1.25, 1.25});
  const PolyMesh m = generate_box_hex_mesh(d, {8, 8, 8});
  const GammaSpec gamma{SphereGamma{{0, 0, 0}, 0.6}};
  const StageSchedule sched;
  std::vector<std::string> log_lines;
  const SolveReport rep =
      run_algorithm(m, d, gamma, sched, SolverConfig{}, {},
                    [&](std::string_view s) { log_lines.emplace_back(s); });

  REQUIRE(rep.stages.size() == 5);
  const SeedSet seeds = build_seed_set(m, d, gamma);

  SUBCASE("pinned cells carry their exact values") {
    for (const auto& e : seeds.entries) CHECK(rep.u[e.cell] == e.value);
  }

  SUBCASE("the field is a nonnegative distance-like field") {
    for (std::size_t p = 0; p < m.num_cells(); ++p) CHECK(rep.u[p] >= -1e-9 * m.h);
  }

  SUBCASE("completed stages satisfy the residual bound") {
    for (const auto& st : rep.stages) {
      if (st.stage == 1) continue;
      REQUIRE(!st.residuals.empty());
      CHECK(st.residuals.back() < sched.eta);
      CHECK(st.iterations <= sched.k_max);
      CHECK(st.eps == doctest::Approx(std::pow(m.h, 0.5 * st.stage)));
    }
  }

  SUBCASE("log lines are machine-parseable key=value") {
    REQUIRE(!log_lines.empty());
    for (const auto& line : log_lines) {
      CHECK(line.find("stage=") == 0);
      CHECK(line.find("k=") != std::string::npos);
      CHECK(line.find("rho=") != std::string::npos);
      CHECK(line.find("inner=") != std::string::npos);
    }
  }

  SUBCASE("repeated runs are identical") {
    const SolveReport rep2 = run_algorithm(m, d, gamma, sched, SolverConfig{});
    REQUIRE(rep2.stages.size() == rep.stages.size());
    for (std::size_t s = 0; s < rep.stages.size(); ++s)
      CHECK(rep2.stages[s].iterations == rep.stages[s].iterations);
    for (std::size_t p = 0; p < m.num_cells(); ++p) CHECK(rep2.u[p] == rep.u[p]);
  }

  SUBCASE("observer sees every stage") {
    std::vector<int> seen;
    run_algorithm(m, d, gamma, sched, SolverConfig{},
                  [&](int stage, std::span<const double>) { seen.push_back(stage); });
    CHECK(seen == std::vector<int>{1, 2, 3, 4, 5});
  }
}

TEST_CASE("unattainable residual bound fails with a stage diagnosis") {
  const Domain d = Domain::make_box({-1.25, -1.25, -1.25}, {1.25, 1.25, 1.25});
  const PolyMesh m = generate_box_hex_mesh(d, {4, 4, 4});
  StageSchedule sched;
  sched.eta = 0.0;  // unreachable
  sched.k_max = 3;
  CHECK_THROWS_WITH_AS(
      run_algorithm(m, d, GammaSpec{SphereGamma{{0, 0, 0}, 0.6}}, sched, SolverConfig{}),
      doctest::Contains("stage 2 did not converge"), std::runtime_error);
}
