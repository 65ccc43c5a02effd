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

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "polydist/gamma.hpp"
#include "polydist/geodesic.hpp"
#include "polydist/mesh_gen.hpp"

using namespace polydist;

namespace {

constexpr double kGamma1 = 1.25 / 15.0;

Domain cube_domain(double half) {
  return Domain::make_box({-half, -half, -half}, {half, half, half});
}

// C-shaped domain: outer slab minus a notch reaching the +x wall.
Domain c_shaped_domain() {
  const double g = kGamma1;
  return Domain::make_box_minus_box({-15 * g, -15 * g, -5 * g}, {15 * g, 15 * g, 5 * g},
                                    {-5 * g, -5 * g, -5 * g}, {15 * g, 5 * g, 5 * g});
}

GammaSpec c_shape_source() {
  const double g = kGamma1;
  RectPatch r;
  r.axis = 0;
  r.coord = 15 * g;
  r.lo_u = 5 * g;   // y range (axis_u of x is y)
  r.hi_u = 15 * g;
  r.lo_v = -5 * g;  // z range
  r.hi_v = 5 * g;
  r.outward = 1;
  return GammaSpec{PlanePatchGamma{r}};
}

}  // namespace

TEST_CASE("whole-boundary classification finds every boundary cell of a 4^3 cube") {
  const Domain d = cube_domain(1.0);
  const PolyMesh m = generate_box_hex_mesh(d, {4, 4, 4});
  const auto cls = classify_cells(m, d, GammaSpec{WholeBoundaryGamma{}});
  CHECK(cls.boundary_source_cells.size() == 4 * 4 * 4 - 2 * 2 * 2);
  CHECK(cls.interior_source_cells.empty());
}

TEST_CASE("interior sphere classification is interior-only") {
  const Domain d = cube_domain(1.25);
  const PolyMesh m = generate_box_hex_mesh(d, {8, 8, 8});
  const auto cls = classify_cells(m, d, GammaSpec{SphereGamma{{0, 0, 0}, 0.6}});
  CHECK(cls.boundary_source_cells.empty());
  CHECK(!cls.interior_source_cells.empty());
  // Every returned cell really straddles the sphere surface.
  for (int p : cls.interior_source_cells) {
    double dmin = 1e300, dmax = 0.0;
    for (int g : m.cells[p].faces)
      for (int v : m.faces[g].verts) {
        const double r = norm(m.vertices[v]);
        dmin = std::min(dmin, r);
        dmax = std::max(dmax, r);
      }
    CHECK(dmin <= 0.6 + 1e-12);
    CHECK(dmax >= 0.6 - 1e-12);
  }
}

TEST_CASE("disk in the midplane of an even grid touches cells on both sides") {
  const Domain d = cube_domain(1.25);
  const PolyMesh m = generate_box_hex_mesh(d, {4, 4, 4});
  const auto cls =
      classify_cells(m, d, GammaSpec{DiskGamma{{0, 0, 0}, 0.6, {0, 0, 1}}});
  CHECK(cls.boundary_source_cells.empty());
  // Cell size 0.625: in-plane only the central 2x2 block reaches the disk
  // (the nearest point of any off-center column is at distance 0.625 > 0.6),
  // and the z=0 plane is touched by the two layers around it: 2 x 4 cells.
  CHECK(cls.interior_source_cells.size() == 8);
  int above = 0, below = 0;
  for (int p : cls.interior_source_cells) {
    if (m.cell_centers[p].z > 0) ++above;
    if (m.cell_centers[p].z < 0) ++below;
  }
  CHECK(above == 4);
  CHECK(below == 4);
}

TEST_CASE("mixed source location is rejected") {
  const Domain d = cube_domain(1.0);
  CHECK_THROWS_WITH_AS(
      (void)GammaSpec{SphereGamma{{0.9, 0, 0}, 0.3}}.on_boundary(d),
      "mixed Gamma unsupported", std::runtime_error);
  // A patch not on any wall is neither interior-supported nor boundary.
  RectPatch r;
  r.axis = 0;
  r.coord = 0.5;
  r.lo_u = -0.5;
  r.hi_u = 0.5;
  r.lo_v = -0.5;
  r.hi_v = 0.5;
  CHECK_THROWS_WITH_AS((void)GammaSpec{PlanePatchGamma{r}}.on_boundary(d),
                       "mixed Gamma unsupported", std::runtime_error);
}

TEST_CASE("dilate adds face neighbors") {
  const PolyMesh m =
      generate_box_hex_mesh(Domain::make_box({0, 0, 0}, {1, 1, 1}), {3, 3, 3});
  // Center cell of the 3^3 grid.
  int center = -1, corner = -1;
  for (std::size_t p = 0; p < m.num_cells(); ++p) {
    if (norm(m.cell_centers[p] - Vec3{0.5, 0.5, 0.5}) < 1e-12) center = static_cast<int>(p);
    if (norm(m.cell_centers[p] - Vec3{1.0 / 6, 1.0 / 6, 1.0 / 6}) < 1e-12)
      corner = static_cast<int>(p);
  }
  REQUIRE(center >= 0);
  REQUIRE(corner >= 0);
  CHECK(dilate(m, {center}).size() == 7);
  CHECK(dilate(m, {corner}).size() == 4);
  CHECK(dilate(m, {}).empty());
}

TEST_CASE("seed values pin exact distances") {
  const Domain d = cube_domain(1.25);
  const PolyMesh m = generate_box_hex_mesh(d, {25, 25, 25});
  const GammaSpec gamma{SphereGamma{{0, 0, 0}, 0.6}};
  const SeedSet seeds = build_seed_set(m, d, gamma);
  REQUIRE(!seeds.empty());

  // Grid spacing 0.1 puts a cell center at (0.7, 0, 0), one ring outside the
  // source cells, pinned to |x| - r = 0.1.
  int found = -1;
  for (const auto& e : seeds.entries)
    if (norm(m.cell_centers[e.cell] - Vec3{0.7, 0.0, 0.0}) < 1e-9) found = e.cell;
  REQUIRE(found >= 0);
  CHECK(seeds.pinned_value[found] == doctest::Approx(0.1).epsilon(1e-12));

  for (const auto& e : seeds.entries) {
    CHECK(e.value >= 0.0);
    CHECK(e.value ==
          doctest::Approx(gamma.exact_distance(d, m.cell_centers[e.cell])).epsilon(1e-15));
    CHECK(e.from == SeedSet::Provenance::kInteriorSource);
  }
}

TEST_CASE("whole-boundary seeds pin the wall distance") {
  const Domain d = Domain::make_box({0, 0, 0}, {1, 1, 1});
  const PolyMesh m = generate_box_hex_mesh(d, {10, 10, 10});
  const SeedSet seeds = build_seed_set(m, d, GammaSpec{WholeBoundaryGamma{}});
  int checked = 0;
  for (const auto& e : seeds.entries) {
    const Vec3 c = m.cell_centers[e.cell];
    if (std::abs(c.x - 0.05) < 1e-12 && c.y > 0.2 && c.y < 0.8 && c.z > 0.2 && c.z < 0.8) {
      CHECK(e.value == doctest::Approx(0.05).epsilon(1e-12));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("square-pair distance is the minimum over both members") {
  const double g2 = 10.0 / 15.0;
  const SquareGamma s1{{0, 0, 7.5 * g2}, 7 * g2, {0, 0, 1}};
  const SquareGamma s2{{0, 0, -7.5 * g2}, 7 * g2, {0, 0, 1}};
  const GammaSpec pair{SquarePairGamma{s1, s2}};
  const GammaSpec g_first{s1};
  const GammaSpec g_second{s2};
  const Domain d = cube_domain(10.0);

  const Vec3 equidistant{1.0, -2.0, 0.0};  // midplane
  CHECK(pair.exact_distance(d, equidistant) ==
        doctest::Approx(std::min(g_first.exact_distance(d, equidistant),
                                 g_second.exact_distance(d, equidistant)))
            .epsilon(1e-15));
  const Vec3 off{1.0, 0.5, 3.0};
  CHECK(pair.exact_distance(d, off) ==
        doctest::Approx(std::min(g_first.exact_distance(d, off),
                                 g_second.exact_distance(d, off)))
            .epsilon(1e-15));
}

TEST_CASE("exact distances of the analytic sources") {
  const Domain d = cube_domain(5.0);
  CHECK(GammaSpec{SphereGamma{{0, 0, 0}, 0.6}}.exact_distance(d, {1, 0, 0}) ==
        doctest::Approx(0.4).epsilon(1e-15));
  CHECK(GammaSpec{CircleGamma{{0, 0, 0}, 0.6, {0, 0, 1}}}.exact_distance(d, {0, 0, 1}) ==
        doctest::Approx(std::sqrt(0.36 + 1.0)).epsilon(1e-15));
  CHECK(GammaSpec{DiskGamma{{0, 0, 0}, 0.6, {0, 0, 1}}}.exact_distance(d, {0, 0, 1}) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(GammaSpec{SquareGamma{{0, 0, 0}, 2.0, {0, 0, 1}}}.exact_distance(d, {2, 0, 1}) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("exact distance is 1-Lipschitz along segments") {
  const Domain d = cube_domain(1.25);
  const GammaSpec gamma{DiskGamma{{0.1, -0.2, 0.0}, 0.5, {0, 0, 1}}};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-1.2, 1.2);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 a{coord(rng), coord(rng), coord(rng)};
    const Vec3 b{coord(rng), coord(rng), coord(rng)};
    const double da = gamma.exact_distance(d, a);
    const double db = gamma.exact_distance(d, b);
    CHECK(std::abs(da - db) <= norm(a - b) * (1.0 + 1e-12) + 1e-12);
  }
}

TEST_CASE("seed values are invariant under interior mesh perturbation") {
  const Domain d = cube_domain(1.25);
  const PolyMesh m = generate_box_hex_mesh(d, {8, 8, 8});
  const GammaSpec gamma{SphereGamma{{0, 0, 0}, 0.6}};
  const SeedSet s0 = build_seed_set(m, d, gamma);
  // Values follow the perturbed centers but remain the exact distances.
  const PolyMesh mp = perturb_mesh(m, 0.1, 5);
  const SeedSet s1 = build_seed_set(mp, d, gamma);
  for (const auto& e : s1.entries)
    CHECK(e.value ==
          doctest::Approx(gamma.exact_distance(d, mp.cell_centers[e.cell])).epsilon(1e-15));
  CHECK(s0.size() > 0);
}

TEST_CASE("boundary Dirichlet triangles cover exactly the source patch") {
  const Domain d = c_shaped_domain();
  const PolyMesh m = generate_box_hex_mesh(d, {30, 30, 10});
  const GammaSpec gamma = c_shape_source();
  const BoundaryData bd = build_boundary_data(m, d, gamma);
  // The patch spans 10x10 grid faces, each tessellated into 4 triangles.
  CHECK(bd.dirichlet_tris.size() == 400);
  const double g = kGamma1;
  for (int t : bd.dirichlet_tris) {
    CHECK(m.tris[t].center.x == doctest::Approx(15 * g).epsilon(1e-12));
    CHECK(m.tris[t].center.y >= 5 * g - 1e-12);
  }
}

TEST_CASE("geodesic oracle agrees with the analytic distance on a convex domain") {
  const Domain d = cube_domain(1.25);
  const GammaSpec gamma{SphereGamma{{0, 0, 0}, 0.6}};
  const GeodesicOracle oracle(d, gamma, {64, 64, 64});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-1.2, 1.2);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 x{coord(rng), coord(rng), coord(rng)};
    const double exact = gamma.exact_distance(d, x);
    const double approx = oracle.distance(x);
    CHECK(approx >= exact - 1e-9);
    CHECK(approx <= exact + 0.08 * exact + oracle.spacing());
  }
}

TEST_CASE("geodesic oracle reproduces the two-segment wrap-around path") {
  const double g = kGamma1;
  const Domain d = c_shaped_domain();
  const GeodesicOracle oracle(d, c_shape_source(), {120, 120, 40});

  // From (-5g, -10g, 0) the shortest in-domain path runs straight up the
  // notch wall to the corner (-5g, 5g) and then straight to the source
  // plane: 15g + 20g. Both legs follow lattice directions through grid
  // nodes, so the oracle reproduces the length to rounding error.
  const Vec3 probe{-5 * g, -10 * g, 0.0};
  CHECK(oracle.distance(probe) == doctest::Approx(35 * g).epsilon(1e-9));

  // On the source itself the distance vanishes.
  const Vec3 on_source{15 * g, 10 * g, 0.0};
  CHECK(oracle.distance(on_source) <= 1e-12);
}

TEST_CASE("geodesic oracle rejects points outside the domain") {
  const Domain d = c_shaped_domain();
  const GeodesicOracle oracle(d, c_shape_source(), {60, 60, 20});
  const double g = kGamma1;
  CHECK_THROWS_AS(oracle.distance({10 * g, 0, 0}), std::runtime_error);  // in the notch
  CHECK_THROWS_AS(oracle.distance({16 * g, 0, 0}), std::runtime_error);  // outside
}
