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

#include <benchmark/benchmark.h>

#include "polydist/gradient.hpp"
#include "polydist/mesh_gen.hpp"

namespace {

using namespace polydist;

struct Fixture {
  PolyMesh mesh;
  BoundaryData bd;
  std::vector<double> u;

  explicit Fixture(int n) {
    mesh = perturb_mesh(
        generate_box_hex_mesh(Domain::make_box({-1.25, -1.25, -1.25}, {1.25, 1.25, 1.25}),
                              {n, n, n}),
        0.2, 7);
    bd.tri_is_dirichlet.assign(mesh.tris.size(), 0);
    bd.tri_value.assign(mesh.tris.size(), 0.0);
    u.resize(mesh.num_cells());
    for (std::size_t p = 0; p < mesh.num_cells(); ++p)
      u[p] = std::abs(norm(mesh.cell_centers[p]) - 0.6);
  }
};

void BM_CellGradientsWls(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto grads = cell_gradients_wls(fx.mesh, fx.bd, fx.u);
    benchmark::DoNotOptimize(grads.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(fx.mesh.num_cells()));
}

void BM_FaceGradientsBeta(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  const auto grads = cell_gradients_wls(fx.mesh, fx.bd, fx.u);
  for (auto _ : state) {
    auto beta = face_gradients_beta(fx.mesh, grads);
    benchmark::DoNotOptimize(beta.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(fx.mesh.tris.size()));
}

}  // namespace

BENCHMARK(BM_CellGradientsWls)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FaceGradientsBeta)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
