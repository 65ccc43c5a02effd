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

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "polydist/assembly.hpp"
#include "polydist/gamma.hpp"
#include "polydist/linsolve.hpp"
#include "polydist/mesh.hpp"

namespace polydist {

/// Regularization schedule: stage n uses eps_n = h^(n/2). The first stage is
/// a single linear solve; later stages iterate until the mean absolute row
/// residual drops below eta.
struct StageSchedule {
  int stages = 5;
  double eta = 1e-8;
  int k_max = 200;

  double eps(double h, int n) const { return std::pow(h, 0.5 * n); }
};

struct StageDiagnostics {
  int stage = 0;
  double eps = 0.0;
  int iterations = 0;                // K_n
  std::vector<double> residuals;     // rho per inner iteration
  std::vector<int> solver_iterations;
};

struct SolveReport {
  std::vector<double> u;
  std::vector<StageDiagnostics> stages;
};

/// Per-inner-iteration log line in key=value form, e.g.
/// "stage=2 k=3 rho=4.1e-09 inner=27".
using LogSink = std::function<void(std::string_view)>;

/// Called with the field after each completed stage.
using StageObserver = std::function<void(int stage, std::span<const double> u)>;

/// First-stage solve: with a zero initial field all gradients and fluxes
/// vanish and the system reduces to a Poisson problem with pinned rows
/// (and pinned Dirichlet triangles for boundary sources). Throws
/// "no Dirichlet data" on an empty seed set.
std::vector<double> run_stage1(const PolyMesh& mesh, const SeedSet& seeds,
                               const BoundaryData& bd, double eps1,
                               const SolverConfig& solver);

/// Full outer algorithm over the regularization stages.
SolveReport run_algorithm(const PolyMesh& mesh, const Domain& domain,
                          const GammaSpec& gamma, const StageSchedule& schedule,
                          const SolverConfig& solver, const StageObserver& observer = {},
                          const LogSink& log = {});

}  // namespace polydist
