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

#include "polydist/driver.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "polydist/gradient.hpp"

namespace polydist {

namespace {

void log_line(const LogSink& log, int stage, int k, double rho, int inner) {
  if (!log) return;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "stage=%d k=%d rho=%.3e inner=%d", stage, k, rho, inner);
  log(buf);
}

std::vector<double> pinned_initial_guess(const PolyMesh& mesh, const SeedSet& seeds) {
  std::vector<double> x(mesh.num_cells(), 0.0);
  for (const auto& e : seeds.entries) x[e.cell] = e.value;
  return x;
}

}  // namespace

std::vector<double> run_stage1(const PolyMesh& mesh, const SeedSet& seeds,
                               const BoundaryData& bd, double eps1,
                               const SolverConfig& solver) {
  if (seeds.empty()) throw std::runtime_error("no Dirichlet data");

  const AssemblyGeometry geom = build_assembly_geometry(mesh, bd);
  const std::vector<Vec3> zero_grad(mesh.num_cells(), Vec3{});
  const std::vector<Vec3> zero_beta(mesh.tris.size(), Vec3{});
  const FluxField flux = compute_fluxes(mesh, zero_beta);
  const ExplicitFields ex{zero_grad, zero_grad};

  SparseSystem sys = assemble(mesh, geom, seeds, bd, eps1, flux, ex);
  std::vector<double> u = pinned_initial_guess(mesh, seeds);
  solve_linear(sys, u, solver);
  return u;
}

SolveReport run_algorithm(const PolyMesh& mesh, const Domain& domain,
                          const GammaSpec& gamma, const StageSchedule& schedule,
                          const SolverConfig& solver, const StageObserver& observer,
                          const LogSink& log) {
  const SeedSet seeds = build_seed_set(mesh, domain, gamma);
  if (seeds.empty()) throw std::runtime_error("no Dirichlet data");
  const BoundaryData bd = build_boundary_data(mesh, domain, gamma);
  const AssemblyGeometry geom = build_assembly_geometry(mesh, bd);

  SolveReport report;
  const double h = mesh.h;

  // Stage 1: single solve from the zero field.
  {
    StageDiagnostics d;
    d.stage = 1;
    d.eps = schedule.eps(h, 1);
    const std::vector<Vec3> zero_grad(mesh.num_cells(), Vec3{});
    const std::vector<Vec3> zero_beta(mesh.tris.size(), Vec3{});
    const FluxField flux0 = compute_fluxes(mesh, zero_beta);
    SparseSystem sys =
        assemble(mesh, geom, seeds, bd, d.eps, flux0, ExplicitFields{zero_grad, zero_grad});
    report.u = pinned_initial_guess(mesh, seeds);
    const SolveStats st = solve_linear(sys, report.u, solver);
    d.iterations = 1;
    d.solver_iterations.push_back(st.iterations);
    log_line(log, 1, 1, 0.0, st.iterations);
    report.stages.push_back(std::move(d));
    if (observer) observer(1, report.u);
  }

  SparseSystem sys;
  sys.A = build_pattern(mesh);
  sys.rhs.resize(mesh.num_cells());

  for (int n = 2; n <= schedule.stages; ++n) {
    StageDiagnostics d;
    d.stage = n;
    d.eps = schedule.eps(h, n);

    // Fluxes are frozen per stage from the previous stage's solution.
    const std::vector<Vec3> grad_prev = cell_gradients_wls(mesh, bd, report.u);
    const std::vector<Vec3> beta_prev = face_gradients_beta(mesh, grad_prev);
    const FluxField flux = compute_fluxes(mesh, beta_prev);
    assemble_matrix(mesh, geom, seeds, bd, d.eps, flux, sys.A);

    std::vector<double> u = report.u;  // u^{n,0} = u^{n-1}

    // Explicit side of the first inner iteration.
    std::vector<Vec3> grad = grad_prev;
    std::vector<Vec3> beta = beta_prev;
    std::vector<Vec3> dfield = inflow_gradients(mesh, flux, bd, beta);
    assemble_rhs(mesh, geom, seeds, bd, d.eps, flux, ExplicitFields{grad, dfield}, sys.rhs);

    bool converged = false;
    for (int k = 1; k <= schedule.k_max; ++k) {
      const SolveStats st = solve_linear(sys, u, solver);

      // Residual of the nonlinear iteration: rebuild the explicit side from
      // the new iterate and measure A u - f(u). The rebuilt side doubles as
      // the next right-hand side.
      grad = cell_gradients_wls(mesh, bd, u);
      beta = face_gradients_beta(mesh, grad);
      dfield = inflow_gradients(mesh, flux, bd, beta);
      assemble_rhs(mesh, geom, seeds, bd, d.eps, flux, ExplicitFields{grad, dfield}, sys.rhs);
      const double rho = outer_residual(sys, u);

      d.residuals.push_back(rho);
      d.solver_iterations.push_back(st.iterations);
      d.iterations = k;
      log_line(log, n, k, rho, st.iterations);

      if (rho < schedule.eta) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "stage %d did not converge: rho=%.3e after %d iterations",
                    n, d.residuals.back(), schedule.k_max);
      throw std::runtime_error(buf);
    }

    report.u = std::move(u);
    report.stages.push_back(std::move(d));
    if (observer) observer(n, report.u);
  }
  return report;
}

}  // namespace polydist
