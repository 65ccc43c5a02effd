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

#include <span>
#include <stdexcept>
#include <string>

#include "polydist/sparse.hpp"

namespace polydist {

enum class KrylovMethod { kBiCgStab, kGmres };
enum class Preconditioner { kNone, kJacobi, kIlu0 };

struct SolverConfig {
  KrylovMethod method = KrylovMethod::kBiCgStab;
  Preconditioner precond = Preconditioner::kIlu0;
  double rel_tol = 1e-12;
  int max_iters = 0;        // 0: 10*sqrt(n) + 200
  int gmres_restart = 30;
};

struct SolveStats {
  int iterations = 0;
  double rel_residual = 0.0;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Solve A x = f starting from the initial guess in `x`, to
/// ||A x - f|| <= rel_tol * ||f||. Pinned unknowns (identity rows with a
/// matching initial guess) are preserved by both methods and both
/// preconditioners. Throws SolverError on non-convergence, carrying the
/// final relative residual.
SolveStats solve_linear(const SparseSystem& system, std::span<double> x,
                        const SolverConfig& config);

/// Mean absolute row residual (1/n) sum_p |(A u - f)_p| of the outer
/// deferred-correction iteration.
double outer_residual(const SparseSystem& system, std::span<const double> u);

}  // namespace polydist
