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
#include <vector>

#include "polydist/gamma.hpp"
#include "polydist/mesh.hpp"

namespace polydist {

struct FluxField;  // assembly.hpp

/// Symmetric 3x3 matrix in packed storage (xx, xy, xz, yy, yz, zz).
struct Sym3 {
  double a[6] = {0, 0, 0, 0, 0, 0};

  void add_outer(const Vec3& d, double w) {
    a[0] += w * d.x * d.x;
    a[1] += w * d.x * d.y;
    a[2] += w * d.x * d.z;
    a[3] += w * d.y * d.y;
    a[4] += w * d.y * d.z;
    a[5] += w * d.z * d.z;
  }

  double trace() const { return a[0] + a[3] + a[5]; }
};

/// Minimize sum_a w_a (y . d_a - r_a)^2 subject to |y| <= 1, given the
/// normal matrix M = sum w d d^T and right-hand side b = sum w r d. The
/// interior minimizer is returned when it satisfies the constraint;
/// otherwise the exact norm-one minimizer is found by Newton iteration on
/// the secular equation in the Lagrange multiplier. Rank-deficient normal
/// matrices receive a small Tikhonov shift; `regularized` reports it.
Vec3 solve_constrained_wls(const Sym3& M, const Vec3& b, bool* regularized = nullptr);

/// Per-cell distance-weighted least-squares gradients with the unit-ball
/// constraint. The stencil of cell p is its face neighbors plus its
/// Dirichlet boundary triangles (with the pinned boundary values).
/// Returns one gradient per cell; `num_regularized` (optional) counts
/// rank-deficient stencils.
std::vector<Vec3> cell_gradients_wls(const PolyMesh& mesh, const BoundaryData& bd,
                                     std::span<const double> u,
                                     int* num_regularized = nullptr);

/// Per-triangle gradients: inverse-distance blend of the two adjacent cell
/// gradients (the adjacent cell's gradient on boundary triangles), clipped
/// to the unit ball.
std::vector<Vec3> face_gradients_beta(const PolyMesh& mesh,
                                      std::span<const Vec3> cell_grad);

/// Modified inflow-based gradient: inverse-distance average of the face
/// gradients over the inflow triangles (internal inflow plus Dirichlet
/// boundary inflow). Cells with no inflow triangles get the zero vector.
std::vector<Vec3> inflow_gradients(const PolyMesh& mesh, const FluxField& flux,
                                   const BoundaryData& bd, std::span<const Vec3> beta);

}  // namespace polydist
