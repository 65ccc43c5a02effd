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
#include "polydist/sparse.hpp"

namespace polydist {

/// Small constant of the sigma-regularized norm |x|_sigma = sqrt(|x|^2 + s^2)
/// used to normalize the advecting vector.
constexpr double kSigma = 1e-12;

/// Normal fluxes mu through the tessellated triangles, stored once per
/// triangle with the owner's orientation: mu seen from the owner; the
/// neighbor sees the negation.
struct FluxField {
  std::vector<double> tri_flux;

  double from_cell(const PolyMesh& mesh, int t, int p) const {
    return mesh.faces[mesh.tris[t].face].owner == p ? tri_flux[t] : -tri_flux[t];
  }
};

/// mu = beta / |beta|_sigma . n per triangle.
FluxField compute_fluxes(const PolyMesh& mesh, std::span<const Vec3> beta);

/// Flux-sign splits of one cell's triangles. Zero flux counts as outflow.
struct CellSplit {
  std::vector<int> internal_inflow;            // F_p^-
  std::vector<int> internal_outflow;           // F_p^+
  std::vector<int> boundary_inflow_dirichlet;  // B_p^- cap B_D
  std::vector<int> boundary_inflow_other;      // B_p^- minus B_D
  std::vector<int> boundary_outflow;           // B_p^+
};

std::vector<CellSplit> split_sets(const PolyMesh& mesh, const FluxField& flux,
                                  const BoundaryData& bd);

/// Skewness displacements of an internal face: the projections of the two
/// cell centers onto the face-normal line through the face center.
struct SkewnessPoints {
  Vec3 d_pp;       // x_p' - x_p, perpendicular to n_g
  Vec3 d_qq;       // x_q' - x_q
  double d_pq_len; // |x_q' - x_p'|
};

SkewnessPoints skewness_points(const PolyMesh& mesh, int face);

/// Geometry of the diffusion term, built once per mesh + boundary data:
/// internal-face transmissibilities |n_g| / |d_p'q'| with the skewness
/// displacements, and the analogous per-triangle quantities on Dirichlet
/// boundary triangles (projected against the triangle's own normal).
struct AssemblyGeometry {
  std::vector<double> face_trans;  // per face, internal only
  std::vector<Vec3> face_dpp;
  std::vector<Vec3> face_dqq;
  std::vector<double> tri_btrans;  // per tri, Dirichlet boundary only
  std::vector<Vec3> tri_bdpp;
};

AssemblyGeometry build_assembly_geometry(const PolyMesh& mesh, const BoundaryData& bd);

/// Fixed sparsity: diagonal plus face neighbors (the 1-ring guarantee).
CsrMatrix build_pattern(const PolyMesh& mesh);

/// Explicit data entering the right-hand side, all evaluated at the
/// previous inner iterate.
struct ExplicitFields {
  std::span<const Vec3> cell_grad;    // constrained WLS gradients
  std::span<const Vec3> inflow_grad;  // modified inflow-based gradients
};

/// Fill the matrix values of one deferred-correction system. The matrix
/// depends on the mesh, the regularization parameter, the frozen fluxes and
/// the pinned rows only, so within a stage it is assembled once.
void assemble_matrix(const PolyMesh& mesh, const AssemblyGeometry& geom,
                     const SeedSet& seeds, const BoundaryData& bd, double eps,
                     const FluxField& flux, CsrMatrix& A);

/// Fill the right-hand side from the explicit fields of the previous iterate.
void assemble_rhs(const PolyMesh& mesh, const AssemblyGeometry& geom,
                  const SeedSet& seeds, const BoundaryData& bd, double eps,
                  const FluxField& flux, const ExplicitFields& ex,
                  std::span<double> rhs);

/// Matrix and right-hand side together.
SparseSystem assemble(const PolyMesh& mesh, const AssemblyGeometry& geom,
                      const SeedSet& seeds, const BoundaryData& bd, double eps,
                      const FluxField& flux, const ExplicitFields& ex);

/// Throws std::logic_error if any nonzero lies outside the 1-ring
/// face-neighbor graph plus diagonal, or a pinned row is not an identity row.
void verify_sparsity(const SparseSystem& system, const PolyMesh& mesh,
                     const SeedSet& seeds);

}  // namespace polydist
