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

#include "polydist/gradient.hpp"

#include <cmath>

#include "polydist/assembly.hpp"

namespace polydist {

namespace {

// Eigen-decomposition of a symmetric 3x3 matrix by cyclic Jacobi rotations.
// Columns of Q are the eigenvectors of the returned eigenvalues.
void jacobi_eig3(const Sym3& M, double eval[3], Vec3 evec[3]) {
  double A[3][3] = {{M.a[0], M.a[1], M.a[2]}, {M.a[1], M.a[3], M.a[4]},
                    {M.a[2], M.a[4], M.a[5]}};
  double Q[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  for (int sweep = 0; sweep < 32; ++sweep) {
    double off = std::abs(A[0][1]) + std::abs(A[0][2]) + std::abs(A[1][2]);
    if (off == 0.0) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (A[p][q] == 0.0) continue;
        const double theta = (A[q][q] - A[p][p]) / (2.0 * A[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = A[k][p], akq = A[k][q];
          A[k][p] = c * akp - s * akq;
          A[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = A[p][k], aqk = A[q][k];
          A[p][k] = c * apk - s * aqk;
          A[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double qkp = Q[k][p], qkq = Q[k][q];
          Q[k][p] = c * qkp - s * qkq;
          Q[k][q] = s * qkp + c * qkq;
        }
      }
  }
  for (int i = 0; i < 3; ++i) {
    eval[i] = A[i][i];
    evec[i] = {Q[0][i], Q[1][i], Q[2][i]};
  }
}

Vec3 clip_unit(const Vec3& v) {
  const double n = norm(v);
  return n > 1.0 ? v / n : v;
}

}  // namespace

Vec3 solve_constrained_wls(const Sym3& M, const Vec3& b, bool* regularized) {
  double eval[3];
  Vec3 evec[3];
  jacobi_eig3(M, eval, evec);

  const double emax = std::max({eval[0], eval[1], eval[2], 0.0});
  const double emin = std::min({eval[0], eval[1], eval[2]});
  bool reg = false;
  double shift = 0.0;
  if (emax <= 0.0) {
    if (regularized) *regularized = true;
    return {};  // empty or fully degenerate stencil
  }
  if (emin < 1e-10 * emax) {
    shift = 1e-10 * M.trace();
    reg = true;
  }
  if (regularized) *regularized = reg;

  const double c0 = dot(evec[0], b), c1 = dot(evec[1], b), c2 = dot(evec[2], b);
  const double l0 = eval[0] + shift, l1 = eval[1] + shift, l2 = eval[2] + shift;

  auto y_of = [&](double lam) {
    return (c0 / (l0 + lam)) * evec[0] + (c1 / (l1 + lam)) * evec[1] +
           (c2 / (l2 + lam)) * evec[2];
  };

  const Vec3 y0 = y_of(0.0);
  const double n0 = norm(y0);
  if (n0 <= 1.0) return y0;

  // Boundary case: phi(lam) = |y(lam)|^2 - 1 is decreasing for lam >= 0 with
  // phi(0) > 0, so Newton from 0 (safeguarded by bisection) finds the root.
  double lo = 0.0;
  double hi = norm(b);  // |y(|b|)| <= 1
  while (norm(y_of(hi)) > 1.0) {
    lo = hi;
    hi *= 2.0;
  }
  double lam = lo;
  for (int it = 0; it < 100; ++it) {
    const double f0 = c0 / (l0 + lam), f1 = c1 / (l1 + lam), f2 = c2 / (l2 + lam);
    const double n2 = f0 * f0 + f1 * f1 + f2 * f2;
    const double phi = n2 - 1.0;
    if (std::abs(phi) < 1e-15) break;
    if (phi > 0.0)
      lo = lam;
    else
      hi = lam;
    const double dn2 = -2.0 * (f0 * f0 / (l0 + lam) + f1 * f1 / (l1 + lam) +
                               f2 * f2 / (l2 + lam));
    double next = lam - phi / dn2;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    lam = next;
  }
  Vec3 y = y_of(lam);
  const double ny = norm(y);
  if (ny > 0.0) y /= ny;  // land exactly on the sphere
  return y;
}

std::vector<Vec3> cell_gradients_wls(const PolyMesh& mesh, const BoundaryData& bd,
                                     std::span<const double> u, int* num_regularized) {
  const std::size_t nc = mesh.num_cells();
  std::vector<Vec3> grad(nc);
  int reg_count = 0;

#pragma omp parallel for schedule(static) reduction(+ : reg_count)
  for (long long pi = 0; pi < static_cast<long long>(nc); ++pi) {
    const int p = static_cast<int>(pi);
    Sym3 M;
    Vec3 b{};
    const Vec3 xp = mesh.cell_centers[p];
    const double up = u[p];

    for (std::size_t j = 0; j < mesh.cell_neighbors[p].size(); ++j) {
      const int q = mesh.cell_neighbors[p][j];
      const Vec3 d = mesh.cell_centers[q] - xp;
      const double w = 1.0 / norm2(d);
      M.add_outer(d, w);
      b += w * (u[q] - up) * d;
    }
    for (int t : mesh.cell_boundary_tris[p]) {
      if (!bd.tri_is_dirichlet[t]) continue;
      const Vec3 d = mesh.tris[t].center - xp;
      const double w = 1.0 / norm2(d);
      M.add_outer(d, w);
      b += w * (bd.tri_value[t] - up) * d;
    }

    bool reg = false;
    grad[p] = solve_constrained_wls(M, b, &reg);
    if (reg) ++reg_count;
  }

  if (num_regularized) *num_regularized = reg_count;
  return grad;
}

std::vector<Vec3> face_gradients_beta(const PolyMesh& mesh,
                                      std::span<const Vec3> cell_grad) {
  std::vector<Vec3> beta(mesh.tris.size());
#pragma omp parallel for schedule(static)
  for (long long ti = 0; ti < static_cast<long long>(mesh.tris.size()); ++ti) {
    const int t = static_cast<int>(ti);
    const Face& f = mesh.faces[mesh.tris[t].face];
    if (f.is_boundary()) {
      beta[t] = clip_unit(cell_grad[f.owner]);
      continue;
    }
    const double wp = 1.0 / norm(mesh.tris[t].center - mesh.cell_centers[f.owner]);
    const double wq = 1.0 / norm(mesh.tris[t].center - mesh.cell_centers[f.neighbor]);
    beta[t] = clip_unit((wp * cell_grad[f.owner] + wq * cell_grad[f.neighbor]) / (wp + wq));
  }
  return beta;
}

std::vector<Vec3> inflow_gradients(const PolyMesh& mesh, const FluxField& flux,
                                   const BoundaryData& bd, std::span<const Vec3> beta) {
  const std::size_t nc = mesh.num_cells();
  std::vector<Vec3> D(nc);
#pragma omp parallel for schedule(static)
  for (long long pi = 0; pi < static_cast<long long>(nc); ++pi) {
    const int p = static_cast<int>(pi);
    Vec3 num{};
    double den = 0.0;
    const Vec3 xp = mesh.cell_centers[p];
    for (int t : mesh.cell_internal_tris[p]) {
      if (flux.from_cell(mesh, t, p) >= 0.0) continue;
      const double w = 1.0 / norm(mesh.tris[t].center - xp);
      num += w * beta[t];
      den += w;
    }
    for (int t : mesh.cell_boundary_tris[p]) {
      if (!bd.tri_is_dirichlet[t] || flux.from_cell(mesh, t, p) >= 0.0) continue;
      const double w = 1.0 / norm(mesh.tris[t].center - xp);
      num += w * beta[t];
      den += w;
    }
    D[p] = den > 0.0 ? num / den : Vec3{};
  }
  return D;
}

}  // namespace polydist
