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

#include "polydist/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polydist {

FluxField compute_fluxes(const PolyMesh& mesh, std::span<const Vec3> beta) {
  FluxField flux;
  flux.tri_flux.resize(mesh.tris.size());
#pragma omp parallel for schedule(static)
  for (long long t = 0; t < static_cast<long long>(mesh.tris.size()); ++t) {
    const Vec3& b = beta[t];
    const double scale = 1.0 / std::sqrt(norm2(b) + kSigma * kSigma);
    flux.tri_flux[t] = scale * dot(b, mesh.tris[t].normal);
  }
  return flux;
}

std::vector<CellSplit> split_sets(const PolyMesh& mesh, const FluxField& flux,
                                  const BoundaryData& bd) {
  std::vector<CellSplit> splits(mesh.num_cells());
#pragma omp parallel for schedule(static)
  for (long long pi = 0; pi < static_cast<long long>(mesh.num_cells()); ++pi) {
    const int p = static_cast<int>(pi);
    CellSplit& s = splits[p];
    for (int t : mesh.cell_internal_tris[p]) {
      if (flux.from_cell(mesh, t, p) < 0.0)
        s.internal_inflow.push_back(t);
      else
        s.internal_outflow.push_back(t);
    }
    for (int t : mesh.cell_boundary_tris[p]) {
      if (flux.from_cell(mesh, t, p) < 0.0) {
        if (bd.tri_is_dirichlet[t])
          s.boundary_inflow_dirichlet.push_back(t);
        else
          s.boundary_inflow_other.push_back(t);
      } else {
        s.boundary_outflow.push_back(t);
      }
    }
  }
  return splits;
}

SkewnessPoints skewness_points(const PolyMesh& mesh, int face) {
  const Face& f = mesh.faces[face];
  if (f.is_boundary()) throw std::invalid_argument("skewness points need an internal face");
  const Vec3 ng = mesh.face_vectors[face];
  const double ng_len = norm(ng);
  if (!(ng_len > 0.0)) throw std::runtime_error("zero face vector");
  const Vec3 nhat = ng / ng_len;

  const Vec3 xg = mesh.face_centers[face];
  const Vec3 xp = mesh.cell_centers[f.owner];
  const Vec3 xq = mesh.cell_centers[f.neighbor];

  SkewnessPoints s;
  const Vec3 dpg = xg - xp;
  const Vec3 dqg = xg - xq;
  s.d_pp = dpg - dot(nhat, dpg) * nhat;
  s.d_qq = dqg - dot(nhat, dqg) * nhat;
  s.d_pq_len = norm((xq + s.d_qq) - (xp + s.d_pp));
  if (s.d_pq_len < 1e-12 * mesh.h)
    throw std::runtime_error("coincident projected centers");
  return s;
}

AssemblyGeometry build_assembly_geometry(const PolyMesh& mesh, const BoundaryData& bd) {
  AssemblyGeometry g;
  g.face_trans.assign(mesh.num_faces(), 0.0);
  g.face_dpp.assign(mesh.num_faces(), Vec3{});
  g.face_dqq.assign(mesh.num_faces(), Vec3{});
  for (std::size_t fi = 0; fi < mesh.num_faces(); ++fi) {
    if (mesh.faces[fi].is_boundary()) continue;
    const SkewnessPoints s = skewness_points(mesh, static_cast<int>(fi));
    g.face_trans[fi] = norm(mesh.face_vectors[fi]) / s.d_pq_len;
    g.face_dpp[fi] = s.d_pp;
    g.face_dqq[fi] = s.d_qq;
  }

  g.tri_btrans.assign(mesh.tris.size(), 0.0);
  g.tri_bdpp.assign(mesh.tris.size(), Vec3{});
  for (int t : bd.dirichlet_tris) {
    const Tri& tri = mesh.tris[t];
    const int p = mesh.faces[tri.face].owner;
    const double area = tri.area();
    if (!(area > 0.0)) continue;
    const Vec3 nhat = tri.normal / area;
    const Vec3 dpb = tri.center - mesh.cell_centers[p];
    const Vec3 dpp = dpb - dot(nhat, dpb) * nhat;
    const double dist = norm(dpb - dpp);  // |n . d_pb|
    if (dist < 1e-12 * mesh.h) throw std::runtime_error("coincident projected centers");
    g.tri_btrans[t] = area / dist;
    g.tri_bdpp[t] = dpp;
  }
  return g;
}

CsrMatrix build_pattern(const PolyMesh& mesh) {
  const int n = static_cast<int>(mesh.num_cells());
  CsrMatrix A;
  A.n = n;
  A.row_ptr.resize(n + 1);
  A.row_ptr[0] = 0;
  for (int p = 0; p < n; ++p)
    A.row_ptr[p + 1] = A.row_ptr[p] + 1 + static_cast<int>(mesh.cell_neighbors[p].size());
  A.cols.resize(A.row_ptr[n]);
  A.diag_pos.resize(n);
  for (int p = 0; p < n; ++p) {
    int* out = A.cols.data() + A.row_ptr[p];
    *out++ = p;
    for (int q : mesh.cell_neighbors[p]) *out++ = q;
    std::sort(A.cols.data() + A.row_ptr[p], A.cols.data() + A.row_ptr[p + 1]);
    A.diag_pos[p] = A.find(p, p);
  }
  A.values.assign(A.cols.size(), 0.0);
  return A;
}

namespace {

// Index of column q in row p; the pattern is exactly the 1-ring, so a miss
// means the discretization tried to couple beyond face neighbors.
int ring_slot(const CsrMatrix& A, int p, int q) {
  const int k = A.find(p, q);
  if (k < 0) throw std::logic_error("coupling outside the 1-ring face neighborhood");
  return k;
}

}  // namespace

void assemble_matrix(const PolyMesh& mesh, const AssemblyGeometry& geom,
                     const SeedSet& seeds, const BoundaryData& bd, double eps,
                     const FluxField& flux, CsrMatrix& A) {
  const int n = static_cast<int>(mesh.num_cells());
#pragma omp parallel for schedule(static)
  for (long long pi = 0; pi < n; ++pi) {
    const int p = static_cast<int>(pi);
    for (int k = A.row_ptr[p]; k < A.row_ptr[p + 1]; ++k) A.values[k] = 0.0;

    if (seeds.is_pinned[p]) {
      A.values[A.diag_pos[p]] = 1.0;
      continue;
    }

    double diag = 0.0;
    // Diffusion through internal faces.
    for (std::size_t j = 0; j < mesh.cell_internal_faces[p].size(); ++j) {
      const int g = mesh.cell_internal_faces[p][j];
      const int q = mesh.cell_neighbors[p][j];
      const double T = eps * geom.face_trans[g];
      diag += T;
      A.values[ring_slot(A, p, q)] -= T;
    }
    // Advection: inflow triangles are implicit.
    for (int t : mesh.cell_internal_tris[p]) {
      const double mu = flux.from_cell(mesh, t, p);
      if (mu < 0.0) {
        diag += -mu;
        A.values[ring_slot(A, p, mesh.tri_other_cell(t, p))] += mu;
      }
    }
    // Boundary triangles.
    for (int t : mesh.cell_boundary_tris[p]) {
      if (bd.tri_is_dirichlet[t]) {
        diag += eps * geom.tri_btrans[t];
        const double mu = flux.from_cell(mesh, t, p);
        if (mu < 0.0) diag += -mu;
      }
    }
    A.values[A.diag_pos[p]] = diag;
  }
}

void assemble_rhs(const PolyMesh& mesh, const AssemblyGeometry& geom,
                  const SeedSet& seeds, const BoundaryData& bd, double eps,
                  const FluxField& flux, const ExplicitFields& ex,
                  std::span<double> rhs) {
  const int n = static_cast<int>(mesh.num_cells());
#pragma omp parallel for schedule(static)
  for (long long pi = 0; pi < n; ++pi) {
    const int p = static_cast<int>(pi);
    if (seeds.is_pinned[p]) {
      rhs[p] = seeds.pinned_value[p];
      continue;
    }

    double f = mesh.cell_volumes[p];
    const Vec3 xp = mesh.cell_centers[p];

    // Skewness corrections of the diffusion term.
    for (std::size_t j = 0; j < mesh.cell_internal_faces[p].size(); ++j) {
      const int g = mesh.cell_internal_faces[p][j];
      const int q = mesh.cell_neighbors[p][j];
      const bool p_is_owner = mesh.faces[g].owner == p;
      const Vec3& dpp = p_is_owner ? geom.face_dpp[g] : geom.face_dqq[g];
      const Vec3& dqq = p_is_owner ? geom.face_dqq[g] : geom.face_dpp[g];
      f += eps * geom.face_trans[g] *
           (dot(ex.cell_grad[q], dqq) - dot(ex.cell_grad[p], dpp));
    }
    // Advection: inflow gets the neighbor's inflow-gradient correction,
    // outflow is fully explicit from this cell's inflow gradient.
    for (int t : mesh.cell_internal_tris[p]) {
      const double mu = flux.from_cell(mesh, t, p);
      if (mu < 0.0) {
        const int q = mesh.tri_other_cell(t, p);
        const Vec3 dqf = mesh.tris[t].center - mesh.cell_centers[q];
        f += -mu * dot(ex.inflow_grad[q], dqf);
      } else {
        const Vec3 dpf = mesh.tris[t].center - xp;
        f += -mu * dot(ex.inflow_grad[p], dpf);
      }
    }
    // Boundary triangles, split by Dirichlet membership and flux sign; the
    // inflow non-Dirichlet case contributes nothing (state constraint).
    for (int t : mesh.cell_boundary_tris[p]) {
      const double mu = flux.from_cell(mesh, t, p);
      if (bd.tri_is_dirichlet[t]) {
        const double ub = bd.tri_value[t];
        f += eps * geom.tri_btrans[t] * (ub - dot(ex.cell_grad[p], geom.tri_bdpp[t]));
        if (mu < 0.0) {
          f += -mu * ub;
        } else {
          const Vec3 dpb = mesh.tris[t].center - xp;
          f += -mu * dot(ex.inflow_grad[p], dpb);
        }
      } else if (mu >= 0.0) {
        f += eps * dot(ex.cell_grad[p], mesh.tris[t].normal);
        const Vec3 dpb = mesh.tris[t].center - xp;
        f += -mu * dot(ex.inflow_grad[p], dpb);
      }
    }
    rhs[p] = f;
  }
}

SparseSystem assemble(const PolyMesh& mesh, const AssemblyGeometry& geom,
                      const SeedSet& seeds, const BoundaryData& bd, double eps,
                      const FluxField& flux, const ExplicitFields& ex) {
  SparseSystem sys;
  sys.A = build_pattern(mesh);
  assemble_matrix(mesh, geom, seeds, bd, eps, flux, sys.A);
  sys.rhs.resize(mesh.num_cells());
  assemble_rhs(mesh, geom, seeds, bd, eps, flux, ex, sys.rhs);
  return sys;
}

void verify_sparsity(const SparseSystem& system, const PolyMesh& mesh,
                     const SeedSet& seeds) {
  const CsrMatrix& A = system.A;
  if (A.n != static_cast<int>(mesh.num_cells()))
    throw std::logic_error("system size does not match the mesh");
  for (int p = 0; p < A.n; ++p) {
    for (int k = A.row_ptr[p]; k < A.row_ptr[p + 1]; ++k) {
      const int q = A.cols[k];
      if (q == p) continue;
      const auto& nb = mesh.cell_neighbors[p];
      if (std::find(nb.begin(), nb.end(), q) == nb.end())
        throw std::logic_error("nonzero outside the 1-ring face neighborhood");
    }
    if (seeds.is_pinned[p]) {
      for (int k = A.row_ptr[p]; k < A.row_ptr[p + 1]; ++k) {
        const double want = A.cols[k] == p ? 1.0 : 0.0;
        if (A.values[k] != want) throw std::logic_error("pinned row is not an identity row");
      }
    }
  }
}

}  // namespace polydist
