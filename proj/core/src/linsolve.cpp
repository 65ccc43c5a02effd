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

#include "polydist/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "polydist/parallel.hpp"

namespace polydist {

namespace {

// Zero-fill incomplete LU on the CSR pattern. L has unit diagonal; L and U
// share the matrix pattern.
class Ilu0 {
 public:
  explicit Ilu0(const CsrMatrix& A) : A_(A), lu_(A.values) {
    const int n = A.n;
    std::vector<int> col_pos(n, -1);
    for (int i = 0; i < n; ++i) {
      for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) col_pos[A.cols[k]] = k;
      for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
        const int j = A.cols[k];
        if (j >= i) break;  // cols sorted: only the strict lower part
        const double diag = lu_[A.diag_pos[j]];
        if (diag == 0.0) continue;
        const double lij = lu_[k] / diag;
        lu_[k] = lij;
        for (int kk = A.diag_pos[j] + 1; kk < A.row_ptr[j + 1]; ++kk) {
          const int pos = col_pos[A.cols[kk]];
          if (pos >= 0) lu_[pos] -= lij * lu_[kk];
        }
      }
      for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) col_pos[A.cols[k]] = -1;
    }
  }

  void apply(std::span<const double> r, std::span<double> z) const {
    const int n = A_.n;
    // Forward solve L y = r.
    for (int i = 0; i < n; ++i) {
      double s = r[i];
      for (int k = A_.row_ptr[i]; k < A_.row_ptr[i + 1]; ++k) {
        const int j = A_.cols[k];
        if (j >= i) break;
        s -= lu_[k] * z[j];
      }
      z[i] = s;
    }
    // Backward solve U z = y.
    for (int i = n - 1; i >= 0; --i) {
      double s = z[i];
      for (int k = A_.row_ptr[i + 1] - 1; k >= A_.row_ptr[i]; --k) {
        const int j = A_.cols[k];
        if (j <= i) break;
        s -= lu_[k] * z[j];
      }
      const double d = lu_[A_.diag_pos[i]];
      z[i] = d != 0.0 ? s / d : s;
    }
  }

 private:
  const CsrMatrix& A_;
  std::vector<double> lu_;
};

class Precond {
 public:
  Precond(const CsrMatrix& A, Preconditioner kind) : kind_(kind) {
    if (kind_ == Preconditioner::kJacobi) {
      inv_diag_.resize(A.n);
      for (int i = 0; i < A.n; ++i) {
        const double d = A.values[A.diag_pos[i]];
        inv_diag_[i] = d != 0.0 ? 1.0 / d : 1.0;
      }
    } else if (kind_ == Preconditioner::kIlu0) {
      ilu_ = std::make_unique<Ilu0>(A);
    }
  }

  void apply(std::span<const double> r, std::span<double> z) const {
    switch (kind_) {
      case Preconditioner::kNone:
        std::copy(r.begin(), r.end(), z.begin());
        break;
      case Preconditioner::kJacobi:
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(r.size()); ++i)
          z[i] = inv_diag_[i] * r[i];
        break;
      case Preconditioner::kIlu0:
        ilu_->apply(r, z);
        break;
    }
  }

 private:
  Preconditioner kind_;
  std::vector<double> inv_diag_;
  std::unique_ptr<Ilu0> ilu_;
};

void axpy(double a, std::span<const double> x, std::span<double> y) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(y.size()); ++i) y[i] += a * x[i];
}

SolveStats bicgstab(const SparseSystem& sys, std::span<double> x, const Precond& M,
                    double tol_abs, int max_iters) {
  const CsrMatrix& A = sys.A;
  const std::size_t n = static_cast<std::size_t>(A.n);
  std::vector<double> r(n), r0(n), p(n), v(n), s(n), t(n), y(n), z(n);

  A.multiply(x, r);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) r[i] = sys.rhs[i] - r[i];
  r0 = r;

  double res = det_norm2(r);
  if (res <= tol_abs) return {0, res};

  double rho = 1.0, alpha = 1.0, omega = 1.0;
  std::fill(p.begin(), p.end(), 0.0);
  std::fill(v.begin(), v.end(), 0.0);

  for (int it = 1; it <= max_iters; ++it) {
    const double rho_new = det_dot(r0, r);
    if (rho_new == 0.0) return {it, res};  // breakdown at converged-enough state
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      p[i] = r[i] + beta * (p[i] - omega * v[i]);

    M.apply(p, y);
    A.multiply(y, v);
    const double r0v = det_dot(r0, v);
    if (r0v == 0.0) return {it, res};
    alpha = rho / r0v;
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) s[i] = r[i] - alpha * v[i];

    res = det_norm2(s);
    if (res <= tol_abs) {
      axpy(alpha, y, x);
      return {it, res};
    }

    M.apply(s, z);
    A.multiply(z, t);
    const double tt = det_dot(t, t);
    omega = tt != 0.0 ? det_dot(t, s) / tt : 0.0;
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      x[i] += alpha * y[i] + omega * z[i];
      r[i] = s[i] - omega * t[i];
    }
    res = det_norm2(r);
    if (res <= tol_abs) return {it, res};
    if (omega == 0.0) break;
  }
  return {-1, res};  // caller turns this into SolverError
}

SolveStats gmres(const SparseSystem& sys, std::span<double> x, const Precond& M,
                 double tol_abs, int max_iters, int restart) {
  const CsrMatrix& A = sys.A;
  const std::size_t n = static_cast<std::size_t>(A.n);
  const int m = std::max(restart, 1);

  std::vector<std::vector<double>> V(m + 1, std::vector<double>(n));
  std::vector<double> H((m + 1) * m, 0.0);
  std::vector<double> cs(m), sn(m), g(m + 1);
  std::vector<double> w(n), z(n);

  int total_iters = 0;
  double res = 0.0;
  while (total_iters < max_iters) {
    A.multiply(x, w);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) w[i] = sys.rhs[i] - w[i];
    res = det_norm2(w);
    if (res <= tol_abs) return {total_iters, res};

    const double inv = 1.0 / res;
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) V[0][i] = w[i] * inv;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = res;

    int k = 0;
    for (; k < m && total_iters < max_iters; ++k, ++total_iters) {
      M.apply(V[k], z);
      A.multiply(z, w);
      for (int j = 0; j <= k; ++j) {
        const double h = det_dot(w, V[j]);
        H[j * m + k] = h;
        axpy(-h, V[j], w);
      }
      const double hk1 = det_norm2(w);
      H[(k + 1) * m + k] = hk1;
      if (hk1 != 0.0) {
        const double winv = 1.0 / hk1;
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i) V[k + 1][i] = w[i] * winv;
      }
      // Givens rotations to keep H upper triangular.
      for (int j = 0; j < k; ++j) {
        const double t1 = cs[j] * H[j * m + k] + sn[j] * H[(j + 1) * m + k];
        const double t2 = -sn[j] * H[j * m + k] + cs[j] * H[(j + 1) * m + k];
        H[j * m + k] = t1;
        H[(j + 1) * m + k] = t2;
      }
      const double denom = std::hypot(H[k * m + k], H[(k + 1) * m + k]);
      if (denom == 0.0) {
        ++k;
        break;
      }
      cs[k] = H[k * m + k] / denom;
      sn[k] = H[(k + 1) * m + k] / denom;
      H[k * m + k] = denom;
      H[(k + 1) * m + k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      res = std::abs(g[k + 1]);
      if (res <= tol_abs) {
        ++k;
        break;
      }
    }

    // Back substitution and update x += M^{-1} V yk.
    std::vector<double> yk(k, 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= H[i * m + j] * yk[j];
      yk[i] = H[i * m + i] != 0.0 ? s / H[i * m + i] : 0.0;
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (int j = 0; j < k; ++j) axpy(yk[j], V[j], w);
    M.apply(w, z);
    axpy(1.0, z, x);

    if (res <= tol_abs) return {total_iters, res};
  }
  return {-1, res};
}

}  // namespace

SolveStats solve_linear(const SparseSystem& system, std::span<double> x,
                        const SolverConfig& config) {
  if (config.rel_tol <= 0.0 || config.rel_tol >= 1.0)
    throw std::invalid_argument("relative tolerance must be in (0, 1)");
  const int n = system.A.n;
  const int max_iters =
      config.max_iters > 0
          ? config.max_iters
          : static_cast<int>(10.0 * std::sqrt(static_cast<double>(n))) + 200;

  const double norm_f = det_norm2(system.rhs);
  const double tol_abs = config.rel_tol * (norm_f > 0.0 ? norm_f : 1.0);

  const Precond M(system.A, config.precond);
  SolveStats stats = config.method == KrylovMethod::kBiCgStab
                         ? bicgstab(system, x, M, tol_abs, max_iters)
                         : gmres(system, x, M, tol_abs, max_iters, config.gmres_restart);
  if (stats.iterations < 0) {
    const double rel = norm_f > 0.0 ? stats.rel_residual / norm_f : stats.rel_residual;
    throw SolverError("linear solver did not converge (relative residual " +
                          std::to_string(rel) + ")",
                      rel, max_iters);
  }
  stats.rel_residual = norm_f > 0.0 ? stats.rel_residual / norm_f : stats.rel_residual;
  return stats;
}

double outer_residual(const SparseSystem& system, std::span<const double> u) {
  const std::size_t n = static_cast<std::size_t>(system.A.n);
  std::vector<double> r(n);
  system.A.multiply(u, r);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) r[i] -= system.rhs[i];
  return det_abs_sum(r) / static_cast<double>(n);
}

}  // namespace polydist
