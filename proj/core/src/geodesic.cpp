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

#include "polydist/geodesic.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace polydist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

GeodesicOracle::GeodesicOracle(const Domain& domain, const GammaSpec& gamma,
                               const std::array<int, 3>& cells_per_axis)
    : domain_(domain), n_(cells_per_axis), origin_(domain.box.lo) {
  for (int a = 0; a < 3; ++a) {
    if (n_[a] < 2) throw std::invalid_argument("oracle grid too coarse");
    delta_[a] = (domain.box.hi[a] - domain.box.lo[a]) / n_[a];
    max_spacing_ = std::max(max_spacing_, delta_[a]);
  }
  if (domain.cut) {
    for (int a = 0; a < 3; ++a) {
      for (const double c : {domain.cut->lo[a], domain.cut->hi[a]}) {
        const double f = (c - origin_[a]) / delta_[a];
        if (std::abs(f - std::llround(f)) > 1e-9)
          throw std::runtime_error("oracle grid is not aligned with the cut");
      }
    }
  }

  const std::size_t nn = static_cast<std::size_t>(n_[0] + 1) * (n_[1] + 1) * (n_[2] + 1);
  dist_.assign(nn, kInf);

  const double tol = 1e-9 * max_spacing_;
  std::vector<std::uint8_t> valid(nn, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

  // Nodes in the closed domain; those within two spacings of the source are
  // seeded with the exact distance (straight-line visibility holds there as
  // long as obstacles are thicker than the seeding band).
  for (int k = 0; k <= n_[2]; ++k)
    for (int j = 0; j <= n_[1]; ++j)
      for (int i = 0; i <= n_[0]; ++i) {
        const Vec3 x{origin_.x + i * delta_.x, origin_.y + j * delta_.y,
                     origin_.z + k * delta_.z};
        if (domain_.in_open_cut(x, tol)) continue;
        const int id = node_id(i, j, k);
        valid[id] = 1;
        const double d = gamma.exact_distance(domain_, x);
        if (d <= 2.0 * max_spacing_) {
          dist_[id] = d;
          heap.push({d, id});
        }
      }

  // 26-neighbor offsets with precomputed edge lengths.
  std::vector<std::array<int, 3>> offs;
  std::vector<double> lens;
  for (int dk = -1; dk <= 1; ++dk)
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0 && dk == 0) continue;
        offs.push_back({di, dj, dk});
        lens.push_back(std::sqrt(di * di * delta_.x * delta_.x +
                                 dj * dj * delta_.y * delta_.y +
                                 dk * dk * delta_.z * delta_.z));
      }

  while (!heap.empty()) {
    const auto [d, id] = heap.top();
    heap.pop();
    if (d > dist_[id]) continue;
    const int i = id % (n_[0] + 1);
    const int j = (id / (n_[0] + 1)) % (n_[1] + 1);
    const int k = id / ((n_[0] + 1) * (n_[1] + 1));
    for (std::size_t e = 0; e < offs.size(); ++e) {
      const int ni = i + offs[e][0], nj = j + offs[e][1], nk = k + offs[e][2];
      if (ni < 0 || ni > n_[0] || nj < 0 || nj > n_[1] || nk < 0 || nk > n_[2]) continue;
      const int nid = node_id(ni, nj, nk);
      if (!valid[nid]) continue;
      const double nd = d + lens[e];
      if (nd < dist_[nid]) {
        dist_[nid] = nd;
        heap.push({nd, nid});
      }
    }
  }
}

double GeodesicOracle::distance(const Vec3& x) const {
  const double tol = 1e-9 * max_spacing_;
  if (!domain_.contains(x, tol)) throw std::runtime_error("query point outside the domain");

  double f[3];
  int base[3];
  for (int a = 0; a < 3; ++a) {
    const double t = (x[a] - origin_[a]) / delta_[a];
    base[a] = std::clamp(static_cast<int>(std::floor(t)), 0, n_[a] - 1);
    f[a] = std::clamp(t - base[a], 0.0, 1.0);
  }

  double corner[8];
  bool all_finite = true;
  for (int c = 0; c < 8; ++c) {
    const int i = base[0] + (c & 1), j = base[1] + ((c >> 1) & 1), k = base[2] + (c >> 2);
    corner[c] = dist_[node_id(i, j, k)];
    if (!std::isfinite(corner[c])) all_finite = false;
  }
  if (all_finite) {
    const double c00 = corner[0] * (1 - f[0]) + corner[1] * f[0];
    const double c10 = corner[2] * (1 - f[0]) + corner[3] * f[0];
    const double c01 = corner[4] * (1 - f[0]) + corner[5] * f[0];
    const double c11 = corner[6] * (1 - f[0]) + corner[7] * f[0];
    const double c0 = c00 * (1 - f[1]) + c10 * f[1];
    const double c1 = c01 * (1 - f[1]) + c11 * f[1];
    return c0 * (1 - f[2]) + c1 * f[2];
  }
  // Near the cut some corners lie inside the removed region; fall back to the
  // nearest finite corner.
  double best = kInf;
  double best_d2 = kInf;
  for (int c = 0; c < 8; ++c) {
    if (!std::isfinite(corner[c])) continue;
    const int i = base[0] + (c & 1), j = base[1] + ((c >> 1) & 1), k = base[2] + (c >> 2);
    const Vec3 xn{origin_.x + i * delta_.x, origin_.y + j * delta_.y,
                  origin_.z + k * delta_.z};
    const double d2 = norm2(xn - x);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = corner[c];
    }
  }
  if (!std::isfinite(best)) throw std::runtime_error("query point outside the domain");
  return best;
}

}  // namespace polydist
