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

#include "polydist/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace polydist {

namespace {

std::atomic<bool> g_repro{true};

constexpr std::size_t kBlock = 1024;

// Blocked reduction: per-block partial sums are computed (possibly in
// parallel) and combined serially in block order, so the result does not
// depend on the number of workers.
template <typename BlockOp>
double blocked_sum(std::size_t n, BlockOp&& op) {
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  if (nblocks <= 1) return n ? op(0, n) : 0.0;
  std::vector<double> partial(nblocks);
#pragma omp parallel for schedule(static)
  for (long long bi = 0; bi < static_cast<long long>(nblocks); ++bi) {
    const std::size_t begin = static_cast<std::size_t>(bi) * kBlock;
    const std::size_t end = std::min(begin + kBlock, n);
    partial[static_cast<std::size_t>(bi)] = op(begin, end);
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

void set_reproducible_reductions(bool on) { g_repro.store(on); }

bool reproducible_reductions() { return g_repro.load(); }

double det_dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  if (!g_repro.load()) {
    double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
    return s;
  }
  return blocked_sum(n, [&](std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += a[i] * b[i];
    return s;
  });
}

double det_norm2(std::span<const double> a) { return std::sqrt(det_dot(a, a)); }

double det_abs_sum(std::span<const double> a) {
  const std::size_t n = a.size();
  if (!g_repro.load()) {
    double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      s += std::abs(a[static_cast<std::size_t>(i)]);
    return s;
  }
  return blocked_sum(n, [&](std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += std::abs(a[i]);
    return s;
  });
}

double abs_max(std::span<const double> a) {
  double m = 0.0;
#pragma omp parallel for reduction(max : m) schedule(static)
  for (long long i = 0; i < static_cast<long long>(a.size()); ++i)
    m = std::max(m, std::abs(a[static_cast<std::size_t>(i)]));
  return m;
}

}  // namespace polydist
