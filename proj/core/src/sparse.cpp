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

#include "polydist/sparse.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace polydist {

int CsrMatrix::find(int r, int c) const {
  const int* begin = cols.data() + row_ptr[r];
  const int* end = cols.data() + row_ptr[r + 1];
  const int* it = std::lower_bound(begin, end, c);
  if (it == end || *it != c) return -1;
  return static_cast<int>(it - cols.data());
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
#pragma omp parallel for schedule(static)
  for (long long r = 0; r < n; ++r) {
    double s = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += values[k] * x[cols[k]];
    y[r] = s;
  }
}

void dump_system(const SparseSystem& system, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  char buf[64];
  for (int r = 0; r < system.A.n; ++r) {
    for (int k = system.A.row_ptr[r]; k < system.A.row_ptr[r + 1]; ++k) {
      std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", r, system.A.cols[k],
                    system.A.values[k]);
      os << buf;
    }
  }
  os << "# rhs\n";
  for (int r = 0; r < system.A.n; ++r) {
    std::snprintf(buf, sizeof(buf), "%d %.17g\n", r, system.rhs[r]);
    os << buf;
  }
}

}  // namespace polydist
