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
#include <string>
#include <vector>

namespace polydist {

/// Square sparse matrix in compressed-row storage with sorted column
/// indices and a cached diagonal position per row.
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr;   // size n+1
  std::vector<int> cols;      // size nnz, sorted within each row
  std::vector<int> diag_pos;  // index into cols/values per row
  std::vector<double> values;

  std::span<const int> row_cols(int r) const {
    return {cols.data() + row_ptr[r], static_cast<std::size_t>(row_ptr[r + 1] - row_ptr[r])};
  }

  /// Position of (r, c) in values; -1 when outside the pattern.
  int find(int r, int c) const;

  /// y = A x (row-parallel).
  void multiply(std::span<const double> x, std::span<double> y) const;
};

/// One linear system A u = f of the deferred-correction iteration.
struct SparseSystem {
  CsrMatrix A;
  std::vector<double> rhs;
};

/// Writes "row col value" triplets with 17 significant digits, 0-based.
void dump_system(const SparseSystem& system, const std::string& path);

}  // namespace polydist
