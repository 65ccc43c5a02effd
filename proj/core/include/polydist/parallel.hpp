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

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace polydist {

// Global switch between bitwise-reproducible reductions (fixed-size blocks,
// partial sums combined in block order, independent of the thread count) and
// plain OpenMP reductions. Reproducible mode is the default; the fast path
// exists for large runs where the last bits do not matter.
void set_reproducible_reductions(bool on);
bool reproducible_reductions();

/// Sum of a[i]*b[i].
double det_dot(std::span<const double> a, std::span<const double> b);

/// Euclidean norm.
double det_norm2(std::span<const double> a);

/// Sum of |a[i]|.
double det_abs_sum(std::span<const double> a);

/// Max of |a[i]|; 0 for empty input.
double abs_max(std::span<const double> a);

}  // namespace polydist
