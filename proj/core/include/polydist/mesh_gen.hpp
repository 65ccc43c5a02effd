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

#include <array>
#include <cstdint>

#include "polydist/domain.hpp"
#include "polydist/mesh.hpp"

namespace polydist {

/// Structured hex mesh of a box or box-minus-box domain, n cells per axis.
/// For cut domains the cut must be aligned with grid planes (throws
/// otherwise); cells inside the cut are omitted and the re-entrant surfaces
/// become boundary faces.
PolyMesh generate_box_hex_mesh(const Domain& domain, const std::array<int, 3>& n);

/// Displace interior vertices by up to amplitude/2 of the shortest incident
/// edge in each coordinate, deterministically from `seed`. Boundary vertices
/// are kept fixed, so boundary patches and their tessellation are preserved.
/// amplitude must be in [0, 0.3]; amplitude 0 returns the mesh unchanged.
PolyMesh perturb_mesh(const PolyMesh& mesh, double amplitude, std::uint64_t seed);

}  // namespace polydist
