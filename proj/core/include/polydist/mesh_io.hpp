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

#include "polydist/mesh.hpp"

namespace polydist {

// Poly-mesh file format, version 1.
//
// ASCII:
//   polymesh 1 ascii
//   <nv> <nf> <nc>
//   nv lines:  x y z                       (17 significant digits)
//   nf lines:  k v1 ... vk owner neighbor  (neighbor -1 for boundary faces)
//   nc lines:  m f1 ... fm
//
// Binary: the header line "polymesh 1 binary\n" followed by little-endian
// u64 nv,nf,nc; nv * 3 doubles; per face u32 k, k u32 vertex ids, u32 owner,
// i32 neighbor; per cell u32 m, m u32 face ids.
//
// Face loops are stored oriented outward from the owner cell.

void write_polymesh(const PolyMesh& mesh, const std::string& path, bool binary);

PolyMesh read_polymesh(const std::string& path);

/// Legacy-VTK unstructured grid (polyhedron cells), with an optional
/// cell-centered scalar field. Values are printed with 17 significant
/// digits, so output is bit-stable for identical inputs.
void write_vtk(const PolyMesh& mesh, const std::string& path,
               std::span<const double> cell_field = {},
               const std::string& field_name = "distance");

}  // namespace polydist
