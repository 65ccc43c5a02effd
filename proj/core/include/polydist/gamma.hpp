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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "polydist/domain.hpp"
#include "polydist/mesh.hpp"

namespace polydist {

// Source set variants. Distance is measured from these objects; all provide
// exact Euclidean point distance and cell-closure intersection queries.

struct SphereGamma {
  Vec3 center;
  double radius;
};

/// Rectangle in a coordinate plane; used for sources on the domain boundary.
struct PlanePatchGamma {
  RectPatch rect;
};

struct PatchUnionGamma {
  std::vector<RectPatch> rects;
};

struct CircleGamma {
  Vec3 center;
  double radius;
  Vec3 normal;  // unit plane normal
};

struct DiskGamma {
  Vec3 center;
  double radius;
  Vec3 normal;
};

/// Filled square patch; the plane normal must be a coordinate axis so the
/// sides align with the remaining two axes.
struct SquareGamma {
  Vec3 center;
  double side;
  Vec3 normal;
};

struct SquarePairGamma {
  SquareGamma first;
  SquareGamma second;
};

struct WholeBoundaryGamma {};

using GammaVariant = std::variant<SphereGamma, PlanePatchGamma, PatchUnionGamma,
                                  CircleGamma, DiskGamma, SquareGamma, SquarePairGamma,
                                  WholeBoundaryGamma>;

class GammaSpec {
 public:
  GammaSpec(GammaVariant v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  const GammaVariant& variant() const { return v_; }

  /// True when the source lies on the domain boundary (whole boundary or
  /// boundary patches), false when strictly interior. Throws
  /// "mixed Gamma unsupported" when the source touches both regions.
  bool on_boundary(const Domain& domain) const;

  /// Exact Euclidean distance from x to the source.
  double exact_distance(const Domain& domain, const Vec3& x) const;

  /// Does the closure of cell p intersect the source?
  bool intersects_cell(const PolyMesh& mesh, const Domain& domain, int p) const;

  std::string describe() const;

 private:
  GammaVariant v_;
};

/// Pinned near-source cells with their exact distance values.
struct SeedSet {
  enum class Provenance : std::uint8_t { kBoundarySource, kInteriorSource };

  struct Entry {
    int cell;
    double value;
    Provenance from;
  };

  std::vector<Entry> entries;           // sorted by cell index
  std::vector<std::uint8_t> is_pinned;  // per cell
  std::vector<double> pinned_value;     // per cell, valid where is_pinned

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

/// Split of source-touching cells: first set for sources on the boundary,
/// second for strictly interior sources; the other one is always empty.
struct CellClassification {
  std::vector<int> boundary_source_cells;  // I^1
  std::vector<int> interior_source_cells;  // I^2
};

CellClassification classify_cells(const PolyMesh& mesh, const Domain& domain,
                                  const GammaSpec& gamma);

/// K plus all face-neighbors of members of K, sorted and unique.
std::vector<int> dilate(const PolyMesh& mesh, const std::vector<int>& K);

/// Seeded cell set: interior sources are dilated twice, boundary sources
/// once; every seeded cell is pinned to the exact distance at its center.
SeedSet build_seed_set(const PolyMesh& mesh, const Domain& domain, const GammaSpec& gamma);

/// Dirichlet data on boundary triangles: a triangle carries a pinned value
/// iff its centroid lies on the source (tolerance 1e-9 * h).
struct BoundaryData {
  std::vector<std::uint8_t> tri_is_dirichlet;  // per triangle, boundary tris only
  std::vector<double> tri_value;               // valid where tri_is_dirichlet
  std::vector<int> dirichlet_tris;
};

BoundaryData build_boundary_data(const PolyMesh& mesh, const Domain& domain,
                                 const GammaSpec& gamma);

/// Uniform-bin index over cell bounding boxes, for near-source candidate
/// pruning during classification.
class CellBinIndex {
 public:
  CellBinIndex(const PolyMesh& mesh, int bins_per_axis);

  /// Cells whose bounding box overlaps the query box, sorted.
  std::vector<int> query(const Aabb& box) const;

 private:
  Aabb domain_;
  int nbins_;
  Vec3 inv_width_;
  std::vector<std::vector<int>> bins_;
};

}  // namespace polydist
