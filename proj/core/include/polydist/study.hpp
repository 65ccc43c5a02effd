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
#include <optional>
#include <string>
#include <vector>

#include "polydist/domain.hpp"
#include "polydist/driver.hpp"
#include "polydist/gamma.hpp"
#include "polydist/linsolve.hpp"

namespace polydist {

/// How to obtain one mesh: either generated (domain + resolution, optional
/// perturbation) or loaded from a poly-mesh file.
struct MeshSource {
  Domain domain = Domain::make_box({0, 0, 0}, {1, 1, 1});
  std::array<int, 3> n{8, 8, 8};
  double perturb_amplitude = 0.0;
  std::uint64_t perturb_seed = 0;
  std::string file;  // when non-empty, read the mesh from this path

  PolyMesh build() const;
};

enum class ExperimentMode { kSingleRun, kConvergenceStudy };

struct RunConfig {
  MeshSource mesh;
  GammaSpec gamma{WholeBoundaryGamma{}};
  StageSchedule schedule;
  SolverConfig solver;
  std::vector<std::array<int, 3>> levels;  // study resolutions, coarse to fine
  std::string output_dir = ".";
  int threads = 0;  // 0: library default
  bool repro = true;
  ExperimentMode mode = ExperimentMode::kSingleRun;
};

struct LevelResult {
  int level = 0;
  std::size_t cells = 0;
  double h = 0.0;
  double e1 = 0.0;
  double einf = 0.0;
  std::vector<int> stage_iterations;  // K_n
  double wall_seconds = 0.0;
};

struct ErrorReport {
  std::vector<LevelResult> levels;
  std::vector<double> eoc1;    // one per consecutive level pair
  std::vector<double> eocinf;
  std::string oracle;  // "analytic" or "geodesic-grid"
};

/// EOC_L = log(E_{L+1}/E_L) / log(h_{L+1}/h_L), one per consecutive pair.
std::vector<double> compute_eoc(const std::vector<double>& errors,
                                const std::vector<double>& h);

/// Volume-weighted L1 and max errors against the reference values,
/// excluding pinned cells.
struct ErrorPair {
  double e1 = 0.0;
  double einf = 0.0;
};
ErrorPair compute_errors(const PolyMesh& mesh, const SeedSet& seeds,
                         std::span<const double> u, std::span<const double> reference);

/// Reference distances at the cell centers: analytic for convex (uncut)
/// domains, geodesic-grid oracle otherwise. `oracle_cells` sets the oracle
/// resolution for the non-convex case.
std::vector<double> reference_distances(const PolyMesh& mesh, const Domain& domain,
                                        const GammaSpec& gamma,
                                        const std::array<int, 3>& oracle_cells,
                                        std::string* oracle_name = nullptr);

/// Solve every level and collect errors and EOCs.
ErrorReport run_convergence_study(const RunConfig& config, const LogSink& log = {});

/// CSV report, schema "polydist-report v1". Wall times are written only
/// when `include_walltime` is set, so reproducible runs stay byte-identical.
void write_report_csv(const ErrorReport& report, const std::string& path,
                      bool include_walltime);

/// Fixed-width text table of levels, errors and EOCs.
std::string format_report_table(const ErrorReport& report);

/// Cell-centered scalar field to a legacy-VTK file.
void export_field(const PolyMesh& mesh, std::span<const double> field,
                  const std::string& name, const std::string& path);

}  // namespace polydist
