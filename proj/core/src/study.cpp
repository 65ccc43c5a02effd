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

#include "polydist/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "polydist/geodesic.hpp"
#include "polydist/mesh_gen.hpp"
#include "polydist/mesh_io.hpp"
#include "polydist/parallel.hpp"

namespace polydist {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

PolyMesh MeshSource::build() const {
  if (!file.empty()) return read_polymesh(file);
  PolyMesh mesh = generate_box_hex_mesh(domain, n);
  if (perturb_amplitude > 0.0) mesh = perturb_mesh(mesh, perturb_amplitude, perturb_seed);
  return mesh;
}

std::vector<double> compute_eoc(const std::vector<double>& errors,
                                const std::vector<double>& h) {
  if (errors.size() != h.size()) throw std::invalid_argument("errors/h size mismatch");
  std::vector<double> eoc;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(errors[i + 1] > 0.0) || !(h[i] > 0.0) || !(h[i + 1] > 0.0))
      throw std::invalid_argument("errors and mesh sizes must be positive");
    eoc.push_back(std::log(errors[i + 1] / errors[i]) / std::log(h[i + 1] / h[i]));
  }
  return eoc;
}

ErrorPair compute_errors(const PolyMesh& mesh, const SeedSet& seeds,
                         std::span<const double> u, std::span<const double> reference) {
  double vol = 0.0, werr = 0.0, emax = 0.0;
  for (std::size_t p = 0; p < mesh.num_cells(); ++p) {
    if (seeds.is_pinned[p]) continue;
    const double err = std::abs(u[p] - reference[p]);
    vol += mesh.cell_volumes[p];
    werr += mesh.cell_volumes[p] * err;
    emax = std::max(emax, err);
  }
  if (vol == 0.0) return {0.0, 0.0};
  return {werr / vol, emax};
}

std::vector<double> reference_distances(const PolyMesh& mesh, const Domain& domain,
                                        const GammaSpec& gamma,
                                        const std::array<int, 3>& oracle_cells,
                                        std::string* oracle_name) {
  std::vector<double> ref(mesh.num_cells());
  if (!domain.has_cut()) {
    if (oracle_name) *oracle_name = "analytic";
#pragma omp parallel for schedule(static)
    for (long long p = 0; p < static_cast<long long>(mesh.num_cells()); ++p)
      ref[p] = gamma.exact_distance(domain, mesh.cell_centers[p]);
    return ref;
  }
  if (oracle_name) *oracle_name = "geodesic-grid";
  const GeodesicOracle oracle(domain, gamma, oracle_cells);
  for (std::size_t p = 0; p < mesh.num_cells(); ++p)
    ref[p] = oracle.distance(mesh.cell_centers[p]);
  return ref;
}

ErrorReport run_convergence_study(const RunConfig& config, const LogSink& log) {
  if (config.levels.size() < 2)
    throw std::invalid_argument("a convergence study needs at least 2 levels");

  // Oracle resolution: four times the finest level per axis.
  std::array<int, 3> oracle_cells{0, 0, 0};
  for (const auto& lvl : config.levels)
    for (int a = 0; a < 3; ++a) oracle_cells[a] = std::max(oracle_cells[a], 4 * lvl[a]);

  ErrorReport report;
  std::optional<GeodesicOracle> oracle;
  if (config.mesh.domain.has_cut()) {
    report.oracle = "geodesic-grid";
    oracle.emplace(config.mesh.domain, config.gamma, oracle_cells);
  } else {
    report.oracle = "analytic";
  }

  for (std::size_t li = 0; li < config.levels.size(); ++li) {
    MeshSource src = config.mesh;
    src.n = config.levels[li];
    const auto t0 = std::chrono::steady_clock::now();
    const PolyMesh mesh = src.build();

    const SeedSet seeds = build_seed_set(mesh, src.domain, config.gamma);
    SolveReport solved = run_algorithm(mesh, src.domain, config.gamma, config.schedule,
                                       config.solver, {}, log);

    std::vector<double> ref(mesh.num_cells());
    if (oracle) {
      for (std::size_t p = 0; p < mesh.num_cells(); ++p)
        ref[p] = oracle->distance(mesh.cell_centers[p]);
    } else {
#pragma omp parallel for schedule(static)
      for (long long p = 0; p < static_cast<long long>(mesh.num_cells()); ++p)
        ref[p] = config.gamma.exact_distance(src.domain, mesh.cell_centers[p]);
    }
    const ErrorPair err = compute_errors(mesh, seeds, solved.u, ref);
    const auto t1 = std::chrono::steady_clock::now();

    LevelResult lv;
    lv.level = static_cast<int>(li + 1);
    lv.cells = mesh.num_cells();
    lv.h = mesh.h;
    lv.e1 = err.e1;
    lv.einf = err.einf;
    for (const auto& s : solved.stages) lv.stage_iterations.push_back(s.iterations);
    lv.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    report.levels.push_back(std::move(lv));

    if (log) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "level=%d cells=%zu h=%.6g e1=%.6g einf=%.6g",
                    static_cast<int>(li + 1), mesh.num_cells(), mesh.h, err.e1, err.einf);
      log(buf);
    }
  }

  std::vector<double> e1, einf, hs;
  for (const auto& lv : report.levels) {
    e1.push_back(lv.e1);
    einf.push_back(lv.einf);
    hs.push_back(lv.h);
  }
  report.eoc1 = compute_eoc(e1, hs);
  report.eocinf = compute_eoc(einf, hs);
  return report;
}

void write_report_csv(const ErrorReport& report, const std::string& path,
                      bool include_walltime) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << "# polydist-report v1\n";
  os << "level,cells,h,e1,eoc1,einf,eocinf,k_stages,oracle,wall_seconds\n";
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const LevelResult& lv = report.levels[i];
    os << lv.level << ',' << lv.cells << ',' << fmt17(lv.h) << ',' << fmt17(lv.e1) << ',';
    if (i < report.eoc1.size()) os << fmt17(report.eoc1[i]);
    os << ',' << fmt17(lv.einf) << ',';
    if (i < report.eocinf.size()) os << fmt17(report.eocinf[i]);
    os << ',';
    for (std::size_t k = 0; k < lv.stage_iterations.size(); ++k) {
      if (k) os << ';';
      os << lv.stage_iterations[k];
    }
    os << ',' << report.oracle << ',';
    if (include_walltime) os << fmt17(lv.wall_seconds);
    os << '\n';
  }
}

std::string format_report_table(const ErrorReport& report) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%4s %9s %11s %11s %6s %11s %6s\n", "L", "cells", "h",
                "E1", "EOC", "Einf", "EOC");
  os << buf;
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const LevelResult& lv = report.levels[i];
    std::string eoc1 = i < report.eoc1.size() ? "" : "  -  ";
    std::string eocinf = i < report.eocinf.size() ? "" : "  -  ";
    if (i < report.eoc1.size()) {
      std::snprintf(buf, sizeof(buf), "%6.2f", report.eoc1[i]);
      eoc1 = buf;
    }
    if (i < report.eocinf.size()) {
      std::snprintf(buf, sizeof(buf), "%6.2f", report.eocinf[i]);
      eocinf = buf;
    }
    std::snprintf(buf, sizeof(buf), "%4d %9zu %11.4e %11.4e %6s %11.4e %6s\n", lv.level,
                  lv.cells, lv.h, lv.e1, eoc1.c_str(), lv.einf, eocinf.c_str());
    os << buf;
  }
  os << "oracle: " << report.oracle << '\n';
  return os.str();
}

void export_field(const PolyMesh& mesh, std::span<const double> field,
                  const std::string& name, const std::string& path) {
  write_vtk(mesh, path, field, name);
}

}  // namespace polydist
