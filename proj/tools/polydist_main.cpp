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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "config.hpp"
#include "polydist/examples.hpp"
#include "polydist/geodesic.hpp"
#include "polydist/mesh_gen.hpp"
#include "polydist/mesh_io.hpp"
#include "polydist/parallel.hpp"
#include "polydist/sparse.hpp"
#include "polydist/study.hpp"

namespace {

using namespace polydist;

void apply_runtime_options(const RunConfig& cfg) {
  set_reproducible_reductions(cfg.repro);
  int threads = cfg.threads;
  if (threads == 0) {
    if (const char* env = std::getenv("POLYDIST_THREADS")) threads = std::atoi(env);
  }
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

RunConfig resolve_config(const std::string& config_path, const std::string& example,
                         int threads, std::optional<bool> repro, int levels) {
  RunConfig cfg;
  if (!example.empty())
    cfg = example_preset(example);
  else if (!config_path.empty())
    cfg = cli::load_config(config_path);
  else
    throw std::runtime_error("either --config or --example is required");
  if (!config_path.empty() && !example.empty()) {
    // Config overrides preset fields when both are given.
    RunConfig file_cfg = cli::load_config(config_path);
    cfg = file_cfg;
  }
  if (threads >= 0) cfg.threads = threads;
  if (repro.has_value()) cfg.repro = *repro;
  if (levels > 0) {
    if (levels > static_cast<int>(cfg.levels.size()))
      throw std::runtime_error("preset provides fewer levels than requested");
    cfg.levels.resize(levels);
  }
  return cfg;
}

int cmd_solve(const RunConfig& cfg, bool dump_matrix) {
  apply_runtime_options(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  const PolyMesh mesh = cfg.mesh.build();
  std::fprintf(stderr, "mesh: cells=%zu h=%.6g\n", mesh.num_cells(), mesh.h);

  const SolveReport rep =
      run_algorithm(mesh, cfg.mesh.domain, cfg.gamma, cfg.schedule, cfg.solver, {},
                    [](std::string_view s) { std::cout << s << '\n'; });

  const auto out = std::filesystem::path(cfg.output_dir);
  export_field(mesh, rep.u, "distance", (out / "distance.vtk").string());
  std::fprintf(stderr, "wrote %s\n", (out / "distance.vtk").c_str());

  if (dump_matrix) {
    // Re-assemble the final-stage system for inspection.
    const SeedSet seeds = build_seed_set(mesh, cfg.mesh.domain, cfg.gamma);
    const BoundaryData bd = build_boundary_data(mesh, cfg.mesh.domain, cfg.gamma);
    const AssemblyGeometry geom = build_assembly_geometry(mesh, bd);
    std::vector<Vec3> zg(mesh.num_cells(), Vec3{});
    std::vector<Vec3> zb(mesh.tris.size(), Vec3{});
    const SparseSystem sys =
        assemble(mesh, geom, seeds, bd, cfg.schedule.eps(mesh.h, cfg.schedule.stages),
                 compute_fluxes(mesh, zb), ExplicitFields{zg, zg});
    dump_system(sys, (out / "system.txt").string());
    std::fprintf(stderr, "wrote %s\n", (out / "system.txt").c_str());
  }
  return 0;
}

int cmd_study(const RunConfig& cfg) {
  apply_runtime_options(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  const ErrorReport rep = run_convergence_study(
      cfg, [](std::string_view s) { std::cout << s << '\n'; });
  const auto out = std::filesystem::path(cfg.output_dir);
  write_report_csv(rep, (out / "report.csv").string(), !cfg.repro);
  std::cout << format_report_table(rep);
  std::fprintf(stderr, "wrote %s\n", (out / "report.csv").c_str());
  return 0;
}

int cmd_oracle(const RunConfig& cfg, const std::string& points_path, bool geodesic) {
  apply_runtime_options(cfg);
  std::istream* in = &std::cin;
  std::ifstream file;
  if (!points_path.empty() && points_path != "-") {
    file.open(points_path);
    if (!file) throw std::runtime_error("cannot open " + points_path);
    in = &file;
  }
  std::optional<GeodesicOracle> oracle;
  if (geodesic) {
    std::array<int, 3> n = cfg.levels.empty() ? cfg.mesh.n : cfg.levels.back();
    for (int& v : n) v *= 4;
    oracle.emplace(cfg.mesh.domain, cfg.gamma, n);
  }
  Vec3 x;
  while (*in >> x.x >> x.y >> x.z) {
    const double d = oracle ? oracle->distance(x)
                            : cfg.gamma.exact_distance(cfg.mesh.domain, x);
    std::printf("%.17g %.17g %.17g %.17g\n", x.x, x.y, x.z, d);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distance fields on polyhedral meshes"};
  app.require_subcommand(1);

  std::string config_path, example, mesh_out, mesh_in, vtk_out, points_path;
  int threads = -1;
  int levels = 0;
  bool dump_matrix = false;
  bool geodesic = false;
  std::optional<bool> repro;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run-config file");
    sub->add_option("--example", example, "built-in problem preset (ex1..ex10)");
    sub->add_option("--threads", threads, "worker thread count (0 = library default)");
    sub->add_flag("--repro,!--no-repro",
                  [&](std::int64_t count) { repro = count > 0; },
                  "bitwise-reproducible reductions (default on)");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one problem and write the field");
  add_common(solve);
  solve->add_flag("--dump-system", dump_matrix, "also write the final-stage matrix");

  CLI::App* study = app.add_subcommand("study", "run a convergence study");
  add_common(study);
  study->add_option("--levels", levels, "use only the first N refinement levels");

  CLI::App* mesh = app.add_subcommand("mesh", "generate or inspect poly-mesh files");
  add_common(mesh);
  mesh->add_option("-o,--output", mesh_out, "write the generated mesh here (.pm)");
  mesh->add_option("--info", mesh_in, "print counts and h of an existing mesh file");
  mesh->add_option("--vtk", vtk_out, "also write a VTK view of the mesh");

  CLI::App* oracle = app.add_subcommand("oracle", "evaluate the distance oracle on points");
  add_common(oracle);
  oracle->add_option("--points", points_path, "file of 'x y z' lines (default stdin)");
  oracle->add_flag("--geodesic", geodesic, "use the in-domain geodesic oracle");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed() || study->parsed() || oracle->parsed()) {
      const RunConfig cfg = resolve_config(config_path, example, threads, repro, levels);
      if (solve->parsed()) return cmd_solve(cfg, dump_matrix);
      if (study->parsed()) return cmd_study(cfg);
      return cmd_oracle(cfg, points_path, geodesic);
    }
    // mesh subcommand
    if (!mesh_in.empty()) {
      const PolyMesh m = read_polymesh(mesh_in);
      std::printf("cells=%zu faces=%zu internal_faces=%zu vertices=%zu h=%.6g\n",
                  m.num_cells(), m.num_faces(), m.num_internal_faces(), m.vertices.size(),
                  m.h);
      if (!vtk_out.empty()) write_vtk(m, vtk_out);
      return 0;
    }
    const RunConfig cfg = resolve_config(config_path, example, threads, repro, 0);
    apply_runtime_options(cfg);
    const PolyMesh m = cfg.mesh.build();
    std::printf("cells=%zu faces=%zu internal_faces=%zu vertices=%zu h=%.6g\n",
                m.num_cells(), m.num_faces(), m.num_internal_faces(), m.vertices.size(),
                m.h);
    if (!mesh_out.empty()) {
      write_polymesh(m, mesh_out, true);
      std::fprintf(stderr, "wrote %s\n", mesh_out.c_str());
    }
    if (!vtk_out.empty()) write_vtk(m, vtk_out);
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
