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

#include "config.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace polydist::cli {

namespace {

using nlohmann::json;

Vec3 as_vec3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::runtime_error("expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::array<int, 3> as_n3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::runtime_error("expected [nx, ny, nz]");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) throw std::runtime_error("unknown key '" + key + "' in " + where);
  }
}

Domain parse_domain(const json& j) {
  reject_unknown(j, {"box", "cut"}, "mesh.domain");
  const auto& box = j.at("box");
  if (!box.is_array() || box.size() != 2)
    throw std::runtime_error("domain.box must be [[lo], [hi]]");
  if (j.contains("cut")) {
    const auto& cut = j.at("cut");
    return Domain::make_box_minus_box(as_vec3(box[0]), as_vec3(box[1]), as_vec3(cut[0]),
                                      as_vec3(cut[1]));
  }
  return Domain::make_box(as_vec3(box[0]), as_vec3(box[1]));
}

RectPatch parse_rect(const json& j) {
  reject_unknown(j, {"axis", "coord", "u_range", "v_range"}, "rect patch");
  RectPatch r;
  r.axis = j.at("axis").get<int>();
  r.coord = j.at("coord").get<double>();
  r.lo_u = j.at("u_range")[0].get<double>();
  r.hi_u = j.at("u_range")[1].get<double>();
  r.lo_v = j.at("v_range")[0].get<double>();
  r.hi_v = j.at("v_range")[1].get<double>();
  return r;
}

GammaSpec parse_gamma(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "sphere")
    return GammaSpec{SphereGamma{as_vec3(j.at("center")), j.at("radius").get<double>()}};
  if (type == "circle")
    return GammaSpec{CircleGamma{as_vec3(j.at("center")), j.at("radius").get<double>(),
                                 normalized(as_vec3(j.at("normal")))}};
  if (type == "disk")
    return GammaSpec{DiskGamma{as_vec3(j.at("center")), j.at("radius").get<double>(),
                               normalized(as_vec3(j.at("normal")))}};
  if (type == "square")
    return GammaSpec{SquareGamma{as_vec3(j.at("center")), j.at("side").get<double>(),
                                 normalized(as_vec3(j.at("normal")))}};
  if (type == "square-pair")
    return GammaSpec{SquarePairGamma{
        SquareGamma{as_vec3(j.at("first_center")), j.at("side").get<double>(),
                    normalized(as_vec3(j.at("normal")))},
        SquareGamma{as_vec3(j.at("second_center")), j.at("side").get<double>(),
                    normalized(as_vec3(j.at("normal")))}}};
  if (type == "plane-patch") return GammaSpec{PlanePatchGamma{parse_rect(j.at("rect"))}};
  if (type == "patch-union") {
    PatchUnionGamma u;
    for (const auto& rj : j.at("rects")) u.rects.push_back(parse_rect(rj));
    return GammaSpec{u};
  }
  if (type == "whole-boundary") return GammaSpec{WholeBoundaryGamma{}};
  throw std::runtime_error("unknown gamma type '" + type + "'");
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file " + path);
  json j;
  is >> j;

  reject_unknown(j,
                 {"mesh", "gamma", "schedule", "solver", "levels", "output_dir", "threads",
                  "repro", "mode"},
                 "config");

  RunConfig cfg;
  const auto& mesh = j.at("mesh");
  reject_unknown(mesh, {"file", "domain", "n", "perturb"}, "mesh");
  if (mesh.contains("file")) {
    cfg.mesh.file = mesh.at("file").get<std::string>();
  } else {
    cfg.mesh.domain = parse_domain(mesh.at("domain"));
    if (mesh.contains("n")) cfg.mesh.n = as_n3(mesh.at("n"));
  }
  if (mesh.contains("perturb")) {
    const auto& p = mesh.at("perturb");
    reject_unknown(p, {"amplitude", "seed"}, "mesh.perturb");
    cfg.mesh.perturb_amplitude = p.at("amplitude").get<double>();
    if (p.contains("seed")) cfg.mesh.perturb_seed = p.at("seed").get<std::uint64_t>();
  }

  cfg.gamma = parse_gamma(j.at("gamma"));

  if (j.contains("schedule")) {
    const auto& s = j.at("schedule");
    reject_unknown(s, {"stages", "eta", "k_max"}, "schedule");
    if (s.contains("stages")) cfg.schedule.stages = s.at("stages").get<int>();
    if (s.contains("eta")) cfg.schedule.eta = s.at("eta").get<double>();
    if (s.contains("k_max")) cfg.schedule.k_max = s.at("k_max").get<int>();
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    reject_unknown(s, {"method", "preconditioner", "tol", "max_iters"}, "solver");
    if (s.contains("method")) {
      const std::string m = s.at("method").get<std::string>();
      if (m == "bicgstab")
        cfg.solver.method = KrylovMethod::kBiCgStab;
      else if (m == "gmres")
        cfg.solver.method = KrylovMethod::kGmres;
      else
        throw std::runtime_error("unknown solver method '" + m + "'");
    }
    if (s.contains("preconditioner")) {
      const std::string p = s.at("preconditioner").get<std::string>();
      if (p == "none")
        cfg.solver.precond = Preconditioner::kNone;
      else if (p == "jacobi")
        cfg.solver.precond = Preconditioner::kJacobi;
      else if (p == "ilu0")
        cfg.solver.precond = Preconditioner::kIlu0;
      else
        throw std::runtime_error("unknown preconditioner '" + p + "'");
    }
    if (s.contains("tol")) cfg.solver.rel_tol = s.at("tol").get<double>();
    if (s.contains("max_iters")) cfg.solver.max_iters = s.at("max_iters").get<int>();
  }
  if (j.contains("levels")) {
    cfg.levels.clear();
    for (const auto& lj : j.at("levels")) cfg.levels.push_back(as_n3(lj));
  }
  if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  if (j.contains("repro")) cfg.repro = j.at("repro").get<bool>();
  if (j.contains("mode")) {
    const std::string m = j.at("mode").get<std::string>();
    if (m == "single-run")
      cfg.mode = ExperimentMode::kSingleRun;
    else if (m == "convergence-study")
      cfg.mode = ExperimentMode::kConvergenceStudy;
    else
      throw std::runtime_error("unknown mode '" + m + "'");
  }
  return cfg;
}

}  // namespace polydist::cli
