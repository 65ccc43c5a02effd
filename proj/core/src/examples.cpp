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

#include "polydist/examples.hpp"

#include <stdexcept>

namespace polydist {

namespace {

// Domain scale constants shared by the presets.
constexpr double kG1 = 1.25 / 15.0;
constexpr double kG2 = 10.0 / 15.0;

Domain slab_with_notch() {
  return Domain::make_box_minus_box({-15 * kG1, -15 * kG1, -5 * kG1},
                                    {15 * kG1, 15 * kG1, 5 * kG1},
                                    {-5 * kG1, -5 * kG1, -5 * kG1},
                                    {15 * kG1, 5 * kG1, 5 * kG1});
}

RectPatch upper_right_patch() {
  RectPatch r;
  r.axis = 0;
  r.coord = 15 * kG1;
  r.lo_u = 5 * kG1;    // y
  r.hi_u = 15 * kG1;
  r.lo_v = -5 * kG1;   // z
  r.hi_v = 5 * kG1;
  r.outward = 1;
  return r;
}

RectPatch lower_right_patch() {
  RectPatch r = upper_right_patch();
  r.lo_u = -15 * kG1;
  r.hi_u = -5 * kG1;
  return r;
}

}  // namespace

RunConfig example_preset(const std::string& name) {
  RunConfig cfg;
  if (name == "ex1") {
    cfg.mesh.domain = Domain::make_box({-1.25, -1.25, -1.25}, {1.25, 1.25, 1.25});
    cfg.gamma = GammaSpec{SphereGamma{{0, 0, 0}, 0.6}};
    cfg.levels = {{8, 8, 8}, {16, 16, 16}, {32, 32, 32}};
  } else if (name == "ex2") {
    cfg.mesh.domain = Domain::make_box_minus_box(
        {-8 * kG1, -15 * kG1, -15 * kG1}, {22 * kG1, 15 * kG1, 15 * kG1},
        {8 * kG1, -15 * kG1, -5 * kG1}, {15 * kG1, 15 * kG1, 5 * kG1});
    cfg.gamma = GammaSpec{SphereGamma{{0, 0, 0}, 0.3}};
    cfg.levels = {{30, 30, 30}, {60, 60, 60}};
  } else if (name == "ex3") {
    cfg.mesh.domain = slab_with_notch();
    cfg.gamma = GammaSpec{PlanePatchGamma{upper_right_patch()}};
    cfg.levels = {{30, 30, 10}, {60, 60, 20}};
  } else if (name == "ex4") {
    cfg.mesh.domain = slab_with_notch();
    cfg.gamma = GammaSpec{PatchUnionGamma{{upper_right_patch(), lower_right_patch()}}};
    cfg.levels = {{30, 30, 10}, {60, 60, 20}};
  } else if (name == "ex5") {
    cfg.mesh.domain = slab_with_notch();
    cfg.gamma = GammaSpec{WholeBoundaryGamma{}};
    cfg.levels = {{30, 30, 10}, {60, 60, 20}};
  } else if (name == "ex6") {
    cfg.mesh.domain = Domain::make_box({-5, -5, -5}, {5, 5, 5});
    cfg.gamma = GammaSpec{WholeBoundaryGamma{}};
    cfg.levels = {{12, 12, 12}, {24, 24, 24}, {48, 48, 48}};
  } else if (name == "ex7") {
    cfg.mesh.domain = Domain::make_box({-5, -5, -5}, {5, 5, 5});
    cfg.gamma = GammaSpec{CircleGamma{{0, 0, 0}, 0.6, {0, 0, 1}}};
    cfg.levels = {{12, 12, 12}, {24, 24, 24}, {48, 48, 48}};
  } else if (name == "ex8") {
    cfg.mesh.domain = Domain::make_box({-5, -5, -5}, {5, 5, 5});
    cfg.gamma = GammaSpec{DiskGamma{{0, 0, 0}, 0.6, {0, 0, 1}}};
    cfg.levels = {{12, 12, 12}, {24, 24, 24}, {48, 48, 48}};
  } else if (name == "ex9") {
    cfg.mesh.domain = Domain::make_box({-10, -10, -10}, {10, 10, 10});
    cfg.gamma = GammaSpec{SquareGamma{{0, 0, 0}, 7 * kG2, {0, 0, 1}}};
    cfg.levels = {{16, 16, 16}, {32, 32, 32}, {48, 48, 48}};
  } else if (name == "ex10") {
    cfg.mesh.domain = Domain::make_box({-10, -10, -10}, {10, 10, 10});
    cfg.gamma = GammaSpec{SquarePairGamma{{{0, 0, 7.5 * kG2}, 7 * kG2, {0, 0, 1}},
                                          {{0, 0, -7.5 * kG2}, 7 * kG2, {0, 0, 1}}}};
    cfg.levels = {{16, 16, 16}, {32, 32, 32}, {48, 48, 48}};
  } else {
    throw std::invalid_argument("unknown example '" + name + "' (expected ex1..ex10)");
  }
  cfg.mesh.n = cfg.levels.front();
  return cfg;
}

std::vector<std::string> example_names() {
  return {"ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "ex7", "ex8", "ex9", "ex10"};
}

}  // namespace polydist
