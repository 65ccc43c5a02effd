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

#include <string>
#include <vector>

#include "polydist/study.hpp"

namespace polydist {

/// Built-in benchmark problems ex1..ex10 with exact reference solutions:
/// spheres, boundary patches and whole boundaries on convex and non-convex
/// box domains, plus circle/disk/square sources. Each preset fills the
/// domain, the source and a default ladder of refinement levels; everything
/// else keeps the RunConfig defaults.
RunConfig example_preset(const std::string& name);

std::vector<std::string> example_names();

}  // namespace polydist
