// Copyright 2026 The revgrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace revgrad {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestOptions {
  /// Runs every gradient with GradientOptions::perturb_deferred_scalar set,
  /// as a negative control.
  bool perturb_derivative = false;
};

/// Built-in invariant suites at N = 3 and 4:
///  - oracle-triangle: reverse vs reference (1e-11) and vs central finite
///    differences with delta 1e-5 (1e-6), for every ansatz family;
///  - op-counts: exact primitive counts of both gradient schedules;
///  - memory: peak live states of the backward sweep equals 4.
std::vector<SelftestCheck> run_selftest(const SelftestOptions& options = {});

}  // namespace revgrad
