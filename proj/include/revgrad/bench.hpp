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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "revgrad/ansatz.hpp"
#include "revgrad/gradient.hpp"

namespace revgrad {

enum class GradientMethod { kReverse, kReference, kNonHermitian, kFiniteDifference };

GradientMethod parse_method(const std::string& name);
std::string method_name(GradientMethod method);

/// Dispatches to the gradient routine for `method`.
GradientReport compute_gradient(GradientMethod method, const Circuit& circuit,
                                std::span<const double> params, const Observable& obs,
                                const StateVector& input,
                                double delta = kDefaultFiniteDifferenceStep);

/// One (family, P, method) cell of a scaling benchmark.
struct BenchRecord {
  char family = 'A';
  std::size_t num_qubits = 0;
  std::size_t num_params = 0;
  std::string method;
  std::size_t repetitions = 0;
  double mean_runtime_seconds = 0.0;
  double stddev_runtime_seconds = 0.0;
  std::uint64_t gate_applies = 0;
  std::uint64_t derivative_applies = 0;
  std::uint64_t clones = 0;
  std::uint64_t inner_products = 0;
};

/// Least-squares line through (log P, log y).
struct ScalingFit {
  std::string method;
  /// "runtime" or "gate_applies".
  std::string quantity;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline constexpr std::size_t kMinFitPoints = 4;

/// Fits log(ys) against log(xs). Returns nullopt with fewer than
/// kMinFitPoints distinct x values.
std::optional<ScalingFit> fit_log_log(const std::string& method, const std::string& quantity,
                                      std::span<const double> xs, std::span<const double> ys);

struct BenchConfig {
  AnsatzFamily family = AnsatzFamily::C;
  std::size_t num_qubits = 4;
  std::vector<std::size_t> reps;
  std::vector<GradientMethod> methods = {GradientMethod::kReverse, GradientMethod::kReference};
  std::size_t repetitions = 24;
  std::uint64_t seed = 0;
};

struct BenchPoint {
  std::size_t reps = 0;
  /// Angles drawn uniformly from [0, 2pi), shared by every method and
  /// repetition at this point.
  std::vector<double> theta;
};

struct BenchResult {
  std::vector<BenchPoint> points;
  std::vector<BenchRecord> records;
  std::vector<ScalingFit> fits;
};

/// Times `repetitions` gradient evaluations for every (reps, method) cell
/// under the H^(x)N observable from |0...0>. Circuit construction and the
/// angle draw are outside the timed region. `progress`, when given, receives
/// one line per finished cell.
BenchResult run_benchmark(const BenchConfig& config, std::ostream* progress = nullptr);

/// Record table with header, then a blank line and the fit table.
void write_bench_csv(std::ostream& out, const BenchResult& result);

std::string bench_csv_header();

}  // namespace revgrad
