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

#include "revgrad/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace revgrad {

GradientMethod parse_method(const std::string& name) {
  if (name == "reverse") return GradientMethod::kReverse;
  if (name == "reference") return GradientMethod::kReference;
  if (name == "non-hermitian") return GradientMethod::kNonHermitian;
  if (name == "finite-difference") return GradientMethod::kFiniteDifference;
  throw std::domain_error("unknown gradient method '" + name +
                          "' (expected reverse, reference, non-hermitian or finite-difference)");
}

std::string method_name(GradientMethod method) {
  switch (method) {
    case GradientMethod::kReverse: return "reverse";
    case GradientMethod::kReference: return "reference";
    case GradientMethod::kNonHermitian: return "non-hermitian";
    case GradientMethod::kFiniteDifference: return "finite-difference";
  }
  return "unknown";
}

GradientReport compute_gradient(GradientMethod method, const Circuit& circuit,
                                std::span<const double> params, const Observable& obs,
                                const StateVector& input, double delta) {
  switch (method) {
    case GradientMethod::kReverse: return reverse_mode_gradient(circuit, params, obs, input);
    case GradientMethod::kReference: return reference_gradient(circuit, params, obs, input);
    case GradientMethod::kNonHermitian: return non_hermitian_gradient(circuit, params, obs, input);
    case GradientMethod::kFiniteDifference:
      return finite_difference_gradient(circuit, params, obs, input, delta);
  }
  throw std::domain_error("unknown gradient method");
}

std::optional<ScalingFit> fit_log_log(const std::string& method, const std::string& quantity,
                                      std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::domain_error("fit_log_log: length mismatch");
  if (std::set<double>(xs.begin(), xs.end()).size() < kMinFitPoints) return std::nullopt;

  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  ScalingFit fit{method, quantity};
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  const double mean_y = sy / n;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double ly = std::log(ys[i]);
    const double pred = fit.intercept + fit.slope * std::log(xs[i]);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - mean_y) * (ly - mean_y);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

BenchResult run_benchmark(const BenchConfig& config, std::ostream* progress) {
  if (config.repetitions < 1) throw std::domain_error("benchmark repetitions must be >= 1");
  if (config.reps.empty()) throw std::domain_error("benchmark needs at least one reps value");

  BenchResult result;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const Observable obs = Observable::hadamard_all(config.num_qubits);
  const StateVector input = init_basis_state(config.num_qubits, 0);

  for (std::size_t reps : config.reps) {
    const Circuit circuit = build_ansatz({config.family, config.num_qubits, reps});
    BenchPoint point{reps, std::vector<double>(circuit.num_params())};
    for (double& t : point.theta) t = angle(rng);

    for (GradientMethod method : config.methods) {
      std::vector<double> seconds;
      seconds.reserve(config.repetitions);
      GradientReport report;
      for (std::size_t r = 0; r < config.repetitions; ++r) {
        const auto start = std::chrono::steady_clock::now();
        report = compute_gradient(method, circuit, point.theta, obs, input);
        const auto stop = std::chrono::steady_clock::now();
        seconds.push_back(std::chrono::duration<double>(stop - start).count());
      }
      double mean = 0.0;
      for (double s : seconds) mean += s;
      mean /= static_cast<double>(seconds.size());
      double var = 0.0;
      for (double s : seconds) var += (s - mean) * (s - mean);
      const double stddev =
          seconds.size() > 1 ? std::sqrt(var / static_cast<double>(seconds.size() - 1)) : 0.0;

      BenchRecord rec;
      rec.family = family_letter(config.family);
      rec.num_qubits = config.num_qubits;
      rec.num_params = circuit.num_params();
      rec.method = method_name(method);
      rec.repetitions = config.repetitions;
      rec.mean_runtime_seconds = mean;
      rec.stddev_runtime_seconds = stddev;
      rec.gate_applies = report.counters.gate_applies;
      rec.derivative_applies = report.counters.derivative_applies;
      rec.clones = report.counters.clones;
      rec.inner_products = report.counters.inner_products;
      if (progress != nullptr) {
        *progress << rec.family << " N=" << rec.num_qubits << " P=" << rec.num_params << " "
                  << rec.method << " mean=" << rec.mean_runtime_seconds << "s\n";
      }
      result.records.push_back(rec);
    }
    result.points.push_back(std::move(point));
  }

  for (GradientMethod method : config.methods) {
    const std::string name = method_name(method);
    std::vector<double> ps, runtimes, gates;
    for (const BenchRecord& rec : result.records) {
      if (rec.method != name) continue;
      ps.push_back(static_cast<double>(rec.num_params));
      runtimes.push_back(rec.mean_runtime_seconds);
      gates.push_back(static_cast<double>(rec.gate_applies));
    }
    if (auto fit = fit_log_log(name, "runtime", ps, runtimes)) result.fits.push_back(*fit);
    if (auto fit = fit_log_log(name, "gate_applies", ps, gates)) result.fits.push_back(*fit);
  }
  return result;
}

std::string bench_csv_header() {
  return "family,num_qubits,num_params,method,repetitions,mean_runtime_seconds,"
         "stddev_runtime_seconds,gate_applies,derivative_applies,clones,inner_products";
}

void write_bench_csv(std::ostream& out, const BenchResult& result) {
  char buf[512];
  out << bench_csv_header() << '\n';
  for (const BenchRecord& r : result.records) {
    std::snprintf(buf, sizeof buf, "%c,%zu,%zu,%s,%zu,%.9e,%.9e,%llu,%llu,%llu,%llu\n", r.family,
                  r.num_qubits, r.num_params, r.method.c_str(), r.repetitions,
                  r.mean_runtime_seconds, r.stddev_runtime_seconds,
                  static_cast<unsigned long long>(r.gate_applies),
                  static_cast<unsigned long long>(r.derivative_applies),
                  static_cast<unsigned long long>(r.clones),
                  static_cast<unsigned long long>(r.inner_products));
    out << buf;
  }
  if (result.fits.empty()) return;
  out << "\nmethod,quantity,slope,intercept,r_squared\n";
  for (const ScalingFit& f : result.fits) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.6f,%.6f,%.6f\n", f.method.c_str(), f.quantity.c_str(),
                  f.slope, f.intercept, f.r_squared);
    out << buf;
  }
}

}  // namespace revgrad
