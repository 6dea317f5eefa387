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

#include "revgrad/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "revgrad/ansatz.hpp"
#include "revgrad/gradient.hpp"

namespace revgrad {

namespace {

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

SelftestCheck oracle_triangle(const GradientOptions& opts) {
  SelftestCheck check{"oracle-triangle", true, ""};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double worst_ref = 0.0, worst_fd = 0.0;
  for (AnsatzFamily family : {AnsatzFamily::A, AnsatzFamily::B, AnsatzFamily::C, AnsatzFamily::D}) {
    for (std::size_t n : {3u, 4u}) {
      const Circuit circuit = build_ansatz({family, n, 2});
      const Observable obs = Observable::hadamard_all(n);
      const StateVector input = init_basis_state(n, 0);
      for (int draw = 0; draw < 2; ++draw) {
        std::vector<double> theta(circuit.num_params());
        for (double& t : theta) t = angle(rng);
        const auto rev = reverse_mode_gradient(circuit, theta, obs, input, opts);
        const auto ref = reference_gradient(circuit, theta, obs, input);
        const auto fd = finite_difference_gradient(circuit, theta, obs, input);
        worst_ref = std::max(worst_ref, max_abs_diff(rev.values, ref.values));
        worst_fd = std::max(worst_fd, max_abs_diff(rev.values, fd.values));
      }
    }
  }
  check.passed = worst_ref <= 1e-11 && worst_fd <= 1e-6;
  std::ostringstream ss;
  ss << "max |reverse - reference| = " << worst_ref << " (tol 1e-11), max |reverse - fd| = "
     << worst_fd << " (tol 1e-6)";
  check.detail = ss.str();
  return check;
}

Circuit single_param_chain(std::size_t n, std::size_t num_gates) {
  Circuit c(n, num_gates);
  for (std::size_t k = 0; k < num_gates; ++k) {
    const Qubit q = k % n;
    switch (k % 3) {
      case 0: c.add(Gate::rx(q, k)); break;
      case 1: c.add(Gate::ry(q, k)); break;
      default: c.add(Gate::rotation("x", {q}, k, {(q + 1) % n})); break;
    }
  }
  return c;
}

SelftestCheck op_counts(const GradientOptions& opts) {
  SelftestCheck check{"op-counts", true, ""};
  std::ostringstream ss;
  for (std::size_t n : {3u, 4u}) {
    for (std::size_t p : {10u, 50u}) {
      const Circuit c = single_param_chain(n, p);
      const std::vector<double> theta(p, 0.3);
      const Observable obs = Observable::z_all(n);
      const StateVector input = init_basis_state(n, 0);
      const OpCounters rev = reverse_mode_gradient(c, theta, obs, input, opts).counters;
      const OpCounters ref = reference_gradient(c, theta, obs, input, opts).counters;
      const OpCounters want_rev{3 * p - 1, p, p + 2, p, 1};
      const OpCounters want_ref{p * p, p, p + 1, p, 1};
      if (!(rev == want_rev) || !(ref == want_ref)) {
        check.passed = false;
        ss << "N=" << n << " P=" << p << " counts differ; ";
      }
    }
  }
  check.detail = check.passed ? "reverse 3P-1/P/P+2/P/1, reference P^2/P/P+1/P/1" : ss.str();
  return check;
}

SelftestCheck memory(const GradientOptions& opts) {
  SelftestCheck check{"memory", true, ""};
  std::ostringstream ss;
  for (std::size_t p : {10u, 200u}) {
    const Circuit c = single_param_chain(4, p);
    const std::vector<double> theta(p, 1.1);
    const auto report = reverse_mode_gradient(c, theta, Observable::hadamard_all(4),
                                              init_basis_state(4, 0), opts);
    ss << "P=" << p << " peak=" << report.peak_live_states << "; ";
    if (report.peak_live_states != 4) check.passed = false;
  }
  check.detail = ss.str();
  return check;
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options) {
  GradientOptions opts;
  opts.perturb_deferred_scalar = options.perturb_derivative;
  return {oracle_triangle(opts), op_counts(opts), memory(opts)};
}

}  // namespace revgrad
