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

#include "revgrad/gradient.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "revgrad/errors.hpp"

namespace revgrad {

namespace {

enum class Contribution {
  // 2 Re(c <lambda|mu>), valid when obs is Hermitian.
  kTwiceReal,
  // <c mu|lambda> = conj(c <lambda|mu>), one half of the non-Hermitian combination.
  kRaw,
};

void check_inputs(const Circuit& circuit, std::span<const double> params, const Observable& obs,
                  const StateVector& input) {
  circuit.check_params(params);
  if (input.empty() || input.num_qubits() != circuit.num_qubits()) {
    throw std::domain_error("input state has " + std::to_string(input.num_qubits()) +
                            " qubits, circuit has " + std::to_string(circuit.num_qubits()));
  }
  if (obs.num_qubits() != circuit.num_qubits()) {
    throw std::domain_error("observable acts on " + std::to_string(obs.num_qubits()) +
                            " qubits, circuit has " + std::to_string(circuit.num_qubits()));
  }
}

void require_hermitian(const Observable& obs) {
  if (!obs.is_hermitian()) {
    throw ContractError(
        "observable is not Hermitian; use non_hermitian_gradient for complex expectations");
  }
}

cplx contribution(cplx scalar, cplx overlap, Contribution kind, const GradientOptions& options) {
  if (options.perturb_deferred_scalar) scalar = std::conj(scalar);
  const cplx g = scalar * overlap;
  return kind == Contribution::kTwiceReal ? cplx(2.0 * g.real(), 0.0) : std::conj(g);
}

GradientReport backward_sweep(const Circuit& circuit, std::span<const double> params,
                              const Observable& obs, const StateVector& input,
                              const GradientOptions& options, Contribution kind) {
  OpTracker tracker;
  const OpTracker::ExternalHold hold_input(tracker);
  GradientReport report;
  report.values.assign(circuit.num_params(), cplx{});

  StateVector lambda = clone_state(input, &tracker);
  apply_circuit(lambda, circuit, params);
  StateVector phi = clone_state(lambda);
  lambda.reset();
  lambda = apply_observable(phi, obs);
  report.energy = kernels::dot(phi.amplitudes(), lambda.amplitudes());

  for (std::size_t i = circuit.size(); i-- > 0;) {
    const Gate& gate = circuit[i];
    try {
      apply_gate_inverse(phi, gate, params);
    } catch (const NonInvertibleGate&) {
      throw NonInvertibleGate(i);
    }
    for (std::size_t j = 0; j < gate.arity(); ++j) {
      StateVector mu = clone_state(phi);
      const cplx scalar = apply_gate_derivative(mu, gate, params, j);
      report.values[gate.param_refs()[j]] +=
          contribution(scalar, inner_product(lambda, mu), kind, options);
    }
    if (i > 0) apply_gate_adjoint(lambda, gate, params);
  }

  report.counters = tracker.counters;
  report.peak_live_states = tracker.peak_live_states();
  return report;
}

}  // namespace

GradientReport reverse_mode_gradient(const Circuit& circuit, std::span<const double> params,
                                     const Observable& obs, const StateVector& input,
                                     const GradientOptions& options) {
  check_inputs(circuit, params, obs, input);
  require_hermitian(obs);
  return backward_sweep(circuit, params, obs, input, options, Contribution::kTwiceReal);
}

GradientReport reference_gradient(const Circuit& circuit, std::span<const double> params,
                                  const Observable& obs, const StateVector& input,
                                  const GradientOptions& options) {
  check_inputs(circuit, params, obs, input);
  require_hermitian(obs);

  OpTracker tracker;
  const OpTracker::ExternalHold hold_input(tracker);
  GradientReport report;
  report.values.assign(circuit.num_params(), cplx{});

  StateVector psi = clone_state(input, &tracker);
  apply_circuit(psi, circuit, params);
  const StateVector lambda = apply_observable(psi, obs);
  report.energy = kernels::dot(psi.amplitudes(), lambda.amplitudes());
  psi.reset();

  const std::size_t num_gates = circuit.size();
  for (std::size_t i = 0; i < num_gates; ++i) {
    const Gate& gate = circuit[i];
    for (std::size_t j = 0; j < gate.arity(); ++j) {
      StateVector mu = clone_state(input, &tracker);
      apply_gates(mu, circuit, params, 0, i);
      const cplx scalar = apply_gate_derivative(mu, gate, params, j);
      apply_gates(mu, circuit, params, i + 1, num_gates);
      report.values[gate.param_refs()[j]] +=
          contribution(scalar, inner_product(lambda, mu), Contribution::kTwiceReal, options);
    }
  }

  report.counters = tracker.counters;
  report.peak_live_states = tracker.peak_live_states();
  return report;
}

GradientReport non_hermitian_gradient(const Circuit& circuit, std::span<const double> params,
                                      const Observable& obs, const StateVector& input,
                                      const GradientOptions& options) {
  check_inputs(circuit, params, obs, input);
  GradientReport forward = backward_sweep(circuit, params, obs, input, options, Contribution::kRaw);
  const GradientReport adjoint = backward_sweep(circuit, params, adjoint_observable(obs), input,
                                                options, Contribution::kRaw);
  for (std::size_t k = 0; k < forward.values.size(); ++k) {
    forward.values[k] += std::conj(adjoint.values[k]);
  }
  forward.counters += adjoint.counters;
  forward.peak_live_states = std::max(forward.peak_live_states, adjoint.peak_live_states);
  return forward;
}

GradientReport finite_difference_gradient(const Circuit& circuit, std::span<const double> params,
                                          const Observable& obs, const StateVector& input,
                                          double delta) {
  check_inputs(circuit, params, obs, input);
  if (!(delta > 0.0)) throw std::domain_error("finite-difference step must be positive");

  OpTracker tracker;
  const OpTracker::ExternalHold hold_input(tracker);
  auto energy_at = [&](std::span<const double> theta) {
    StateVector psi = clone_state(input, &tracker);
    apply_circuit(psi, circuit, theta);
    const StateVector applied = apply_observable(psi, obs);
    return kernels::dot(psi.amplitudes(), applied.amplitudes());
  };

  GradientReport report;
  report.energy = energy_at(params);
  report.values.assign(circuit.num_params(), cplx{});
  std::vector<double> shifted(params.begin(), params.end());
  for (std::size_t k = 0; k < shifted.size(); ++k) {
    shifted[k] = params[k] + delta;
    const cplx plus = energy_at(shifted);
    shifted[k] = params[k] - delta;
    const cplx minus = energy_at(shifted);
    shifted[k] = params[k];
    report.values[k] = (plus - minus) / (2.0 * delta);
  }
  report.counters = tracker.counters;
  report.peak_live_states = tracker.peak_live_states();
  return report;
}

std::vector<double> UniquifiedCircuit::expand(std::span<const double> original) const {
  if (original.size() != original_num_params) {
    throw std::domain_error("expected " + std::to_string(original_num_params) +
                            " original parameter(s), got " + std::to_string(original.size()));
  }
  std::vector<double> out;
  out.reserve(merge_map.size());
  for (std::size_t src : merge_map) out.push_back(original[src]);
  return out;
}

std::vector<cplx> UniquifiedCircuit::merge(std::span<const cplx> values) const {
  if (values.size() != merge_map.size()) {
    throw std::domain_error("expected " + std::to_string(merge_map.size()) +
                            " gradient entries, got " + std::to_string(values.size()));
  }
  std::vector<cplx> out(original_num_params, cplx{});
  for (std::size_t k = 0; k < values.size(); ++k) out[merge_map[k]] += values[k];
  return out;
}

UniquifiedCircuit uniquify_parameters(const Circuit& circuit) {
  UniquifiedCircuit result{Circuit(circuit.num_qubits(), circuit.num_param_refs()), {},
                           circuit.num_params()};
  for (const Gate& g : circuit.gates()) {
    std::vector<std::size_t> refs;
    for (std::size_t p : g.param_refs()) {
      refs.push_back(result.merge_map.size());
      result.merge_map.push_back(p);
    }
    result.circuit.add(Gate(g.kind(), g.targets(), g.controls(), std::move(refs)));
  }
  return result;
}

}  // namespace revgrad
