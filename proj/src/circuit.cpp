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

#include "revgrad/circuit.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace revgrad {

Circuit::Circuit(std::size_t num_qubits, std::size_t num_params)
    : num_qubits_(num_qubits), num_params_(num_params) {
  if (num_qubits < 1) throw std::domain_error("circuit needs at least one qubit");
}

Circuit& Circuit::add(Gate gate) {
  auto check_qubit = [&](Qubit q) {
    if (q >= num_qubits_) {
      throw std::domain_error("gate '" + gate.name() + "' uses qubit " + std::to_string(q) +
                              " in a " + std::to_string(num_qubits_) + "-qubit circuit");
    }
  };
  for (Qubit q : gate.targets()) check_qubit(q);
  for (Qubit q : gate.controls()) check_qubit(q);
  for (std::size_t p : gate.param_refs()) {
    if (p >= num_params_) {
      throw std::domain_error("gate '" + gate.name() + "' references parameter " +
                              std::to_string(p) + " but the table has " +
                              std::to_string(num_params_));
    }
  }
  gates_.push_back(std::move(gate));
  return *this;
}

std::size_t Circuit::num_param_refs() const {
  std::size_t n = 0;
  for (const Gate& g : gates_) n += g.arity();
  return n;
}

void Circuit::check_params(std::span<const double> params) const {
  if (params.size() != num_params_) {
    throw std::domain_error("circuit has " + std::to_string(num_params_) +
                            " parameter(s) but " + std::to_string(params.size()) +
                            " value(s) were given");
  }
}

void apply_gates(StateVector& state, const Circuit& circuit, std::span<const double> params,
                 std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) apply_gate(state, circuit[i], params);
}

void apply_circuit(StateVector& state, const Circuit& circuit, std::span<const double> params) {
  apply_gates(state, circuit, params, 0, circuit.size());
}

}  // namespace revgrad
