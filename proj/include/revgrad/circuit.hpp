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
#include <span>
#include <vector>

#include "revgrad/gate.hpp"
#include "revgrad/statevec.hpp"

namespace revgrad {

/// Ordered gate list plus the size of its parameter table. Gates are applied
/// to the ket in list order. A parameter index may be referenced by any
/// number of gates, including none.
class Circuit {
 public:
  Circuit(std::size_t num_qubits, std::size_t num_params);

  /// Appends a gate after checking its qubits and parameter references.
  Circuit& add(Gate gate);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_params() const { return num_params_; }
  std::size_t size() const { return gates_.size(); }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }

  /// Total parameter references over all gates.
  std::size_t num_param_refs() const;

  /// Throws std::domain_error unless `params` has num_params() entries.
  void check_params(std::span<const double> params) const;

 private:
  std::size_t num_qubits_;
  std::size_t num_params_;
  std::vector<Gate> gates_;
};

/// state <- U_{end-1} ... U_{begin} state.
void apply_gates(StateVector& state, const Circuit& circuit, std::span<const double> params,
                 std::size_t begin, std::size_t end);

/// state <- U(theta) state over the whole circuit.
void apply_circuit(StateVector& state, const Circuit& circuit, std::span<const double> params);

}  // namespace revgrad
