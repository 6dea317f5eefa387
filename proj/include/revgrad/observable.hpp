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
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "revgrad/errors.hpp"
#include "revgrad/statevec.hpp"

namespace revgrad {

/// One tensor-product term. `factors[q]` is the single-qubit operator on
/// qubit q, drawn from I X Y Z H (Hadamard), '+' = |1><0| and '-' = |0><1|.
struct ObservableTerm {
  cplx coefficient;
  std::string factors;

  bool operator==(const ObservableTerm&) const = default;
};

/// Sum of tensor-product terms; the operator whose expectation is
/// differentiated. It need not be Hermitian.
class Observable {
 public:
  Observable(std::size_t num_qubits, std::vector<ObservableTerm> terms);

  /// Single term H^(x)N with coefficient 1.
  static Observable hadamard_all(std::size_t num_qubits);
  /// Single term Z^(x)N with coefficient 1.
  static Observable z_all(std::size_t num_qubits);

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<ObservableTerm>& terms() const { return terms_; }

  /// Structural test first (no '+'/'-' letters and real coefficients). Any
  /// other operator is compared against its adjoint column by column, which
  /// is only attempted for N <= 10; larger ones are reported non-Hermitian.
  bool is_hermitian() const;

 private:
  std::size_t num_qubits_;
  std::vector<ObservableTerm> terms_;
  mutable std::optional<bool> hermitian_;
};

inline constexpr std::size_t kMaxHermitianCheckQubits = 10;

/// Returns obs * state as a new (unnormalised) state attached to the same
/// tracker as `state`. Counts one observable application; the per-term
/// scratch copies are not counted as clones.
StateVector apply_observable(const StateVector& state, const Observable& obs);

/// Term-wise conjugate: coefficients conjugated, '+' and '-' swapped.
Observable adjoint_observable(const Observable& obs);

/// <state|obs|state>.
cplx expectation(const StateVector& state, const Observable& obs);

/// Reads `qubits <N>` followed by `<re> <im> <factors>` term lines.
/// Blank lines and '#' comments are skipped.
Observable parse_observable(std::istream& in);
Observable parse_observable_string(const std::string& text);
/// Accepts the built-in names `hadamard_all` and `z_all` (sized by
/// `num_qubits`) or a path to an observable file.
Observable load_observable(const std::string& name_or_path, std::size_t num_qubits);

}  // namespace revgrad
