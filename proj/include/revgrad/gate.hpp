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
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "revgrad/small_matrix.hpp"
#include "revgrad/statevec.hpp"

namespace revgrad {

/// exp(alpha * i * theta * (x)_j sigma_{axes[j]}), sigma_{axes[j]} on targets[j].
/// The default alpha gives the usual Rx(theta) = exp(-i theta X / 2).
struct PauliRotation {
  std::string axes;
  double alpha = -0.5;
};

/// diag(1, e^{i theta}).
struct PhaseShift {};

struct FixedUnitary {
  SmallMatrix matrix;
  std::string name;
};

/// Matrix-valued function of `arity` angles. `derivative`, when set, returns
/// dM/d(params[which]); otherwise the derivative is taken by central
/// differences on the matrix entries.
struct ParametricMatrix {
  std::string name;
  std::size_t arity = 1;
  std::function<SmallMatrix(std::span<const double>)> matrix;
  std::function<SmallMatrix(std::span<const double>, std::size_t)> derivative;
};

/// Unitary-valued parametric gate.
struct CustomParametric {
  std::shared_ptr<const ParametricMatrix> fn;
};

/// Invertible but not necessarily unitary parametric gate. The reverse sweep
/// undoes it with the true inverse instead of the adjoint.
struct NonUnitary {
  std::shared_ptr<const ParametricMatrix> fn;
};

using GateKind = std::variant<PauliRotation, PhaseShift, FixedUnitary, CustomParametric, NonUnitary>;

/// Step for the entry-wise central-difference matrix derivative.
inline constexpr double kMatrixDerivativeStep = 1e-6;

class Gate {
 public:
  /// Validates arity, qubit disjointness and matrix dimension.
  Gate(GateKind kind, std::vector<Qubit> targets, std::vector<Qubit> controls,
       std::vector<std::size_t> param_refs);

  static Gate rx(Qubit q, std::size_t p) { return rotation("x", {q}, p); }
  static Gate ry(Qubit q, std::size_t p) { return rotation("y", {q}, p); }
  static Gate rz(Qubit q, std::size_t p) { return rotation("z", {q}, p); }
  static Gate rotation(std::string axes, std::vector<Qubit> targets, std::size_t p,
                       std::vector<Qubit> controls = {}, double alpha = -0.5);
  static Gate phase(Qubit q, std::size_t p, std::vector<Qubit> controls = {});
  static Gate fixed(SmallMatrix m, std::string name, std::vector<Qubit> targets,
                    std::vector<Qubit> controls = {});
  static Gate h(Qubit q);
  static Gate x(Qubit q);
  static Gate y(Qubit q);
  static Gate z(Qubit q);
  static Gate cx(Qubit control, Qubit target);
  static Gate custom(std::shared_ptr<const ParametricMatrix> fn, std::vector<Qubit> targets,
                     std::vector<std::size_t> param_refs, std::vector<Qubit> controls = {});
  static Gate non_unitary(std::shared_ptr<const ParametricMatrix> fn, std::vector<Qubit> targets,
                          std::vector<std::size_t> param_refs, std::vector<Qubit> controls = {});

  const GateKind& kind() const { return kind_; }
  const std::vector<Qubit>& targets() const { return targets_; }
  const std::vector<Qubit>& controls() const { return controls_; }
  const std::vector<std::size_t>& param_refs() const { return param_refs_; }

  /// Number of parameters the kind consumes.
  std::size_t arity() const { return param_refs_.size(); }
  bool is_unitary() const { return !std::holds_alternative<NonUnitary>(kind_); }
  std::string name() const;

  /// Target-space matrix at the bound parameters (controls not included).
  /// Only available for 1- and 2-target gates.
  SmallMatrix matrix(std::span<const double> params) const;

  /// Local (per-gate) angle values gathered from the global table.
  std::vector<double> local_params(std::span<const double> params) const;

 private:
  GateKind kind_;
  std::vector<Qubit> targets_;
  std::vector<Qubit> controls_;
  std::vector<std::size_t> param_refs_;
};

class NonInvertibleGate : public std::runtime_error {
 public:
  static constexpr std::size_t kUnknownIndex = std::numeric_limits<std::size_t>::max();

  explicit NonInvertibleGate(std::size_t gate_index = kUnknownIndex);

  std::size_t gate_index() const { return gate_index_; }

 private:
  std::size_t gate_index_;
};

/// state <- U(theta) state. Counts one gate application.
void apply_gate(StateVector& state, const Gate& gate, std::span<const double> params);

/// state <- U(theta)^dagger state. Counts one gate application.
void apply_gate_adjoint(StateVector& state, const Gate& gate, std::span<const double> params);

/// state <- M(theta)^{-1} state. Identical to the adjoint for unitary kinds.
/// Throws NonInvertibleGate when the bound matrix is singular.
void apply_gate_inverse(StateVector& state, const Gate& gate, std::span<const double> params);

/// state <- c^{-1} dU/d(theta_local) state, returning the deferred scalar c.
///
/// The caller multiplies whatever inner product it later forms with `state`
/// by the returned scalar. Pauli rotations return alpha*i, phase gates
/// i*e^{i theta}, matrix-function gates 1. Controls are handled by projecting
/// them onto |1...1> after the target-space action. Counts one derivative
/// application.
cplx apply_gate_derivative(StateVector& state, const Gate& gate, std::span<const double> params,
                           std::size_t which_param);

/// dM/d(local param `which`) of a matrix-function gate: the analytic
/// derivative when supplied, else the entry-wise central difference with
/// step kMatrixDerivativeStep.
SmallMatrix matrix_derivative(const ParametricMatrix& fn, std::span<const double> local,
                              std::size_t which);

}  // namespace revgrad
