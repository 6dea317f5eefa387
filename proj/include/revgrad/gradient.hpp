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

#include "revgrad/circuit.hpp"
#include "revgrad/observable.hpp"
#include "revgrad/statevec.hpp"

namespace revgrad {

struct GradientReport {
  /// One entry per parameter-table slot. For Hermitian observables the real
  /// part is d<E>/d(theta_i) and the imaginary part is zero.
  std::vector<cplx> values;
  /// <psi|obs|psi> at the evaluation point.
  cplx energy;
  OpCounters counters;
  /// Most StateVectors holding storage at once, the caller's input included.
  std::size_t peak_live_states = 0;
};

struct GradientOptions {
  /// Negative-control hook: conjugates every deferred derivative scalar,
  /// which corrupts the gradient of every rotation and phase gate.
  bool perturb_deferred_scalar = false;
};

/// O(P) gradient by a single backward sweep over the circuit.
///
/// Keeps three working states besides `input`: lambda = obs U|in> rolled
/// back one gate at a time by adjoints, phi = U|in> rolled back by inverses,
/// and a per-parameter scratch mu. Repeated parameters accumulate into their
/// table slot; multi-parameter gates are differentiated once per local
/// parameter while the sweep sits on them.
///
/// Throws ContractError if `obs` is not Hermitian, NonInvertibleGate (with
/// its index) for a singular non-unitary gate.
GradientReport reverse_mode_gradient(const Circuit& circuit, std::span<const double> params,
                                     const Observable& obs, const StateVector& input,
                                     const GradientOptions& options = {});

/// O(P^2) gradient that re-simulates the circuit from `input` for every
/// parameter occurrence, the way a hardware evaluation would.
GradientReport reference_gradient(const Circuit& circuit, std::span<const double> params,
                                  const Observable& obs, const StateVector& input,
                                  const GradientOptions& options = {});

/// Complex gradient of <psi|A|psi> for arbitrary A: two backward sweeps,
/// one with A and one with A^dagger, combined as g(A) + conj(g(A^dagger)).
GradientReport non_hermitian_gradient(const Circuit& circuit, std::span<const double> params,
                                      const Observable& obs, const StateVector& input,
                                      const GradientOptions& options = {});

inline constexpr double kDefaultFiniteDifferenceStep = 1e-5;

/// Central differences (E(theta_i + delta) - E(theta_i - delta)) / (2 delta)
/// of the complex expectation.
GradientReport finite_difference_gradient(const Circuit& circuit, std::span<const double> params,
                                          const Observable& obs, const StateVector& input,
                                          double delta = kDefaultFiniteDifferenceStep);

/// A circuit whose every parameter reference has been given its own slot.
struct UniquifiedCircuit {
  Circuit circuit;
  /// merge_map[new_index] = original index.
  std::vector<std::size_t> merge_map;
  std::size_t original_num_params = 0;

  /// Parameter table for `circuit` from the original table.
  std::vector<double> expand(std::span<const double> original) const;
  /// Sums gradient entries of `circuit` back onto the original table.
  std::vector<cplx> merge(std::span<const cplx> values) const;
};

/// Renumbers parameter references 0, 1, 2, ... in gate order, recording
/// where each came from.
UniquifiedCircuit uniquify_parameters(const Circuit& circuit);

}  // namespace revgrad
