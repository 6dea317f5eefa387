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
#include <string>

#include "revgrad/circuit.hpp"

namespace revgrad {

/// Benchmark circuit families. Every generated circuit numbers its
/// parameters 0, 1, 2, ... in gate order with no repeats.
///
///  A  per layer: Rx on every qubit, then Rz on every qubit.
///     No entanglement. 2N params per layer.
///  B  per layer: as A, followed by a CNOT chain with control q[k+1] and
///     target q[k] for k = N-2 down to 0. 2N params per layer.
///  C  hardware-efficient SU(2) 2-local: Ry then Rz on every qubit, then per
///     repetition a CNOT chain q[k] -> q[k+1] (k = 0..N-2) followed by
///     another Ry, Rz block. 2N(r + 1) params.
///  D  per layer l: Ry on every qubit, then a ring of N controlled-Rx gates,
///     each with its own parameter. Gate j of the ring couples
///     c = (j + l) mod N and t = (c + 1) mod N; odd layers swap control and
///     target. 2N params per layer.
enum class AnsatzFamily { A, B, C, D };

struct AnsatzSpec {
  AnsatzFamily family = AnsatzFamily::A;
  std::size_t num_qubits = 2;
  std::size_t reps = 1;
};

/// Throws std::domain_error for reps < 1, N < 1, or N < 2 on B-D.
Circuit build_ansatz(const AnsatzSpec& spec);

/// Closed-form parameter count for `spec`.
std::size_t ansatz_num_params(const AnsatzSpec& spec);

/// Smallest reps whose parameter count is at least `target_params` (at least 1).
std::size_t reps_for_params(AnsatzFamily family, std::size_t num_qubits,
                            std::size_t target_params);

AnsatzFamily parse_family(const std::string& name);
char family_letter(AnsatzFamily family);

}  // namespace revgrad
