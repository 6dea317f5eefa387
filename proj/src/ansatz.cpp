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

#include "revgrad/ansatz.hpp"

#include <stdexcept>
#include <utility>

namespace revgrad {

namespace {

void check_spec(const AnsatzSpec& spec) {
  if (spec.reps < 1) throw std::domain_error("ansatz needs at least one repetition");
  if (spec.num_qubits < 1) throw std::domain_error("ansatz needs at least one qubit");
  if (spec.family != AnsatzFamily::A && spec.num_qubits < 2) {
    throw std::domain_error(std::string("ansatz family ") + family_letter(spec.family) +
                            " needs at least 2 qubits for its entangler");
  }
}

class Builder {
 public:
  explicit Builder(Circuit& c) : circuit_(c) {}

  void rotation_layer(const char* axis) {
    for (Qubit q = 0; q < circuit_.num_qubits(); ++q) {
      circuit_.add(Gate::rotation(axis, {q}, next_++));
    }
  }
  void controlled_rx(Qubit control, Qubit target) {
    circuit_.add(Gate::rotation("x", {target}, next_++, {control}));
  }
  void cx(Qubit control, Qubit target) { circuit_.add(Gate::cx(control, target)); }

 private:
  Circuit& circuit_;
  std::size_t next_ = 0;
};

}  // namespace

std::size_t ansatz_num_params(const AnsatzSpec& spec) {
  check_spec(spec);
  const std::size_t per_block = 2 * spec.num_qubits;
  return spec.family == AnsatzFamily::C ? per_block * (spec.reps + 1) : per_block * spec.reps;
}

std::size_t reps_for_params(AnsatzFamily family, std::size_t num_qubits,
                            std::size_t target_params) {
  const std::size_t per_block = 2 * num_qubits;
  std::size_t blocks = (target_params + per_block - 1) / per_block;
  if (family == AnsatzFamily::C) return blocks > 1 ? blocks - 1 : 1;
  return blocks > 0 ? blocks : 1;
}

Circuit build_ansatz(const AnsatzSpec& spec) {
  Circuit circuit(spec.num_qubits, ansatz_num_params(spec));
  Builder b(circuit);
  const std::size_t n = spec.num_qubits;

  switch (spec.family) {
    case AnsatzFamily::A:
      for (std::size_t r = 0; r < spec.reps; ++r) {
        b.rotation_layer("x");
        b.rotation_layer("z");
      }
      break;
    case AnsatzFamily::B:
      for (std::size_t r = 0; r < spec.reps; ++r) {
        b.rotation_layer("x");
        b.rotation_layer("z");
        for (std::size_t k = n - 1; k-- > 0;) b.cx(k + 1, k);
      }
      break;
    case AnsatzFamily::C:
      b.rotation_layer("y");
      b.rotation_layer("z");
      for (std::size_t r = 0; r < spec.reps; ++r) {
        for (std::size_t k = 0; k + 1 < n; ++k) b.cx(k, k + 1);
        b.rotation_layer("y");
        b.rotation_layer("z");
      }
      break;
    case AnsatzFamily::D:
      for (std::size_t layer = 0; layer < spec.reps; ++layer) {
        b.rotation_layer("y");
        for (std::size_t j = 0; j < n; ++j) {
          Qubit control = (j + layer) % n;
          Qubit target = (control + 1) % n;
          if (layer % 2 == 1) std::swap(control, target);
          b.controlled_rx(control, target);
        }
      }
      break;
  }
  return circuit;
}

AnsatzFamily parse_family(const std::string& name) {
  if (name == "A" || name == "a") return AnsatzFamily::A;
  if (name == "B" || name == "b") return AnsatzFamily::B;
  if (name == "C" || name == "c") return AnsatzFamily::C;
  if (name == "D" || name == "d") return AnsatzFamily::D;
  throw std::domain_error("unknown ansatz family '" + name + "' (expected A, B, C or D)");
}

char family_letter(AnsatzFamily family) {
  switch (family) {
    case AnsatzFamily::A: return 'A';
    case AnsatzFamily::B: return 'B';
    case AnsatzFamily::C: return 'C';
    case AnsatzFamily::D: return 'D';
  }
  return '?';
}

}  // namespace revgrad
