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
#include <cstdint>
#include <span>
#include <vector>

#include "revgrad/small_matrix.hpp"

namespace revgrad {

using Qubit = std::size_t;

/// Tallies of the primitive operations a gradient routine performs.
struct OpCounters {
  std::uint64_t gate_applies = 0;
  std::uint64_t derivative_applies = 0;
  std::uint64_t clones = 0;
  std::uint64_t inner_products = 0;
  std::uint64_t observable_applies = 0;

  bool operator==(const OpCounters&) const = default;
  OpCounters& operator+=(const OpCounters& other);
};

/// Per-call instrumentation shared by every StateVector attached to it.
///
/// Besides the op counters it tracks how many attached states hold storage
/// at once, which is how the constant-memory property of the reverse sweep
/// is audited. Not thread-safe; one tracker belongs to one logical call.
class OpTracker {
 public:
  OpCounters counters;

  std::size_t live_states() const { return live_; }
  std::size_t peak_live_states() const { return peak_; }

  void state_created();
  void state_destroyed();

  /// Keeps a state that is not owned by the tracker (e.g. a caller's input)
  /// counted as live for the guard's lifetime.
  class ExternalHold {
   public:
    explicit ExternalHold(OpTracker& tracker) : tracker_(&tracker) { tracker_->state_created(); }
    ~ExternalHold() { tracker_->state_destroyed(); }
    ExternalHold(const ExternalHold&) = delete;
    ExternalHold& operator=(const ExternalHold&) = delete;

   private:
    OpTracker* tracker_;
  };

 private:
  std::size_t live_ = 0;
  std::size_t peak_ = 0;
};

/// Dense state vector over N qubits, little-endian: qubit q is bit q of the
/// amplitude index.
///
/// Norm is not maintained. States produced by observables or gate
/// derivatives are unnormalised and remain valid inputs to every operation.
/// Copying is explicit through clone_state(); moves transfer storage along
/// with the tracker attachment. A default-constructed (or reset) state is
/// empty and rejected by every operation.
class StateVector {
 public:
  StateVector() = default;
  /// All-zero state over `num_qubits` qubits.
  explicit StateVector(std::size_t num_qubits, OpTracker* tracker = nullptr);
  /// Takes ownership of `amplitudes`, whose length must be a power of two >= 2.
  static StateVector from_amplitudes(std::vector<cplx> amplitudes, OpTracker* tracker = nullptr);

  ~StateVector();
  StateVector(StateVector&& other) noexcept;
  StateVector& operator=(StateVector&& other) noexcept;
  StateVector(const StateVector&) = delete;
  StateVector& operator=(const StateVector&) = delete;

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }
  bool empty() const { return amps_.empty(); }

  std::span<cplx> amplitudes() { return amps_; }
  std::span<const cplx> amplitudes() const { return amps_; }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  OpTracker* tracker() const { return tracker_; }
  /// Starts (or stops, with nullptr) counting this state's storage and the
  /// operations applied to it in `tracker`.
  void attach(OpTracker* tracker);

  /// Frees the storage; the state becomes empty.
  void reset();

  double norm() const;

 private:
  void detach();

  std::size_t num_qubits_ = 0;
  std::vector<cplx> amps_;
  OpTracker* tracker_ = nullptr;
};

/// |basis_index> over `num_qubits` qubits.
StateVector init_basis_state(std::size_t num_qubits, std::size_t basis_index);

/// Deep copy that stays attached to the source's tracker (if any) and counts
/// one clone there.
StateVector clone_state(const StateVector& src);
/// Deep copy attached to `tracker`, counting one clone in it.
StateVector clone_state(const StateVector& src, OpTracker* tracker);

/// Applies `m` to `targets`, conditioned on every qubit in `controls` being 1.
/// Counts one gate application. Targets and controls must be disjoint and
/// in range, and `m.dim()` must equal 2^|targets|.
void apply_matrix(StateVector& state, const SmallMatrix& m, std::span<const Qubit> targets,
                  std::span<const Qubit> controls = {});

/// Zeroes every amplitude whose index has a 0 bit at any of `qubits`.
void project_to_one(StateVector& state, std::span<const Qubit> qubits);

/// <bra|ket>. Counts one inner product on the ket's tracker.
cplx inner_product(const StateVector& bra, const StateVector& ket);

/// Uncounted building blocks. The public operations above validate their
/// arguments and record op counts; higher modules that compose several
/// primitives into one logical operation call these directly.
namespace kernels {

void check_qubits(const StateVector& state, std::span<const Qubit> targets,
                  std::span<const Qubit> controls);
void apply_matrix(std::span<cplx> amps, const SmallMatrix& m, std::span<const Qubit> targets,
                  std::span<const Qubit> controls);
void project_to_one(std::span<cplx> amps, std::span<const Qubit> qubits);
/// exp(i * angle * P) with P = (x) sigma_{axes[j]} on targets[j], controlled.
void apply_pauli_rotation(std::span<cplx> amps, std::span<const Qubit> targets,
                          std::span<const char> axes, double angle,
                          std::span<const Qubit> controls);
cplx dot(std::span<const cplx> bra, std::span<const cplx> ket);
/// dst += s * src
void axpy(cplx s, std::span<const cplx> src, std::span<cplx> dst);
void scale(cplx s, std::span<cplx> amps);
/// Uncounted deep copy, still attached to (and live-counted in) the source's
/// tracker.
StateVector copy(const StateVector& src);

}  // namespace kernels

}  // namespace revgrad
