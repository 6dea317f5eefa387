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

#include "revgrad/statevec.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace revgrad {

namespace {

constexpr std::size_t kMaxQubits = 40;

// Spreads the bits of `k` so that every position listed in `sorted` (ascending)
// holds a zero.
inline std::size_t insert_zero_bits(std::size_t k, std::span<const std::size_t> sorted) {
  for (std::size_t p : sorted) {
    const std::size_t low = k & ((std::size_t{1} << p) - 1);
    k = ((k >> p) << (p + 1)) | low;
  }
  return k;
}

struct FixedBits {
  std::array<std::size_t, kMaxQubits> sorted{};
  std::size_t count = 0;
  std::size_t control_mask = 0;

  std::span<const std::size_t> positions() const { return {sorted.data(), count}; }
};

FixedBits fixed_bits(std::span<const Qubit> targets, std::span<const Qubit> controls) {
  FixedBits f;
  for (Qubit q : targets) f.sorted[f.count++] = q;
  for (Qubit q : controls) {
    f.sorted[f.count++] = q;
    f.control_mask |= std::size_t{1} << q;
  }
  std::sort(f.sorted.begin(), f.sorted.begin() + static_cast<std::ptrdiff_t>(f.count));
  return f;
}

std::size_t log2_size(std::size_t n) { return static_cast<std::size_t>(std::countr_zero(n)); }

void require_nonempty(const StateVector& s, const char* op) {
  if (s.empty()) throw std::domain_error(std::string(op) + ": empty state vector");
}

}  // namespace

OpCounters& OpCounters::operator+=(const OpCounters& other) {
  gate_applies += other.gate_applies;
  derivative_applies += other.derivative_applies;
  clones += other.clones;
  inner_products += other.inner_products;
  observable_applies += other.observable_applies;
  return *this;
}

void OpTracker::state_created() {
  ++live_;
  peak_ = std::max(peak_, live_);
}

void OpTracker::state_destroyed() { --live_; }

StateVector::StateVector(std::size_t num_qubits, OpTracker* tracker) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::domain_error("StateVector: qubit count must be in [1, 40], got " +
                            std::to_string(num_qubits));
  }
  amps_.assign(std::size_t{1} << num_qubits, cplx{});
  attach(tracker);
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amplitudes, OpTracker* tracker) {
  const std::size_t n = amplitudes.size();
  if (n < 2 || !std::has_single_bit(n)) {
    throw std::domain_error("StateVector: amplitude count must be a power of two >= 2, got " +
                            std::to_string(n));
  }
  StateVector s;
  s.num_qubits_ = log2_size(n);
  s.amps_ = std::move(amplitudes);
  s.attach(tracker);
  return s;
}

StateVector::~StateVector() { detach(); }

StateVector::StateVector(StateVector&& other) noexcept
    : num_qubits_(other.num_qubits_), amps_(std::move(other.amps_)), tracker_(other.tracker_) {
  other.num_qubits_ = 0;
  other.amps_.clear();
  other.tracker_ = nullptr;
}

StateVector& StateVector::operator=(StateVector&& other) noexcept {
  if (this != &other) {
    detach();
    num_qubits_ = other.num_qubits_;
    amps_ = std::move(other.amps_);
    tracker_ = other.tracker_;
    other.num_qubits_ = 0;
    other.amps_.clear();
    other.tracker_ = nullptr;
  }
  return *this;
}

void StateVector::attach(OpTracker* tracker) {
  detach();
  tracker_ = tracker;
  if (tracker_ != nullptr && !amps_.empty()) tracker_->state_created();
}

void StateVector::detach() {
  if (tracker_ != nullptr && !amps_.empty()) tracker_->state_destroyed();
  tracker_ = nullptr;
}

void StateVector::reset() {
  OpTracker* t = tracker_;
  detach();
  amps_.clear();
  amps_.shrink_to_fit();
  num_qubits_ = 0;
  tracker_ = t;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const cplx& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

StateVector init_basis_state(std::size_t num_qubits, std::size_t basis_index) {
  StateVector s(num_qubits);
  if (basis_index >= s.size()) {
    throw std::domain_error("init_basis_state: basis index " + std::to_string(basis_index) +
                            " out of range for " + std::to_string(num_qubits) + " qubits");
  }
  s[basis_index] = 1.0;
  return s;
}

StateVector clone_state(const StateVector& src) { return clone_state(src, src.tracker()); }

StateVector clone_state(const StateVector& src, OpTracker* tracker) {
  require_nonempty(src, "clone_state");
  std::vector<cplx> amps(src.amplitudes().begin(), src.amplitudes().end());
  StateVector s = StateVector::from_amplitudes(std::move(amps), tracker);
  if (tracker != nullptr) ++tracker->counters.clones;
  return s;
}

void apply_matrix(StateVector& state, const SmallMatrix& m, std::span<const Qubit> targets,
                  std::span<const Qubit> controls) {
  kernels::check_qubits(state, targets, controls);
  if (m.dim() != (std::size_t{1} << targets.size())) {
    throw std::domain_error("apply_matrix: matrix dimension " + std::to_string(m.dim()) +
                            " does not match " + std::to_string(targets.size()) + " target(s)");
  }
  kernels::apply_matrix(state.amplitudes(), m, targets, controls);
  if (state.tracker() != nullptr) ++state.tracker()->counters.gate_applies;
}

void project_to_one(StateVector& state, std::span<const Qubit> qubits) {
  kernels::check_qubits(state, {}, qubits);
  kernels::project_to_one(state.amplitudes(), qubits);
}

cplx inner_product(const StateVector& bra, const StateVector& ket) {
  require_nonempty(bra, "inner_product");
  require_nonempty(ket, "inner_product");
  if (bra.size() != ket.size()) {
    throw std::domain_error("inner_product: qubit count mismatch (" +
                            std::to_string(bra.num_qubits()) + " vs " +
                            std::to_string(ket.num_qubits()) + ")");
  }
  if (ket.tracker() != nullptr) ++ket.tracker()->counters.inner_products;
  return kernels::dot(bra.amplitudes(), ket.amplitudes());
}

namespace kernels {

void check_qubits(const StateVector& state, std::span<const Qubit> targets,
                  std::span<const Qubit> controls) {
  require_nonempty(state, "gate application");
  const std::size_t n = state.num_qubits();
  std::size_t seen = 0;
  auto visit = [&](Qubit q, const char* role) {
    if (q >= n) {
      throw std::domain_error(std::string(role) + " qubit " + std::to_string(q) +
                              " out of range for " + std::to_string(n) + " qubits");
    }
    const std::size_t bit = std::size_t{1} << q;
    if (seen & bit) {
      throw std::domain_error("qubit " + std::to_string(q) +
                              " appears more than once among targets/controls");
    }
    seen |= bit;
  };
  for (Qubit q : targets) visit(q, "target");
  for (Qubit q : controls) visit(q, "control");
}

void apply_matrix(std::span<cplx> amps, const SmallMatrix& m, std::span<const Qubit> targets,
                  std::span<const Qubit> controls) {
  const FixedBits fixed = fixed_bits(targets, controls);
  const std::size_t groups = amps.size() >> fixed.count;

  if (targets.size() == 1) {
    const std::size_t t = std::size_t{1} << targets[0];
    const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::size_t k = 0; k < groups; ++k) {
      const std::size_t i0 = insert_zero_bits(k, fixed.positions()) | fixed.control_mask;
      const std::size_t i1 = i0 | t;
      const cplx a0 = amps[i0], a1 = amps[i1];
      amps[i0] = m00 * a0 + m01 * a1;
      amps[i1] = m10 * a0 + m11 * a1;
    }
    return;
  }

  const std::size_t dim = m.dim();
  std::array<std::size_t, SmallMatrix::kMaxDim> offset{};
  for (std::size_t l = 0; l < dim; ++l) {
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if ((l >> j) & 1) offset[l] |= std::size_t{1} << targets[j];
    }
  }
  std::array<cplx, SmallMatrix::kMaxDim> v{};
  for (std::size_t k = 0; k < groups; ++k) {
    const std::size_t base = insert_zero_bits(k, fixed.positions()) | fixed.control_mask;
    for (std::size_t l = 0; l < dim; ++l) v[l] = amps[base + offset[l]];
    for (std::size_t r = 0; r < dim; ++r) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += m(r, c) * v[c];
      amps[base + offset[r]] = acc;
    }
  }
}

void project_to_one(std::span<cplx> amps, std::span<const Qubit> qubits) {
  std::size_t mask = 0;
  for (Qubit q : qubits) mask |= std::size_t{1} << q;
  if (mask == 0) return;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & mask) != mask) amps[i] = 0.0;
  }
}

void apply_pauli_rotation(std::span<cplx> amps, std::span<const Qubit> targets,
                          std::span<const char> axes, double angle,
                          std::span<const Qubit> controls) {
  // P|b> = i^nY (-1)^popcount(b & (Y|Z)) |b ^ (X|Y)>
  std::size_t flip = 0, sign = 0;
  int num_y = 0;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const std::size_t bit = std::size_t{1} << targets[j];
    switch (axes[j]) {
      case 'X': case 'x': flip |= bit; break;
      case 'Y': case 'y': flip |= bit; sign |= bit; ++num_y; break;
      case 'Z': case 'z': sign |= bit; break;
      case 'I': case 'i': break;
      default: throw std::domain_error(std::string("unknown Pauli axis '") + axes[j] + "'");
    }
  }
  static constexpr std::array<cplx, 4> kIPow = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  const cplx global = kIPow[static_cast<std::size_t>(num_y % 4)];
  auto phase = [&](std::size_t b) {
    return (std::popcount(b & sign) & 1) ? -global : global;
  };
  const double c = std::cos(angle);
  const cplx is(0.0, std::sin(angle));

  const FixedBits fixed = fixed_bits({}, controls);
  const std::size_t groups = amps.size() >> fixed.count;
  const std::size_t pivot = flip & (~flip + 1);
  for (std::size_t k = 0; k < groups; ++k) {
    const std::size_t i = insert_zero_bits(k, fixed.positions()) | fixed.control_mask;
    if (flip == 0) {
      amps[i] *= c + is * phase(i);
      continue;
    }
    if (i & pivot) continue;
    const std::size_t j = i ^ flip;
    const cplx ai = amps[i], aj = amps[j];
    amps[i] = c * ai + is * phase(j) * aj;
    amps[j] = c * aj + is * phase(i) * ai;
  }
}

cplx dot(std::span<const cplx> bra, std::span<const cplx> ket) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < bra.size(); ++i) acc += std::conj(bra[i]) * ket[i];
  return acc;
}

void axpy(cplx s, std::span<const cplx> src, std::span<cplx> dst) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += s * src[i];
}

void scale(cplx s, std::span<cplx> amps) {
  for (cplx& a : amps) a *= s;
}

StateVector copy(const StateVector& src) {
  require_nonempty(src, "copy");
  return StateVector::from_amplitudes(
      std::vector<cplx>(src.amplitudes().begin(), src.amplitudes().end()), src.tracker());
}

}  // namespace kernels

}  // namespace revgrad
