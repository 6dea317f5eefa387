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

#include "revgrad/gate.hpp"

#include <cmath>
#include <utility>

namespace revgrad {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

SmallMatrix pauli_product(const std::string& axes) {
  if (axes.size() == 1) return matrices::pauli(axes[0]);
  return SmallMatrix::kron(matrices::pauli(axes[1]), matrices::pauli(axes[0]));
}

SmallMatrix bound_function(const ParametricMatrix& fn, std::span<const double> local,
                           std::size_t num_targets) {
  SmallMatrix m = fn.matrix(local);
  if (m.num_targets() != num_targets) {
    throw std::domain_error("gate '" + fn.name + "' returned a " + std::to_string(m.dim()) + "x" +
                            std::to_string(m.dim()) + " matrix for " +
                            std::to_string(num_targets) + " target(s)");
  }
  return m;
}

void count_gate(StateVector& state) {
  if (state.tracker() != nullptr) ++state.tracker()->counters.gate_applies;
}

// Applies the Pauli rotation exp(i * angle * P), through the dense matrix path
// for up to two targets and the dedicated Pauli kernel beyond that.
void apply_rotation(StateVector& state, const Gate& gate, const PauliRotation& rot, double angle) {
  if (gate.targets().size() <= 2) {
    const SmallMatrix p = pauli_product(rot.axes);
    const SmallMatrix m = SmallMatrix::identity(p.dim()) * std::cos(angle) +
                          p * cplx(0.0, std::sin(angle));
    kernels::apply_matrix(state.amplitudes(), m, gate.targets(), gate.controls());
  } else {
    kernels::apply_pauli_rotation(state.amplitudes(), gate.targets(), rot.axes, angle,
                                  gate.controls());
  }
}

}  // namespace

Gate::Gate(GateKind kind, std::vector<Qubit> targets, std::vector<Qubit> controls,
           std::vector<std::size_t> param_refs)
    : kind_(std::move(kind)),
      targets_(std::move(targets)),
      controls_(std::move(controls)),
      param_refs_(std::move(param_refs)) {
  if (targets_.empty()) throw std::domain_error("gate needs at least one target qubit");
  std::size_t seen = 0;
  for (Qubit q : targets_) {
    if (q >= 64 || (seen >> q) & 1) throw std::domain_error("gate has repeated or invalid qubit");
    seen |= std::size_t{1} << q;
  }
  for (Qubit q : controls_) {
    if (q >= 64 || (seen >> q) & 1) {
      throw std::domain_error("gate control qubit " + std::to_string(q) +
                              " overlaps its targets or another control");
    }
    seen |= std::size_t{1} << q;
  }

  const std::size_t expected_arity = std::visit(
      Overloaded{
          [&](const PauliRotation& r) -> std::size_t {
            if (r.axes.size() != targets_.size()) {
              throw std::domain_error("Pauli rotation axes '" + r.axes + "' do not match " +
                                      std::to_string(targets_.size()) + " target(s)");
            }
            for (char a : r.axes) (void)matrices::pauli(a);
            return 1;
          },
          [&](const PhaseShift&) -> std::size_t {
            if (targets_.size() != 1) throw std::domain_error("phase gate takes one target");
            return 1;
          },
          [&](const FixedUnitary& f) -> std::size_t {
            if (targets_.size() > 2 || f.matrix.num_targets() != targets_.size()) {
              throw std::domain_error("fixed gate '" + f.name + "' matrix does not match targets");
            }
            return 0;
          },
          [&](const CustomParametric& c) -> std::size_t {
            if (!c.fn || !c.fn->matrix) throw std::domain_error("custom gate without matrix function");
            if (targets_.size() > 2) throw std::domain_error("custom gates act on at most 2 targets");
            return c.fn->arity;
          },
          [&](const NonUnitary& c) -> std::size_t {
            if (!c.fn || !c.fn->matrix) throw std::domain_error("non-unitary gate without matrix function");
            if (targets_.size() > 2) throw std::domain_error("non-unitary gates act on at most 2 targets");
            return c.fn->arity;
          },
      },
      kind_);
  if (param_refs_.size() != expected_arity) {
    throw std::domain_error("gate '" + name() + "' takes " + std::to_string(expected_arity) +
                            " parameter(s), got " + std::to_string(param_refs_.size()));
  }
}

Gate Gate::rotation(std::string axes, std::vector<Qubit> targets, std::size_t p,
                    std::vector<Qubit> controls, double alpha) {
  return Gate(PauliRotation{std::move(axes), alpha}, std::move(targets), std::move(controls), {p});
}

Gate Gate::phase(Qubit q, std::size_t p, std::vector<Qubit> controls) {
  return Gate(PhaseShift{}, {q}, std::move(controls), {p});
}

Gate Gate::fixed(SmallMatrix m, std::string name, std::vector<Qubit> targets,
                 std::vector<Qubit> controls) {
  return Gate(FixedUnitary{m, std::move(name)}, std::move(targets), std::move(controls), {});
}

Gate Gate::h(Qubit q) { return fixed(matrices::hadamard(), "h", {q}); }
Gate Gate::x(Qubit q) { return fixed(matrices::pauli_x(), "x", {q}); }
Gate Gate::y(Qubit q) { return fixed(matrices::pauli_y(), "y", {q}); }
Gate Gate::z(Qubit q) { return fixed(matrices::pauli_z(), "z", {q}); }
Gate Gate::cx(Qubit control, Qubit target) {
  return fixed(matrices::pauli_x(), "x", {target}, {control});
}

Gate Gate::custom(std::shared_ptr<const ParametricMatrix> fn, std::vector<Qubit> targets,
                  std::vector<std::size_t> param_refs, std::vector<Qubit> controls) {
  return Gate(CustomParametric{std::move(fn)}, std::move(targets), std::move(controls),
              std::move(param_refs));
}

Gate Gate::non_unitary(std::shared_ptr<const ParametricMatrix> fn, std::vector<Qubit> targets,
                       std::vector<std::size_t> param_refs, std::vector<Qubit> controls) {
  return Gate(NonUnitary{std::move(fn)}, std::move(targets), std::move(controls),
              std::move(param_refs));
}

std::string Gate::name() const {
  return std::visit(Overloaded{
                        [](const PauliRotation& r) { return "r" + r.axes; },
                        [](const PhaseShift&) { return std::string("phase"); },
                        [](const FixedUnitary& f) { return f.name; },
                        [](const CustomParametric& c) { return c.fn ? c.fn->name : "custom"; },
                        [](const NonUnitary& c) { return c.fn ? c.fn->name : "non_unitary"; },
                    },
                    kind_);
}

std::vector<double> Gate::local_params(std::span<const double> params) const {
  std::vector<double> local;
  local.reserve(param_refs_.size());
  for (std::size_t p : param_refs_) {
    if (p >= params.size()) {
      throw std::domain_error("gate '" + name() + "' references parameter " + std::to_string(p) +
                              " but only " + std::to_string(params.size()) + " are bound");
    }
    local.push_back(params[p]);
  }
  return local;
}

SmallMatrix Gate::matrix(std::span<const double> params) const {
  const std::vector<double> local = local_params(params);
  return std::visit(
      Overloaded{
          [&](const PauliRotation& r) {
            if (targets_.size() > 2) {
              throw std::domain_error("dense matrix unavailable for rotations over >2 qubits");
            }
            const double angle = r.alpha * local[0];
            const SmallMatrix p = pauli_product(r.axes);
            return SmallMatrix::identity(p.dim()) * std::cos(angle) +
                   p * cplx(0.0, std::sin(angle));
          },
          [&](const PhaseShift&) {
            return SmallMatrix::from_2x2(1.0, 0.0, 0.0, std::polar(1.0, local[0]));
          },
          [&](const FixedUnitary& f) { return f.matrix; },
          [&](const CustomParametric& c) { return bound_function(*c.fn, local, targets_.size()); },
          [&](const NonUnitary& c) { return bound_function(*c.fn, local, targets_.size()); },
      },
      kind_);
}

NonInvertibleGate::NonInvertibleGate(std::size_t gate_index)
    : std::runtime_error(gate_index == kUnknownIndex
                             ? std::string("non-invertible gate")
                             : "non-invertible gate at index " + std::to_string(gate_index)),
      gate_index_(gate_index) {}

void apply_gate(StateVector& state, const Gate& gate, std::span<const double> params) {
  kernels::check_qubits(state, gate.targets(), gate.controls());
  if (const auto* rot = std::get_if<PauliRotation>(&gate.kind())) {
    const std::vector<double> local = gate.local_params(params);
    apply_rotation(state, gate, *rot, rot->alpha * local[0]);
  } else {
    kernels::apply_matrix(state.amplitudes(), gate.matrix(params), gate.targets(), gate.controls());
  }
  count_gate(state);
}

void apply_gate_adjoint(StateVector& state, const Gate& gate, std::span<const double> params) {
  kernels::check_qubits(state, gate.targets(), gate.controls());
  if (const auto* rot = std::get_if<PauliRotation>(&gate.kind())) {
    const std::vector<double> local = gate.local_params(params);
    apply_rotation(state, gate, *rot, -rot->alpha * local[0]);
  } else {
    kernels::apply_matrix(state.amplitudes(), gate.matrix(params).adjoint(), gate.targets(),
                          gate.controls());
  }
  count_gate(state);
}

void apply_gate_inverse(StateVector& state, const Gate& gate, std::span<const double> params) {
  if (gate.is_unitary()) {
    apply_gate_adjoint(state, gate, params);
    return;
  }
  kernels::check_qubits(state, gate.targets(), gate.controls());
  const std::optional<SmallMatrix> inv = gate.matrix(params).inverse();
  if (!inv) throw NonInvertibleGate();
  kernels::apply_matrix(state.amplitudes(), *inv, gate.targets(), gate.controls());
  count_gate(state);
}

SmallMatrix matrix_derivative(const ParametricMatrix& fn, std::span<const double> local,
                              std::size_t which) {
  if (fn.derivative) return fn.derivative(local, which);
  std::vector<double> shifted(local.begin(), local.end());
  shifted[which] = local[which] + kMatrixDerivativeStep;
  const SmallMatrix plus = fn.matrix(shifted);
  shifted[which] = local[which] - kMatrixDerivativeStep;
  const SmallMatrix minus = fn.matrix(shifted);
  return (plus - minus) * cplx(1.0 / (2.0 * kMatrixDerivativeStep));
}

cplx apply_gate_derivative(StateVector& state, const Gate& gate, std::span<const double> params,
                           std::size_t which_param) {
  kernels::check_qubits(state, gate.targets(), gate.controls());
  if (gate.arity() == 0) {
    throw std::domain_error("gate '" + gate.name() + "' has no parameter to differentiate");
  }
  if (which_param >= gate.arity()) {
    throw std::domain_error("gate '" + gate.name() + "' has " + std::to_string(gate.arity()) +
                            " parameter(s); derivative index " + std::to_string(which_param) +
                            " out of range");
  }
  const std::vector<double> local = gate.local_params(params);
  const std::span<cplx> amps = state.amplitudes();

  const cplx scalar = std::visit(
      Overloaded{
          [&](const PauliRotation& r) -> cplx {
            // dR/dtheta = alpha i P R; the Pauli factors commute with R.
            for (std::size_t j = 0; j < gate.targets().size(); ++j) {
              const Qubit t[] = {gate.targets()[j]};
              kernels::apply_matrix(amps, matrices::pauli(r.axes[j]), t, {});
            }
            kernels::apply_pauli_rotation(amps, gate.targets(), r.axes, r.alpha * local[0], {});
            return {0.0, r.alpha};
          },
          [&](const PhaseShift&) -> cplx {
            kernels::project_to_one(amps, gate.targets());
            return cplx(0.0, 1.0) * std::polar(1.0, local[0]);
          },
          [&](const FixedUnitary&) -> cplx { return 0.0; },
          [&](const CustomParametric& c) -> cplx {
            kernels::apply_matrix(amps, matrix_derivative(*c.fn, local, which_param),
                                  gate.targets(), {});
            return 1.0;
          },
          [&](const NonUnitary& c) -> cplx {
            kernels::apply_matrix(amps, matrix_derivative(*c.fn, local, which_param),
                                  gate.targets(), {});
            return 1.0;
          },
      },
      gate.kind());
  kernels::project_to_one(amps, gate.controls());
  if (state.tracker() != nullptr) ++state.tracker()->counters.derivative_applies;
  return scalar;
}

}  // namespace revgrad
