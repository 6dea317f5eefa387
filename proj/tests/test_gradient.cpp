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

#include "revgrad/gradient.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "revgrad/ansatz.hpp"
#include "revgrad/errors.hpp"

namespace revgrad {
namespace {

const double kPi = std::numbers::pi;

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return oracle::max_abs_diff(a, b);
}

std::vector<double> random_theta(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.0, 2 * kPi);
  std::vector<double> out(n);
  for (double& t : out) t = d(rng);
  return out;
}

Circuit single_ry() {
  Circuit c(1, 1);
  c.add(Gate::ry(0, 0));
  return c;
}

Circuit single_param_chain(std::size_t num_qubits, std::size_t p) {
  Circuit c(num_qubits, p);
  for (std::size_t k = 0; k < p; ++k) {
    const Qubit q = static_cast<Qubit>(k % num_qubits);
    c.add(k % 2 == 0 ? Gate::ry(q, k) : Gate::rz(q, k));
  }
  return c;
}

std::shared_ptr<const ParametricMatrix> diag12_ry() {
  auto fn = std::make_shared<ParametricMatrix>();
  fn->name = "diag12_ry";
  fn->matrix = [](std::span<const double> t) {
    const double c = std::cos(t[0] / 2), s = std::sin(t[0] / 2);
    return SmallMatrix::from_2x2(c, -s, 2.0 * s, 2.0 * c);
  };
  return fn;
}

TEST(ReverseMode, SingleRyIsMinusSine) {
  const Circuit c = single_ry();
  for (double theta : {0.0, 0.4, kPi / 2, 2.5, 5.9}) {
    const std::vector<double> p = {theta};
    const GradientReport r =
        reverse_mode_gradient(c, p, Observable::z_all(1), init_basis_state(1, 0));
    ASSERT_EQ(r.values.size(), 1u);
    EXPECT_NEAR(r.values[0].real(), -std::sin(theta), 1e-14);
    EXPECT_NEAR(r.energy.real(), std::cos(theta), 1e-14);
  }
  const std::vector<double> half_pi = {kPi / 2};
  const GradientReport fd =
      finite_difference_gradient(c, half_pi, Observable::z_all(1), init_basis_state(1, 0), 1e-5);
  EXPECT_NEAR(fd.values[0].real(), -1.0, 1e-9);
}

TEST(ReverseMode, NoParametricGatesGivesZeroGradient) {
  Circuit c(2, 2);
  c.add(Gate::h(0)).add(Gate::cx(0, 1));
  const std::vector<double> p = {0.3, 0.4};
  const GradientReport r =
      reverse_mode_gradient(c, p, Observable::z_all(2), init_basis_state(2, 0));
  EXPECT_EQ(r.values, (std::vector<cplx>{0.0, 0.0}));
  EXPECT_NEAR(r.energy.real(), 1.0, 1e-15);

  const Circuit empty(1, 0);
  const GradientReport e =
      reverse_mode_gradient(empty, {}, Observable::z_all(1), init_basis_state(1, 1));
  EXPECT_TRUE(e.values.empty());
  EXPECT_EQ(e.energy, cplx(-1.0));

  const GradientReport fd =
      finite_difference_gradient(c, p, Observable::z_all(2), init_basis_state(2, 0));
  EXPECT_EQ(fd.values, (std::vector<cplx>{0.0, 0.0}));
}

TEST(ReverseMode, UnreferencedParameterIsZero) {
  Circuit c(1, 3);
  c.add(Gate::ry(0, 2));
  const std::vector<double> p = {1.0, 2.0, 0.7};
  const GradientReport r =
      reverse_mode_gradient(c, p, Observable::z_all(1), init_basis_state(1, 0));
  EXPECT_EQ(r.values[0], cplx(0.0));
  EXPECT_EQ(r.values[1], cplx(0.0));
  EXPECT_NEAR(r.values[2].real(), -std::sin(0.7), 1e-14);
}

TEST(ReverseMode, RepeatedParameterAccumulates) {
  // Rz(t) Rz(t) |+> measured in X gives cos(2t).
  Circuit c(1, 1);
  c.add(Gate::rz(0, 0)).add(Gate::rz(0, 0));
  const Observable x(1, {{1.0, "X"}});
  StateVector plus = init_basis_state(1, 0);
  apply_gate(plus, Gate::h(0), {});
  for (double theta : {0.2, 1.3, 4.0}) {
    const std::vector<double> p = {theta};
    const GradientReport r = reverse_mode_gradient(c, p, x, plus);
    const GradientReport fd = finite_difference_gradient(c, p, x, plus, 1e-5);
    EXPECT_NEAR(r.energy.real(), std::cos(2 * theta), 1e-14);
    EXPECT_NEAR(r.values[0].real(), -2 * std::sin(2 * theta), 1e-13);
    EXPECT_LE(std::abs(r.values[0] - fd.values[0]), 1e-7);
  }
}

TEST(ReverseMode, MatchesReferenceOnFamilyC) {
  std::mt19937_64 rng(103);
  const Circuit c = build_ansatz({AnsatzFamily::C, 4, 3});
  const Observable obs = Observable::hadamard_all(4);
  for (int draw = 0; draw < 3; ++draw) {
    const auto p = random_theta(c.num_params(), rng);
    const auto rev = reverse_mode_gradient(c, p, obs, init_basis_state(4, 0));
    const auto ref = reference_gradient(c, p, obs, init_basis_state(4, 0));
    EXPECT_LE(max_diff(rev.values, ref.values), 1e-11);
    for (const cplx& v : rev.values) EXPECT_LE(std::abs(v.imag()), 1e-10);
  }
}

TEST(ReverseMode, RejectsNonHermitianObservable) {
  const std::vector<double> p = {0.3};
  const Observable lower(1, {{1.0, "-"}});
  EXPECT_THROW(reverse_mode_gradient(single_ry(), p, lower, init_basis_state(1, 0)),
               ContractError);
  EXPECT_THROW(reference_gradient(single_ry(), p, lower, init_basis_state(1, 0)), ContractError);
}

TEST(ReverseMode, RejectsMismatchedInputs) {
  const std::vector<double> p = {0.3}, too_many = {0.3, 0.4};
  EXPECT_THROW(reverse_mode_gradient(single_ry(), too_many, Observable::z_all(1),
                                     init_basis_state(1, 0)),
               std::domain_error);
  EXPECT_THROW(
      reverse_mode_gradient(single_ry(), p, Observable::z_all(2), init_basis_state(1, 0)),
      std::domain_error);
  EXPECT_THROW(
      reverse_mode_gradient(single_ry(), p, Observable::z_all(1), init_basis_state(2, 0)),
      std::domain_error);
}

TEST(ReverseMode, ExactOperationCounts) {
  for (std::size_t p_count : {1u, 2u, 7u, 40u}) {
    const Circuit c = single_param_chain(3, p_count);
    std::mt19937_64 rng(p_count);
    const auto p = random_theta(p_count, rng);
    const auto rev = reverse_mode_gradient(c, p, Observable::hadamard_all(3), init_basis_state(3, 0));
    EXPECT_EQ(rev.counters.gate_applies, 3 * p_count - 1);
    EXPECT_EQ(rev.counters.derivative_applies, p_count);
    EXPECT_EQ(rev.counters.clones, p_count + 2);
    EXPECT_EQ(rev.counters.inner_products, p_count);
    EXPECT_EQ(rev.counters.observable_applies, 1u);

    const auto ref = reference_gradient(c, p, Observable::hadamard_all(3), init_basis_state(3, 0));
    EXPECT_EQ(ref.counters.gate_applies, p_count * p_count);
    EXPECT_EQ(ref.counters.derivative_applies, p_count);
    EXPECT_EQ(ref.counters.clones, p_count + 1);
    EXPECT_EQ(ref.counters.inner_products, p_count);
    EXPECT_EQ(ref.counters.observable_applies, 1u);
  }
}

TEST(ReverseMode, MultiTermObservableStillUsesFourStates) {
  std::mt19937_64 rng(107);
  const Circuit c = single_param_chain(3, 25);
  const Observable obs(3, {{0.5, "ZZI"}, {-1.0, "XIY"}, {2.0, "HHH"}});
  const auto p = random_theta(25, rng);
  const auto rev = reverse_mode_gradient(c, p, obs, init_basis_state(3, 0));
  EXPECT_EQ(rev.peak_live_states, 4u);
  EXPECT_EQ(rev.counters.clones, 27u);
}

TEST(ReferenceGradient, GateAppliesGrowQuadratically) {
  std::mt19937_64 rng(109);
  const Circuit small = build_ansatz({AnsatzFamily::A, 4, 4});
  const Circuit large = build_ansatz({AnsatzFamily::A, 4, 8});
  ASSERT_EQ(large.num_params(), 2 * small.num_params());
  const auto ps = random_theta(small.num_params(), rng);
  const auto pl = random_theta(large.num_params(), rng);
  const auto rs = reference_gradient(small, ps, Observable::z_all(4), init_basis_state(4, 0));
  const auto rl = reference_gradient(large, pl, Observable::z_all(4), init_basis_state(4, 0));
  const double ratio = static_cast<double>(rl.counters.gate_applies) /
                       static_cast<double>(rs.counters.gate_applies);
  EXPECT_GE(ratio, 3.6);
  EXPECT_LE(ratio, 4.4);
  EXPECT_EQ(rs.peak_live_states, 3u);
}

TEST(ReferenceGradient, SingleRy) {
  const std::vector<double> p = {kPi / 2};
  const auto r = reference_gradient(single_ry(), p, Observable::z_all(1), init_basis_state(1, 0));
  EXPECT_NEAR(r.values[0].real(), -1.0, 1e-15);
}

TEST(Gradient, PeakLiveStatesIsFour) {
  for (std::size_t p_count : {10u, 300u}) {
    const Circuit c = single_param_chain(4, p_count);
    std::mt19937_64 rng(p_count);
    const auto p = random_theta(p_count, rng);
    const auto rev = reverse_mode_gradient(c, p, Observable::z_all(4), init_basis_state(4, 0));
    EXPECT_EQ(rev.peak_live_states, 4u);
  }
}

TEST(Gradient, EnergyMatchesForwardExpectation) {
  std::mt19937_64 rng(113);
  for (AnsatzFamily f : {AnsatzFamily::B, AnsatzFamily::D}) {
    const Circuit c = build_ansatz({f, 4, 2});
    const auto p = random_theta(c.num_params(), rng);
    const StateVector in = oracle::random_unit_state(4, rng);
    const Observable obs = Observable::hadamard_all(4);
    StateVector psi = clone_state(in);
    apply_circuit(psi, c, p);
    const cplx e = expectation(psi, obs);
    EXPECT_LE(std::abs(reverse_mode_gradient(c, p, obs, in).energy - e), 1e-12);
    EXPECT_LE(std::abs(reference_gradient(c, p, obs, in).energy - e), 1e-12);
  }
}

TEST(NonHermitian, ReducesToReverseModeForHermitianObservable) {
  std::mt19937_64 rng(127);
  const Circuit c = build_ansatz({AnsatzFamily::D, 3, 2});
  const auto p = random_theta(c.num_params(), rng);
  const auto rev = reverse_mode_gradient(c, p, Observable::z_all(3), init_basis_state(3, 0));
  const auto nh = non_hermitian_gradient(c, p, Observable::z_all(3), init_basis_state(3, 0));
  EXPECT_LE(max_diff(rev.values, nh.values), 1e-11);
  EXPECT_LE(std::abs(rev.energy - nh.energy), 1e-12);
}

TEST(NonHermitian, LoweringOperatorOnRy) {
  // <psi|sigma-|psi> = sin(t)/2 for Ry(t)|0>.
  const Observable lower(1, {{1.0, "-"}});
  for (double theta : {0.3, 1.9, 4.4}) {
    const std::vector<double> p = {theta};
    const auto nh = non_hermitian_gradient(single_ry(), p, lower, init_basis_state(1, 0));
    const auto fd = finite_difference_gradient(single_ry(), p, lower, init_basis_state(1, 0));
    EXPECT_LE(std::abs(nh.values[0] - fd.values[0]), 1e-7);
    EXPECT_NEAR(nh.values[0].real(), std::cos(theta) / 2, 1e-14);
    EXPECT_NEAR(nh.energy.real(), std::sin(theta) / 2, 1e-14);
  }
}

TEST(NonHermitian, ComplexGradientMatchesDenseOracle) {
  std::mt19937_64 rng(131);
  const Circuit c = build_ansatz({AnsatzFamily::B, 3, 2});
  const Observable obs(3, {{cplx(0.5, 1.0), "+ZI"}, {cplx(-0.2, 0.0), "X-H"}, {2.0, "IIZ"}});
  const auto p = random_theta(c.num_params(), rng);
  const StateVector in = oracle::random_unit_state(3, rng);
  const auto nh = non_hermitian_gradient(c, p, obs, in);
  const auto dense = oracle::dense_fd_gradient(c, p, obs, oracle::to_vector(in), 1e-5);
  EXPECT_LE(max_diff(nh.values, dense), 1e-7);
}

TEST(NonHermitian, ScalesLinearlyWithOperator) {
  std::mt19937_64 rng(137);
  const Circuit c = build_ansatz({AnsatzFamily::C, 3, 1});
  const auto p = random_theta(c.num_params(), rng);
  const Observable iz(3, {{cplx(0, 1), "ZZZ"}});
  const auto nh = non_hermitian_gradient(c, p, iz, init_basis_state(3, 0));
  const auto rev = reverse_mode_gradient(c, p, Observable::z_all(3), init_basis_state(3, 0));
  for (std::size_t k = 0; k < p.size(); ++k) {
    EXPECT_LE(std::abs(nh.values[k] - cplx(0, 1) * rev.values[k]), 1e-11);
  }
}

TEST(Uniquify, RenumbersOccurrencesInGateOrder) {
  Circuit c(2, 2);
  c.add(Gate::rx(0, 0)).add(Gate::h(1)).add(Gate::ry(1, 0)).add(Gate::rz(0, 1));
  const UniquifiedCircuit u = uniquify_parameters(c);
  EXPECT_EQ(u.circuit.num_params(), 3u);
  EXPECT_EQ(u.merge_map, (std::vector<std::size_t>{0, 0, 1}));
  EXPECT_EQ(u.original_num_params, 2u);
  EXPECT_EQ(u.circuit[0].param_refs(), (std::vector<std::size_t>{0}));
  EXPECT_EQ(u.circuit[1].param_refs(), (std::vector<std::size_t>{}));
  EXPECT_EQ(u.circuit[2].param_refs(), (std::vector<std::size_t>{1}));
  EXPECT_EQ(u.circuit[3].param_refs(), (std::vector<std::size_t>{2}));
  const std::vector<double> orig = {0.5, -0.25};
  EXPECT_EQ(u.expand(orig), (std::vector<double>{0.5, 0.5, -0.25}));
}

TEST(Uniquify, UniqueParametersAreUnchanged) {
  const Circuit c = build_ansatz({AnsatzFamily::A, 3, 2});
  const UniquifiedCircuit u = uniquify_parameters(c);
  ASSERT_EQ(u.circuit.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(u.circuit[i].param_refs(), c[i].param_refs());
  }
  for (std::size_t k = 0; k < u.merge_map.size(); ++k) EXPECT_EQ(u.merge_map[k], k);
}

TEST(Uniquify, LiteralPipelineMatchesAccumulation) {
  std::mt19937_64 rng(139);
  Circuit c(3, 3);
  c.add(Gate::ry(0, 0)).add(Gate::ry(1, 0)).add(Gate::cx(0, 2)).add(Gate::rotation("zx", {2, 1}, 1));
  c.add(Gate::rz(0, 2)).add(Gate::phase(2, 0)).add(Gate::rx(1, 2)).add(Gate::rotation("y", {0}, 1, {2}));
  const Observable obs = Observable::hadamard_all(3);
  for (int draw = 0; draw < 5; ++draw) {
    const auto p = random_theta(3, rng);
    const UniquifiedCircuit u = uniquify_parameters(c);
    const auto expanded = u.expand(p);
    const auto unique_grad = reverse_mode_gradient(u.circuit, expanded, obs, init_basis_state(3, 0));
    const auto merged = u.merge(unique_grad.values);
    const auto direct = reverse_mode_gradient(c, p, obs, init_basis_state(3, 0));
    EXPECT_LE(max_diff(merged, direct.values), 1e-12);
  }
}

TEST(MultiParameterGate, ContributionsLandOnEachParameter) {
  auto fn = std::make_shared<ParametricMatrix>();
  fn->name = "rzry";
  fn->arity = 2;
  fn->matrix = [](std::span<const double> t) {
    const cplx e0 = std::polar(1.0, -t[0] / 2), e1 = std::polar(1.0, t[0] / 2);
    const double c = std::cos(t[1] / 2), s = std::sin(t[1] / 2);
    return SmallMatrix::from_2x2(c, -s, s, c) * SmallMatrix::from_2x2(e0, 0, 0, e1);
  };
  std::mt19937_64 rng(149);
  Circuit c(2, 3);
  c.add(Gate::h(0)).add(Gate::custom(fn, {0}, {2, 0})).add(Gate::cx(0, 1));
  c.add(Gate::custom(fn, {1}, {1, 2}, {0})).add(Gate::ry(0, 1));
  const Observable obs(2, {{1.0, "XZ"}, {0.5, "YI"}});
  for (int draw = 0; draw < 5; ++draw) {
    const auto p = random_theta(3, rng);
    const auto rev = reverse_mode_gradient(c, p, obs, init_basis_state(2, 0));
    const auto ref = reference_gradient(c, p, obs, init_basis_state(2, 0));
    const auto fd = finite_difference_gradient(c, p, obs, init_basis_state(2, 0));
    EXPECT_LE(max_diff(rev.values, ref.values), 1e-11);
    EXPECT_LE(max_diff(rev.values, fd.values), 1e-6);
    EXPECT_EQ(rev.counters.derivative_applies, 5u);
  }
}

TEST(NonUnitaryGate, ReverseModeMatchesFiniteDifference) {
  std::mt19937_64 rng(151);
  Circuit c(2, 3);
  c.add(Gate::ry(0, 0)).add(Gate::cx(0, 1)).add(Gate::non_unitary(diag12_ry(), {1}, {1}));
  c.add(Gate::rx(0, 2)).add(Gate::non_unitary(diag12_ry(), {0}, {2}, {1}));
  const Observable obs = Observable::hadamard_all(2);
  for (int draw = 0; draw < 5; ++draw) {
    const auto p = random_theta(3, rng);
    const auto rev = reverse_mode_gradient(c, p, obs, init_basis_state(2, 0));
    const auto fd = finite_difference_gradient(c, p, obs, init_basis_state(2, 0));
    const auto dense = oracle::dense_fd_gradient(c, p, obs,
                                                 oracle::to_vector(init_basis_state(2, 0)), 1e-5);
    EXPECT_LE(max_diff(rev.values, fd.values), 1e-6);
    EXPECT_LE(max_diff(rev.values, dense), 1e-6);
    const auto ref = reference_gradient(c, p, obs, init_basis_state(2, 0));
    EXPECT_LE(max_diff(rev.values, ref.values), 1e-10);
  }
}

TEST(NonUnitaryGate, SingularGateReportsIndex) {
  auto fn = std::make_shared<ParametricMatrix>();
  fn->name = "proj";
  fn->matrix = [](std::span<const double> t) {
    return SmallMatrix::from_2x2(1.0, 0.0, 0.0, std::sin(t[0]));
  };
  Circuit c(1, 2);
  c.add(Gate::ry(0, 0)).add(Gate::h(0)).add(Gate::non_unitary(fn, {0}, {1})).add(Gate::rx(0, 0));
  const std::vector<double> p = {0.4, 0.0};
  try {
    reverse_mode_gradient(c, p, Observable::z_all(1), init_basis_state(1, 0));
    FAIL() << "expected NonInvertibleGate";
  } catch (const NonInvertibleGate& e) {
    EXPECT_EQ(e.gate_index(), 2u);
  }
}

TEST(OracleTriangle, AllFamiliesSmallRegisters) {
  std::mt19937_64 rng(157);
  for (AnsatzFamily f : {AnsatzFamily::A, AnsatzFamily::B, AnsatzFamily::C, AnsatzFamily::D}) {
    for (std::size_t n : {3u, 4u, 5u}) {
      const Circuit c = build_ansatz({f, n, 2});
      const Observable obs = Observable::hadamard_all(n);
      for (int draw = 0; draw < 5; ++draw) {
        const auto p = random_theta(c.num_params(), rng);
        const auto rev = reverse_mode_gradient(c, p, obs, init_basis_state(n, 0));
        const auto ref = reference_gradient(c, p, obs, init_basis_state(n, 0));
        const auto fd = finite_difference_gradient(c, p, obs, init_basis_state(n, 0), 1e-5);
        EXPECT_LE(max_diff(rev.values, ref.values), 1e-11) << family_letter(f) << n;
        EXPECT_LE(max_diff(rev.values, fd.values), 1e-6) << family_letter(f) << n;
      }
    }
  }
}

TEST(OracleTriangle, DenseMatrixCrossCheck) {
  std::mt19937_64 rng(163);
  for (AnsatzFamily f : {AnsatzFamily::A, AnsatzFamily::B, AnsatzFamily::C, AnsatzFamily::D}) {
    const Circuit c = build_ansatz({f, 3, 2});
    const Observable obs(3, {{1.0, "ZIX"}, {-0.7, "HYI"}});
    const auto p = random_theta(c.num_params(), rng);
    const StateVector in = oracle::random_unit_state(3, rng);
    const auto rev = reverse_mode_gradient(c, p, obs, in);
    const auto dense = oracle::dense_fd_gradient(c, p, obs, oracle::to_vector(in), 1e-5);
    EXPECT_LE(max_diff(rev.values, dense), 1e-6) << family_letter(f);
    EXPECT_LE(std::abs(rev.energy - oracle::dense_expectation(c, p, obs, oracle::to_vector(in))),
              1e-12);
  }
}

TEST(OracleTriangle, MultiQubitPauliRotations) {
  std::mt19937_64 rng(167);
  Circuit c(4, 4);
  c.add(Gate::rotation("xyz", {0, 1, 2}, 0)).add(Gate::rotation("yyxz", {3, 0, 2, 1}, 1));
  c.add(Gate::rotation("zx", {1, 3}, 2, {0, 2})).add(Gate::rotation("xzy", {2, 3, 0}, 3, {1}, 0.7));
  const Observable obs = Observable::hadamard_all(4);
  for (int draw = 0; draw < 5; ++draw) {
    const auto p = random_theta(4, rng);
    const StateVector in = oracle::random_unit_state(4, rng);
    const auto rev = reverse_mode_gradient(c, p, obs, in);
    const auto ref = reference_gradient(c, p, obs, in);
    const auto dense = oracle::dense_fd_gradient(c, p, obs, oracle::to_vector(in), 1e-5);
    EXPECT_LE(max_diff(rev.values, ref.values), 1e-11);
    EXPECT_LE(max_diff(rev.values, dense), 1e-6);
  }
}

TEST(Options, PerturbedScalarBreaksAgreement) {
  const Circuit c = build_ansatz({AnsatzFamily::C, 3, 1});
  std::mt19937_64 rng(173);
  const auto p = random_theta(c.num_params(), rng);
  GradientOptions bad;
  bad.perturb_deferred_scalar = true;
  const auto rev = reverse_mode_gradient(c, p, Observable::hadamard_all(3), init_basis_state(3, 0), bad);
  const auto fd = finite_difference_gradient(c, p, Observable::hadamard_all(3), init_basis_state(3, 0));
  EXPECT_GT(max_diff(rev.values, fd.values), 1e-3);
}

}  // namespace
}  // namespace revgrad
