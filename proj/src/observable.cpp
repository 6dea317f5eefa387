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

#include "revgrad/observable.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <optional>
#include <stdexcept>

namespace revgrad {

namespace {

SmallMatrix factor_matrix(char letter) {
  switch (letter) {
    case 'X': return matrices::pauli_x();
    case 'Y': return matrices::pauli_y();
    case 'Z': return matrices::pauli_z();
    case 'H': return matrices::hadamard();
    case '+': return matrices::raising();
    case '-': return matrices::lowering();
    default: throw std::domain_error(std::string("unknown observable factor '") + letter + "'");
  }
}

bool valid_letter(char c) {
  return c == 'I' || c == 'X' || c == 'Y' || c == 'Z' || c == 'H' || c == '+' || c == '-';
}

// obs applied to amplitudes in place of `out`, reading from `src`; `scratch`
// must have the same size.
void apply_terms(const StateVector& src, const Observable& obs, StateVector& out,
                 std::optional<StateVector>& scratch) {
  const auto& terms = obs.terms();
  auto apply_factors = [&](std::span<cplx> amps, const ObservableTerm& term) {
    for (std::size_t q = 0; q < term.factors.size(); ++q) {
      if (term.factors[q] == 'I') continue;
      const Qubit t[] = {q};
      kernels::apply_matrix(amps, factor_matrix(term.factors[q]), t, {});
    }
    kernels::scale(term.coefficient, amps);
  };
  apply_factors(out.amplitudes(), terms[0]);
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (!scratch) {
      scratch.emplace(kernels::copy(src));
    } else {
      std::copy(src.amplitudes().begin(), src.amplitudes().end(), scratch->amplitudes().begin());
    }
    apply_factors(scratch->amplitudes(), terms[i]);
    kernels::axpy(1.0, scratch->amplitudes(), out.amplitudes());
  }
}

}  // namespace

Observable::Observable(std::size_t num_qubits, std::vector<ObservableTerm> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
  if (num_qubits_ < 1) throw std::domain_error("observable needs at least one qubit");
  if (terms_.empty()) throw std::domain_error("observable needs at least one term");
  for (const ObservableTerm& t : terms_) {
    if (t.factors.size() != num_qubits_) {
      throw std::domain_error("observable term '" + t.factors + "' has length " +
                              std::to_string(t.factors.size()) + ", expected " +
                              std::to_string(num_qubits_));
    }
    for (char c : t.factors) {
      if (!valid_letter(c)) {
        throw std::domain_error(std::string("unknown observable factor '") + c + "' in term '" +
                                t.factors + "'");
      }
    }
  }
}

Observable Observable::hadamard_all(std::size_t num_qubits) {
  return Observable(num_qubits, {{1.0, std::string(num_qubits, 'H')}});
}

Observable Observable::z_all(std::size_t num_qubits) {
  return Observable(num_qubits, {{1.0, std::string(num_qubits, 'Z')}});
}

bool Observable::is_hermitian() const {
  if (hermitian_) return *hermitian_;
  bool structural = true;
  for (const ObservableTerm& t : terms_) {
    if (t.coefficient.imag() != 0.0 || t.factors.find_first_of("+-") != std::string::npos) {
      structural = false;
      break;
    }
  }
  if (structural) {
    hermitian_ = true;
  } else if (num_qubits_ > kMaxHermitianCheckQubits) {
    hermitian_ = false;
  } else {
    // A is Hermitian iff A|j> == A^dagger|j> for every basis column j.
    const Observable adj = adjoint_observable(*this);
    const std::size_t dim = std::size_t{1} << num_qubits_;
    double scale = 0.0;
    for (const ObservableTerm& t : terms_) scale += std::abs(t.coefficient);
    const double tol = 1e-12 * std::max(1.0, scale);
    bool ok = true;
    for (std::size_t j = 0; j < dim && ok; ++j) {
      const StateVector basis = init_basis_state(num_qubits_, j);
      const StateVector a = apply_observable(basis, *this);
      const StateVector b = apply_observable(basis, adj);
      for (std::size_t i = 0; i < dim; ++i) {
        if (std::abs(a[i] - b[i]) > tol) {
          ok = false;
          break;
        }
      }
    }
    hermitian_ = ok;
  }
  return *hermitian_;
}

StateVector apply_observable(const StateVector& state, const Observable& obs) {
  if (state.empty() || state.num_qubits() != obs.num_qubits()) {
    throw std::domain_error("apply_observable: observable acts on " +
                            std::to_string(obs.num_qubits()) + " qubits, state has " +
                            std::to_string(state.num_qubits()));
  }
  StateVector out = kernels::copy(state);
  std::optional<StateVector> scratch;
  apply_terms(state, obs, out, scratch);
  if (out.tracker() != nullptr) ++out.tracker()->counters.observable_applies;
  return out;
}

Observable adjoint_observable(const Observable& obs) {
  std::vector<ObservableTerm> terms;
  terms.reserve(obs.terms().size());
  for (const ObservableTerm& t : obs.terms()) {
    std::string factors = t.factors;
    for (char& c : factors) {
      if (c == '+') c = '-';
      else if (c == '-') c = '+';
    }
    terms.push_back({std::conj(t.coefficient), std::move(factors)});
  }
  return Observable(obs.num_qubits(), std::move(terms));
}

cplx expectation(const StateVector& state, const Observable& obs) {
  const StateVector applied = apply_observable(state, obs);
  return kernels::dot(state.amplitudes(), applied.amplitudes());
}

Observable parse_observable(std::istream& in) {
  std::optional<std::size_t> num_qubits;
  std::vector<ObservableTerm> terms;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::istringstream ss(text);
    std::vector<std::string> words;
    for (std::string w; ss >> w;) words.push_back(w);
    if (words.empty() || words.front().front() == '#') continue;

    if (!num_qubits) {
      std::size_t n = 0;
      if (words.size() != 2 || words[0] != "qubits") {
        throw ParseError(line_no, "expected 'qubits <N>'");
      }
      const auto [ptr, ec] = std::from_chars(words[1].data(), words[1].data() + words[1].size(), n);
      if (ec != std::errc() || ptr != words[1].data() + words[1].size() || n < 1) {
        throw ParseError(line_no, "invalid qubit count '" + words[1] + "'");
      }
      num_qubits = n;
      continue;
    }
    if (words.size() != 3) throw ParseError(line_no, "expected '<re> <im> <factors>'");
    double re = 0.0, im = 0.0;
    try {
      std::size_t used_re = 0, used_im = 0;
      re = std::stod(words[0], &used_re);
      im = std::stod(words[1], &used_im);
      if (used_re != words[0].size() || used_im != words[1].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError(line_no, "invalid coefficient '" + words[0] + " " + words[1] + "'");
    }
    const std::string& factors = words[2];
    if (factors.size() != *num_qubits) {
      throw ParseError(line_no, "factor string '" + factors + "' has length " +
                                    std::to_string(factors.size()) + ", expected " +
                                    std::to_string(*num_qubits));
    }
    for (char c : factors) {
      if (!valid_letter(c)) throw ParseError(line_no, std::string("unknown factor '") + c + "'");
    }
    terms.push_back({cplx(re, im), factors});
  }
  if (!num_qubits) throw ParseError(line_no + 1, "missing 'qubits <N>' header");
  if (terms.empty()) throw ParseError(line_no + 1, "observable has no terms");
  return Observable(*num_qubits, std::move(terms));
}

Observable parse_observable_string(const std::string& text) {
  std::istringstream in(text);
  return parse_observable(in);
}

Observable load_observable(const std::string& name_or_path, std::size_t num_qubits) {
  if (name_or_path == "hadamard_all") return Observable::hadamard_all(num_qubits);
  if (name_or_path == "z_all") return Observable::z_all(num_qubits);
  std::ifstream in(name_or_path);
  if (!in) throw std::runtime_error("cannot open observable file '" + name_or_path + "'");
  return parse_observable(in);
}

}  // namespace revgrad
