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

#include "revgrad/circuit_text.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

namespace revgrad {

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> words;
  for (std::string w; ss >> w;) words.push_back(w);
  return words;
}

bool is_skippable(const std::vector<std::string>& words) {
  return words.empty() || words.front().front() == '#';
}

std::optional<std::size_t> parse_index(std::string_view token, char prefix) {
  if (token.size() < 2 || token.front() != prefix) return std::nullopt;
  std::size_t value = 0;
  const char* first = token.data() + 1;
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

class LineReader {
 public:
  LineReader(std::size_t line, const std::vector<std::string>& words) : line_(line), words_(words) {}

  void expect_count(std::size_t n) const {
    if (words_.size() != n) {
      fail("'" + words_[0] + "' expects " + std::to_string(n - 1) + " operand(s), got " +
           std::to_string(words_.size() - 1));
    }
  }
  Qubit qubit(std::size_t i) const {
    const auto q = parse_index(words_[i], 'q');
    if (!q) fail("expected qubit operand q<index>, got '" + words_[i] + "'");
    return *q;
  }
  std::size_t param(std::size_t i) const {
    const auto p = parse_index(words_[i], 'p');
    if (!p) fail("expected parameter operand p<index>, got '" + words_[i] + "'");
    return *p;
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, message); }

 private:
  std::size_t line_;
  const std::vector<std::string>& words_;
};

std::size_t parse_header(std::size_t line, const std::vector<std::string>& words,
                         const std::string& key) {
  if (words.size() != 2 || words[0] != key) {
    throw ParseError(line, "expected '" + key + " <count>'");
  }
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(words[1].data(), words[1].data() + words[1].size(), value);
  if (ec != std::errc() || ptr != words[1].data() + words[1].size()) {
    throw ParseError(line, "invalid " + key + " count '" + words[1] + "'");
  }
  return value;
}

Gate parse_gate(const LineReader& r, const std::vector<std::string>& words) {
  const std::string& op = words[0];
  if (op == "rx" || op == "ry" || op == "rz") {
    r.expect_count(3);
    return Gate::rotation(op.substr(1), {r.qubit(1)}, r.param(2));
  }
  if (op == "crx" || op == "cry" || op == "crz") {
    r.expect_count(4);
    return Gate::rotation(op.substr(2), {r.qubit(2)}, r.param(3), {r.qubit(1)});
  }
  if (op == "rp") {
    if (words.size() < 4) r.fail("'rp' expects <axes> q<t1> .. q<tm> p<k>");
    const std::string& axes = words[1];
    for (char a : axes) {
      if (a != 'x' && a != 'y' && a != 'z') r.fail("invalid Pauli axes '" + axes + "'");
    }
    r.expect_count(axes.size() + 3);
    std::vector<Qubit> targets;
    for (std::size_t i = 0; i < axes.size(); ++i) targets.push_back(r.qubit(2 + i));
    return Gate::rotation(axes, std::move(targets), r.param(words.size() - 1));
  }
  if (op == "phase") {
    r.expect_count(3);
    return Gate::phase(r.qubit(1), r.param(2));
  }
  if (op == "h" || op == "x" || op == "y" || op == "z") {
    r.expect_count(2);
    const Qubit q = r.qubit(1);
    if (op == "h") return Gate::h(q);
    if (op == "x") return Gate::x(q);
    if (op == "y") return Gate::y(q);
    return Gate::z(q);
  }
  if (op == "cx") {
    r.expect_count(3);
    return Gate::cx(r.qubit(1), r.qubit(2));
  }
  r.fail("unknown gate '" + op + "'");
}

std::string gate_line(const Gate& g) {
  auto q = [](Qubit i) { return " q" + std::to_string(i); };
  auto p = [](std::size_t i) { return " p" + std::to_string(i); };
  auto unsupported = [&]() -> std::string {
    throw std::domain_error("gate '" + g.name() + "' cannot be written in the circuit text format");
  };

  if (const auto* rot = std::get_if<PauliRotation>(&g.kind())) {
    if (rot->alpha != -0.5) return unsupported();
    if (g.targets().size() == 1 && g.controls().empty()) {
      return "r" + rot->axes + q(g.targets()[0]) + p(g.param_refs()[0]);
    }
    if (g.targets().size() == 1 && g.controls().size() == 1) {
      return "cr" + rot->axes + q(g.controls()[0]) + q(g.targets()[0]) + p(g.param_refs()[0]);
    }
    if (g.controls().empty()) {
      std::string line = "rp " + rot->axes;
      for (Qubit t : g.targets()) line += q(t);
      return line + p(g.param_refs()[0]);
    }
    return unsupported();
  }
  if (std::holds_alternative<PhaseShift>(g.kind())) {
    if (!g.controls().empty()) return unsupported();
    return "phase" + q(g.targets()[0]) + p(g.param_refs()[0]);
  }
  if (const auto* f = std::get_if<FixedUnitary>(&g.kind())) {
    const bool known = (f->name == "h" && f->matrix == matrices::hadamard()) ||
                       (f->name == "x" && f->matrix == matrices::pauli_x()) ||
                       (f->name == "y" && f->matrix == matrices::pauli_y()) ||
                       (f->name == "z" && f->matrix == matrices::pauli_z());
    if (!known || g.targets().size() != 1) return unsupported();
    if (g.controls().empty()) return f->name + q(g.targets()[0]);
    if (f->name == "x" && g.controls().size() == 1) {
      return "cx" + q(g.controls()[0]) + q(g.targets()[0]);
    }
  }
  return unsupported();
}

}  // namespace

Circuit parse_circuit(std::istream& in) {
  std::optional<std::size_t> num_qubits;
  std::optional<Circuit> circuit;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    const std::vector<std::string> words = split_words(text);
    if (is_skippable(words)) continue;
    if (!num_qubits) {
      num_qubits = parse_header(line_no, words, "qubits");
      if (*num_qubits < 1) throw ParseError(line_no, "qubit count must be at least 1");
      continue;
    }
    if (!circuit) {
      circuit.emplace(*num_qubits, parse_header(line_no, words, "params"));
      continue;
    }
    const LineReader reader(line_no, words);
    try {
      circuit->add(parse_gate(reader, words));
    } catch (const std::domain_error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!num_qubits) throw ParseError(line_no + 1, "missing 'qubits <N>' header");
  if (!circuit) throw ParseError(line_no + 1, "missing 'params <count>' header");
  return std::move(*circuit);
}

Circuit parse_circuit_string(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit(in);
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file '" + path + "'");
  return parse_circuit(in);
}

std::string to_circuit_text(const Circuit& circuit) {
  std::string out = "qubits " + std::to_string(circuit.num_qubits()) + "\n";
  out += "params " + std::to_string(circuit.num_params()) + "\n";
  for (const Gate& g : circuit.gates()) out += gate_line(g) + "\n";
  return out;
}

}  // namespace revgrad
