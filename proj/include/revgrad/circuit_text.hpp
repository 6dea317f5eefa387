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

#include <istream>
#include <string>

#include "revgrad/circuit.hpp"
#include "revgrad/errors.hpp"

namespace revgrad {

/// Reads the line-oriented circuit format:
///
///     # comment
///     qubits 4
///     params 3
///     rx q0 p0
///     rp xy q0 q1 p1
///     crz q1 q2 p2
///     cx q0 q3
///
/// Gate lines: rx|ry|rz q<t> p<k>; rp <axes> q<t1> .. q<tm> p<k>;
/// phase q<t> p<k>; h|x|y|z q<t>; cx q<c> q<t>; crx|cry|crz q<c> q<t> p<k>.
/// Blank lines and lines whose first non-space character is '#' are skipped.
/// Throws ParseError naming the offending line.
Circuit parse_circuit(std::istream& in);
Circuit parse_circuit_string(const std::string& text);
Circuit load_circuit(const std::string& path);

/// Inverse of parse_circuit. Throws std::domain_error for gates the format
/// cannot express (custom matrices, non-default rotation coefficients,
/// controlled phase, multi-controlled gates).
std::string to_circuit_text(const Circuit& circuit);

}  // namespace revgrad
