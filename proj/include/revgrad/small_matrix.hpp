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

#include <array>
#include <complex>
#include <cstddef>
#include <optional>

namespace revgrad {

using cplx = std::complex<double>;

/// Dense 2x2 or 4x4 complex matrix, row-major.
///
/// Holds single- and two-qubit gate actions together with their derivatives,
/// so no unitarity is assumed. For a two-target matrix the local basis index
/// is `b(targets[0]) + 2 * b(targets[1])`.
class SmallMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4;

  SmallMatrix() = default;

  /// Zero matrix of the given dimension (2 or 4).
  explicit SmallMatrix(std::size_t dim);

  /// Row-major 2x2 matrix.
  static SmallMatrix from_2x2(cplx a, cplx b, cplx c, cplx d);
  static SmallMatrix identity(std::size_t dim);
  /// Kronecker product `high (x) low`; `low` acts on the least significant
  /// local bit.
  static SmallMatrix kron(const SmallMatrix& high, const SmallMatrix& low);

  std::size_t dim() const { return dim_; }
  /// log2(dim): the number of target qubits the matrix acts on.
  std::size_t num_targets() const { return dim_ == 4 ? 2 : 1; }

  cplx& operator()(std::size_t row, std::size_t col) { return data_[row * kMaxDim + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const {
    return data_[row * kMaxDim + col];
  }

  SmallMatrix adjoint() const;
  SmallMatrix operator*(const SmallMatrix& rhs) const;
  SmallMatrix operator+(const SmallMatrix& rhs) const;
  SmallMatrix operator-(const SmallMatrix& rhs) const;
  SmallMatrix operator*(cplx s) const;

  /// Inverse, or nullopt when the matrix is numerically singular.
  ///
  /// 2x2 uses the closed form (1/det) [[d, -b], [-c, a]] and rejects
  /// |det| <= 1e-14. 4x4 uses Gauss-Jordan elimination with partial
  /// pivoting and rejects any pivot with modulus <= 1e-14.
  std::optional<SmallMatrix> inverse() const;

  /// Largest entry-wise modulus of the difference.
  double max_abs_diff(const SmallMatrix& other) const;

  bool operator==(const SmallMatrix& other) const;

 private:
  std::size_t dim_ = 2;
  std::array<cplx, kMaxDim * kMaxDim> data_{};
};

inline constexpr double kSingularThreshold = 1e-14;

namespace matrices {

SmallMatrix pauli_x();
SmallMatrix pauli_y();
SmallMatrix pauli_z();
SmallMatrix hadamard();
/// |1><0|
SmallMatrix raising();
/// |0><1|
SmallMatrix lowering();
/// Single-qubit Pauli by letter 'I', 'X', 'Y' or 'Z' (either case).
SmallMatrix pauli(char axis);

}  // namespace matrices

}  // namespace revgrad
