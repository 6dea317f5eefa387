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

#include "revgrad/small_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace revgrad {

SmallMatrix::SmallMatrix(std::size_t dim) : dim_(dim) {
  if (dim != 2 && dim != 4) {
    throw std::domain_error("SmallMatrix dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

SmallMatrix SmallMatrix::from_2x2(cplx a, cplx b, cplx c, cplx d) {
  SmallMatrix m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

SmallMatrix SmallMatrix::identity(std::size_t dim) {
  SmallMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

SmallMatrix SmallMatrix::kron(const SmallMatrix& high, const SmallMatrix& low) {
  if (high.dim() != 2 || low.dim() != 2) {
    throw std::domain_error("SmallMatrix::kron supports 2x2 factors only");
  }
  SmallMatrix m(4);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      m(r, c) = high(r >> 1, c >> 1) * low(r & 1, c & 1);
    }
  }
  return m;
}

SmallMatrix SmallMatrix::adjoint() const {
  SmallMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) m(r, c) = std::conj((*this)(c, r));
  }
  return m;
}

SmallMatrix SmallMatrix::operator*(const SmallMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw std::domain_error("SmallMatrix product: dimension mismatch");
  SmallMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) acc += (*this)(r, k) * rhs(k, c);
      m(r, c) = acc;
    }
  }
  return m;
}

SmallMatrix SmallMatrix::operator+(const SmallMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw std::domain_error("SmallMatrix sum: dimension mismatch");
  SmallMatrix m(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + rhs.data_[i];
  return m;
}

SmallMatrix SmallMatrix::operator-(const SmallMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw std::domain_error("SmallMatrix difference: dimension mismatch");
  SmallMatrix m(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - rhs.data_[i];
  return m;
}

SmallMatrix SmallMatrix::operator*(cplx s) const {
  SmallMatrix m(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * s;
  return m;
}

std::optional<SmallMatrix> SmallMatrix::inverse() const {
  if (dim_ == 2) {
    const cplx a = (*this)(0, 0), b = (*this)(0, 1), c = (*this)(1, 0), d = (*this)(1, 1);
    const cplx det = a * d - b * c;
    if (std::abs(det) <= kSingularThreshold) return std::nullopt;
    return from_2x2(d / det, -b / det, -c / det, a / det);
  }

  SmallMatrix work = *this;
  SmallMatrix inv = identity(dim_);
  for (std::size_t col = 0; col < dim_; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < dim_; ++r) {
      if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
    }
    if (std::abs(work(pivot, col)) <= kSingularThreshold) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < dim_; ++c) {
        std::swap(work(pivot, c), work(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const cplx scale = 1.0 / work(col, col);
    for (std::size_t c = 0; c < dim_; ++c) {
      work(col, c) *= scale;
      inv(col, c) *= scale;
    }
    for (std::size_t r = 0; r < dim_; ++r) {
      if (r == col) continue;
      const cplx factor = work(r, col);
      if (factor == cplx{}) continue;
      for (std::size_t c = 0; c < dim_; ++c) {
        work(r, c) -= factor * work(col, c);
        inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

double SmallMatrix::max_abs_diff(const SmallMatrix& other) const {
  if (other.dim_ != dim_) throw std::domain_error("SmallMatrix compare: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  }
  return worst;
}

bool SmallMatrix::operator==(const SmallMatrix& other) const {
  return dim_ == other.dim_ && data_ == other.data_;
}

namespace matrices {

SmallMatrix pauli_x() { return SmallMatrix::from_2x2(0.0, 1.0, 1.0, 0.0); }
SmallMatrix pauli_y() { return SmallMatrix::from_2x2(0.0, cplx(0, -1), cplx(0, 1), 0.0); }
SmallMatrix pauli_z() { return SmallMatrix::from_2x2(1.0, 0.0, 0.0, -1.0); }
SmallMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return SmallMatrix::from_2x2(s, s, s, -s);
}
SmallMatrix raising() { return SmallMatrix::from_2x2(0.0, 0.0, 1.0, 0.0); }
SmallMatrix lowering() { return SmallMatrix::from_2x2(0.0, 1.0, 0.0, 0.0); }

SmallMatrix pauli(char axis) {
  switch (axis) {
    case 'I':
    case 'i':
      return SmallMatrix::identity(2);
    case 'X':
    case 'x':
      return pauli_x();
    case 'Y':
    case 'y':
      return pauli_y();
    case 'Z':
    case 'z':
      return pauli_z();
    default:
      throw std::domain_error(std::string("unknown Pauli axis '") + axis + "'");
  }
}

}  // namespace matrices

}  // namespace revgrad
