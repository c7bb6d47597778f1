// Copyright 2026 The cpnkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Finite-dimensional C*-algebras M_{d_1} (+) ... (+) M_{d_K} and their
// block-diagonal elements.
//
// Coordinates: an element is identified with the vector of its matrix
// entries, block-major then row-major, i.e. coordinate offset(k) + p*d_k + q
// holds entry (p,q) of block k. matrix_units() follows the same order.

#ifndef CPNKIT_ALGEBRA_HPP
#define CPNKIT_ALGEBRA_HPP

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cpn/error.hpp"
#include "cpn/linalg.hpp"

namespace cpn {

class AlgebraElement;

class CStarAlgebra {
 public:
  /// Throws ValidationError for an empty list or a nonpositive dimension.
  explicit CStarAlgebra(std::vector<Index> block_dims) : dims_(std::move(block_dims)) {
    if (dims_.empty()) throw ValidationError("algebra: block list is empty");
    Index off = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      if (dims_[k] < 1) {
        std::ostringstream os;
        os << "algebra: block " << k << " has nonpositive dimension " << dims_[k];
        throw ValidationError(os.str());
      }
      offsets_.push_back(off);
      off += dims_[k] * dims_[k];
    }
    dimension_ = off;
  }

  const std::vector<Index>& block_dims() const noexcept { return dims_; }
  Index num_blocks() const noexcept { return static_cast<Index>(dims_.size()); }
  Index block_dim(Index k) const { return dims_[static_cast<std::size_t>(k)]; }
  /// Total coordinate dimension sum_k d_k^2.
  Index dimension() const noexcept { return dimension_; }
  Index offset(Index k) const { return offsets_[static_cast<std::size_t>(k)]; }
  Index coordinate(Index k, Index p, Index q) const { return offset(k) + p * block_dim(k) + q; }

  AlgebraElement unit() const;
  AlgebraElement zero() const;

  friend bool operator==(const CStarAlgebra& a, const CStarAlgebra& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<Index> dims_;
  std::vector<Index> offsets_;
  Index dimension_ = 0;
};

inline CStarAlgebra make_algebra(std::vector<Index> block_dims) {
  return CStarAlgebra(std::move(block_dims));
}

/// Position of a matrix unit e_pq^(k).
struct MatrixUnit {
  Index block;
  Index row;
  Index col;
};

/// Matrix units in coordinate order.
inline std::vector<MatrixUnit> matrix_unit_labels(const CStarAlgebra& a) {
  std::vector<MatrixUnit> out;
  out.reserve(static_cast<std::size_t>(a.dimension()));
  for (Index k = 0; k < a.num_blocks(); ++k) {
    for (Index p = 0; p < a.block_dim(k); ++p) {
      for (Index q = 0; q < a.block_dim(k); ++q) out.push_back({k, p, q});
    }
  }
  return out;
}

class AlgebraElement {
 public:
  /// Throws ValidationError when block shapes do not match the algebra.
  AlgebraElement(CStarAlgebra algebra, std::vector<Matrix> blocks)
      : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    if (static_cast<Index>(blocks_.size()) != algebra_.num_blocks()) {
      throw ValidationError("element: number of blocks does not match algebra");
    }
    for (Index k = 0; k < algebra_.num_blocks(); ++k) {
      const Matrix& b = blocks_[static_cast<std::size_t>(k)];
      if (b.rows() != algebra_.block_dim(k) || b.cols() != algebra_.block_dim(k)) {
        std::ostringstream os;
        os << "element: block " << k << " has shape " << b.rows() << "x" << b.cols()
           << ", expected " << algebra_.block_dim(k);
        throw ValidationError(os.str());
      }
    }
  }

  static AlgebraElement from_coordinates(const CStarAlgebra& algebra, const Vector& coords) {
    if (coords.size() != algebra.dimension()) {
      throw ValidationError("element: coordinate vector has wrong length");
    }
    std::vector<Matrix> blocks;
    for (Index k = 0; k < algebra.num_blocks(); ++k) {
      const Index d = algebra.block_dim(k);
      Matrix b(d, d);
      for (Index p = 0; p < d; ++p) {
        for (Index q = 0; q < d; ++q) b(p, q) = coords(algebra.coordinate(k, p, q));
      }
      blocks.push_back(std::move(b));
    }
    return AlgebraElement(algebra, std::move(blocks));
  }

  static AlgebraElement matrix_unit(const CStarAlgebra& algebra, const MatrixUnit& u) {
    AlgebraElement e = algebra.zero();
    e.blocks_[static_cast<std::size_t>(u.block)](u.row, u.col) = 1.0;
    return e;
  }

  const CStarAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<Matrix>& blocks() const noexcept { return blocks_; }
  const Matrix& block(Index k) const { return blocks_[static_cast<std::size_t>(k)]; }

  Vector coordinates() const {
    Vector v(algebra_.dimension());
    for (Index k = 0; k < algebra_.num_blocks(); ++k) {
      const Index d = algebra_.block_dim(k);
      for (Index p = 0; p < d; ++p) {
        for (Index q = 0; q < d; ++q) v(algebra_.coordinate(k, p, q)) = block(k)(p, q);
      }
    }
    return v;
  }

  AlgebraElement adjoint() const {
    std::vector<Matrix> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(b.adjoint());
    return AlgebraElement(algebra_, std::move(out));
  }

  AlgebraElement scaled(cplx s) const {
    std::vector<Matrix> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(s * b);
    return AlgebraElement(algebra_, std::move(out));
  }

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    return zip(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x + y; });
  }
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    return zip(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x - y; });
  }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    return zip(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x * y; });
  }
  friend AlgebraElement operator*(cplx s, const AlgebraElement& a) { return a.scaled(s); }

 private:
  template <typename Op>
  static AlgebraElement zip(const AlgebraElement& a, const AlgebraElement& b, Op op) {
    if (!(a.algebra_ == b.algebra_)) throw ValidationError("element: algebra mismatch");
    std::vector<Matrix> out;
    out.reserve(a.blocks_.size());
    for (std::size_t k = 0; k < a.blocks_.size(); ++k) out.push_back(op(a.blocks_[k], b.blocks_[k]));
    return AlgebraElement(a.algebra_, std::move(out));
  }

  CStarAlgebra algebra_;
  std::vector<Matrix> blocks_;
};

inline AlgebraElement CStarAlgebra::unit() const {
  std::vector<Matrix> blocks;
  for (Index d : dims_) blocks.push_back(Matrix::Identity(d, d));
  return AlgebraElement(*this, std::move(blocks));
}

inline AlgebraElement CStarAlgebra::zero() const {
  std::vector<Matrix> blocks;
  for (Index d : dims_) blocks.push_back(Matrix::Zero(d, d));
  return AlgebraElement(*this, std::move(blocks));
}

enum class Arithmetic { add, mul, adjoint, scale };

/// Uniform entry point for the *-algebra operations. `b` is ignored for
/// adjoint; `s` is used only by scale.
inline AlgebraElement arithmetic(const AlgebraElement& a, const AlgebraElement* b, Arithmetic kind,
                                 cplx s = 1.0) {
  switch (kind) {
    case Arithmetic::add:
    case Arithmetic::mul:
      if (b == nullptr) throw ValidationError("arithmetic: second operand required");
      return kind == Arithmetic::add ? a + *b : a * *b;
    case Arithmetic::adjoint:
      return a.adjoint();
    case Arithmetic::scale:
      return a.scaled(s);
  }
  throw ValidationError("arithmetic: unknown operation");
}

/// The D matrix units e_pq^(k), block-major then row-major.
inline std::vector<AlgebraElement> matrix_units(const CStarAlgebra& a) {
  std::vector<AlgebraElement> out;
  for (const auto& u : matrix_unit_labels(a)) out.push_back(AlgebraElement::matrix_unit(a, u));
  return out;
}

/// Maximal block spectral norm.
inline double cstar_norm(const AlgebraElement& a) {
  double n = 0.0;
  for (const auto& b : a.blocks()) n = std::max(n, op_norm(b));
  return n;
}

/// Hermitian (to tol) and every block has min eigenvalue >= -tol (1 + ||block||).
inline bool is_positive(const AlgebraElement& a, double tol) {
  for (const auto& b : a.blocks()) {
    const double nb = op_norm(b);
    if (hermiticity_residual(b) > cutoff(tol, nb)) return false;
    if (min_eigenvalue(b) < -cutoff(tol, nb)) return false;
  }
  return true;
}

inline double distance(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.algebra() == b.algebra())) throw ValidationError("element: algebra mismatch");
  double d2 = 0.0;
  for (Index k = 0; k < a.algebra().num_blocks(); ++k) d2 += (a.block(k) - b.block(k)).squaredNorm();
  return std::sqrt(d2);
}

/// Elements are equal when their distance is below tol (1 + max norm).
inline bool approx_equal(const AlgebraElement& a, const AlgebraElement& b, double tol) {
  return distance(a, b) <= cutoff(tol, std::max(cstar_norm(a), cstar_norm(b)));
}

/// u*u = uu* = 1 to tol.
inline bool is_unitary(const AlgebraElement& u, double tol) {
  const AlgebraElement one = u.algebra().unit();
  return approx_equal(u.adjoint() * u, one, tol) && approx_equal(u * u.adjoint(), one, tol);
}

}  // namespace cpn

#endif  // CPNKIT_ALGEBRA_HPP
