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

// Seeded random instances. Every generator takes the engine explicitly.

#ifndef CPNKIT_RANDOM_HPP
#define CPNKIT_RANDOM_HPP

#include <random>

#include "cpn/cpnmaps.hpp"

namespace cpn {

using Rng = std::mt19937_64;

inline Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      out(i, j) = cplx(re, im);
    }
  }
  return out;
}

inline Matrix random_hermitian(Index d, Rng& rng) { return hermitian_part(gaussian_matrix(d, d, rng)); }

/// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
inline Matrix random_unitary(Index d, Rng& rng) {
  const Matrix g = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < d; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

inline AlgebraElement random_element(const CStarAlgebra& a, Rng& rng) {
  std::vector<Matrix> blocks;
  for (Index d : a.block_dims()) blocks.push_back(gaussian_matrix(d, d, rng));
  return AlgebraElement(a, std::move(blocks));
}

inline AlgebraElement random_unitary_element(const CStarAlgebra& a, Rng& rng) {
  std::vector<Matrix> blocks;
  for (Index d : a.block_dims()) blocks.push_back(random_unitary(d, rng));
  return AlgebraElement(a, std::move(blocks));
}

/// Random completely n-positive map: per algebra block, a complex Gaussian G
/// of shape (d n m) x rank gives the flattened Choi block G G*. rank = 0 is
/// the zero map.
inline CPnMap random_cpn_map(const CStarAlgebra& a, Index m, Index n, Index rank, Rng& rng) {
  if (m < 1 || n < 1 || rank < 0) throw ValidationError("random_cpn_map: nonpositive parameter");
  std::vector<Matrix> blocks;
  for (Index d : a.block_dims()) {
    const Matrix g = gaussian_matrix(d * n * m, rank, rng);
    blocks.push_back(g * g.adjoint());
  }
  return unflatten(LinearMap(a, n * m, std::move(blocks)), n);
}

/// Arbitrary (generally not positive) linear map with Gaussian Choi blocks.
inline LinearMap random_linear_map(const CStarAlgebra& a, Index m, Rng& rng) {
  std::vector<Matrix> blocks;
  for (Index d : a.block_dims()) blocks.push_back(gaussian_matrix(d * m, d * m, rng));
  return LinearMap(a, m, std::move(blocks));
}

}  // namespace cpn

#endif  // CPNKIT_RANDOM_HPP
