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

// Intertwiner spaces {X : X Phi_1(e) = Phi_2(e) X} and commutants Phi(A)'.
//
// The commutation equations against the diagonal matrix units Phi(e_pp^(k))
// force X to map range Phi_1(e_pp^(k)) into range Phi_2(e_pp^(k)) and to
// vanish elsewhere on the range of Phi_1(1); the equations against
// e_p0^(k) then tie every such piece to the p = 0 piece. Solving them gives
//   X = sum_p Phi_2(e_p0) B_2 Y B_1* Phi_1(e_0p),   Y arbitrary r_2 x r_1,
// per block (B_i an orthonormal basis of range Phi_i(e_00)), plus an
// arbitrary map between the complements of Phi_1(1) and Phi_2(1). The
// resulting basis is orthonormal in the Frobenius inner product and is
// certified against the full set of commutation equations on a random probe.

#ifndef CPNKIT_COMMUTANT_HPP
#define CPNKIT_COMMUTANT_HPP

#include <random>
#include <vector>

#include "cpn/random.hpp"
#include "cpn/stinespring.hpp"

namespace cpn {

struct IntertwinerSpace {
  std::vector<Matrix> basis;        // each space_dim(to) x space_dim(from)
  double probe_residual = 0.0;      // commutation residual of a random combination

  Index dimension() const { return static_cast<Index>(basis.size()); }
};

namespace detail {

// Eigenvectors of a (near-)projection with eigenvalue above 1/2.
inline Matrix projection_range(const Matrix& p) {
  if (p.rows() == 0) return Matrix(0, 0);
  const HermitianSpectrum sp = hermitian_spectrum(p);
  Index r = 0;
  for (Index i = 0; i < sp.values.size(); ++i) r += sp.values(i) > 0.5 ? 1 : 0;
  return sp.vectors.rightCols(r);
}

inline Matrix random_combination(const std::vector<Matrix>& basis, Index rows, Index cols) {
  Rng rng(0x5eedULL);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix x = Matrix::Zero(rows, cols);
  const double s = basis.empty() ? 1.0 : 1.0 / std::sqrt(static_cast<double>(basis.size()));
  for (const auto& b : basis) {
    const double re = g(rng);
    const double im = g(rng);
    x += cplx(re * s, im * s) * b;
  }
  return x;
}

}  // namespace detail

/// Basis of the intertwiners from `from` to `to`. Both inputs must be
/// *-representations of the same algebra; a failed probe certificate throws
/// CertificationError.
inline IntertwinerSpace intertwiner_space(const Representation& from, const Representation& to,
                                          const Tolerance& tol = {}) {
  if (!(from.algebra() == to.algebra())) throw ValidationError("intertwiner_space: algebra mismatch");
  const CStarAlgebra& alg = from.algebra();
  const Index n1 = from.space_dim();
  const Index n2 = to.space_dim();
  IntertwinerSpace out;

  for (Index k = 0; k < alg.num_blocks(); ++k) {
    const Index d = alg.block_dim(k);
    const Matrix b1 = detail::projection_range(from.image(alg.coordinate(k, 0, 0)));
    const Matrix b2 = detail::projection_range(to.image(alg.coordinate(k, 0, 0)));
    if (b1.cols() == 0 || b2.cols() == 0) continue;
    std::vector<Matrix> left;
    std::vector<Matrix> right;
    for (Index p = 0; p < d; ++p) {
      left.push_back(to.image(alg.coordinate(k, p, 0)) * b2);
      right.push_back(b1.adjoint() * from.image(alg.coordinate(k, 0, p)));
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index a = 0; a < b2.cols(); ++a) {
      for (Index b = 0; b < b1.cols(); ++b) {
        Matrix x = Matrix::Zero(n2, n1);
        for (Index p = 0; p < d; ++p) {
          x.noalias() += left[static_cast<std::size_t>(p)].col(a) * right[static_cast<std::size_t>(p)].row(b);
        }
        out.basis.push_back(norm * x);
      }
    }
  }

  const Matrix z1 = detail::projection_range(Matrix::Identity(n1, n1) - from(alg.unit()));
  const Matrix z2 = detail::projection_range(Matrix::Identity(n2, n2) - to(alg.unit()));
  for (Index a = 0; a < z2.cols(); ++a) {
    for (Index b = 0; b < z1.cols(); ++b) out.basis.push_back(z2.col(a) * z1.col(b).adjoint());
  }

  const Matrix probe = detail::random_combination(out.basis, n2, n1);
  out.probe_residual = intertwining_residual(from, to, probe);
  if (out.probe_residual > certificate_bound(tol.value, probe.norm())) {
    throw CertificationError("intertwiner_space: inputs are not *-representations", out.probe_residual);
  }
  return out;
}

struct CommutantBasis {
  std::vector<Matrix> basis;  // orthonormal in the Frobenius inner product
  double commutation_residual = 0.0;
  double adjoint_residual = 0.0;  // distance of probe* from the span

  Index dimension() const { return static_cast<Index>(basis.size()); }
};

/// Phi(A)'. Adjoint closure is certified on a random probe.
inline CommutantBasis commutant(const Representation& rep, const Tolerance& tol = {}) {
  IntertwinerSpace space = intertwiner_space(rep, rep, tol);
  CommutantBasis out;
  out.commutation_residual = space.probe_residual;
  out.basis = std::move(space.basis);

  const Index n = rep.space_dim();
  const Matrix probe = detail::random_combination(out.basis, n, n);
  const Matrix adj = probe.adjoint();
  Matrix proj = Matrix::Zero(n, n);
  for (const auto& b : out.basis) proj += (b.conjugate().cwiseProduct(adj)).sum() * b;
  out.adjoint_residual = distance(adj, proj);
  if (out.adjoint_residual > certificate_bound(tol.value, probe.norm())) {
    throw CertificationError("commutant: basis span is not closed under adjoint", out.adjoint_residual);
  }
  return out;
}

/// sum_j c_j B_j.
inline Matrix combine(const std::vector<Matrix>& basis, const Vector& coeffs, Index rows, Index cols) {
  Matrix x = Matrix::Zero(rows, cols);
  for (std::size_t j = 0; j < basis.size(); ++j) x += coeffs(static_cast<Index>(j)) * basis[j];
  return x;
}

}  // namespace cpn

#endif  // CPNKIT_COMMUTANT_HPP
