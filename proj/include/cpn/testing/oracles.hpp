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

// Reference computations used only by the tests. None of them shares code
// paths with the Choi eigendecomposition or the structural commutant solver.

#ifndef CPNKIT_TESTING_ORACLES_HPP
#define CPNKIT_TESTING_ORACLES_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "cpn/random.hpp"
#include "cpn/stinespring.hpp"

namespace cpn::oracle {

/// Gram matrix of the formal vectors Phi(b_a) V_i xi_u, indexed
/// a (n m) + i m + u over matrix units b_a:
///   G[(a,i,u),(b,j,v)] = rho_ij(b_a* b_b)(u, v).
inline Matrix gns_gram(const CPnMap& rho) {
  const CStarAlgebra& alg = rho.domain();
  const auto units = matrix_units(alg);
  const Index n = rho.order();
  const Index m = rho.codomain_dim();
  const Index big = alg.dimension() * n * m;
  Matrix g(big, big);
  for (std::size_t a = 0; a < units.size(); ++a) {
    for (std::size_t b = 0; b < units.size(); ++b) {
      const AlgebraElement prod = units[a].adjoint() * units[b];
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
          const Matrix blk = rho(i, j)(prod);
          g.block(static_cast<Index>(a) * n * m + i * m, static_cast<Index>(b) * n * m + j * m, m, m) = blk;
        }
      }
    }
  }
  return g;
}

/// Index of e_c * e_a among the matrix units, or -1 when the product is 0.
inline Index unit_product(const CStarAlgebra& alg, const MatrixUnit& c, const MatrixUnit& a) {
  if (c.block != a.block || c.col != a.row) return -1;
  return alg.coordinate(c.block, c.row, a.col);
}

/// Dilation obtained from the Gram matrix by the GNS construction: the space
/// is the range of G, with embedding R = L^{1/2} U* of the formal vectors.
inline StinespringDilation gns_dilation(const CPnMap& rho, double tol) {
  const CStarAlgebra& alg = rho.domain();
  const Index n = rho.order();
  const Index m = rho.codomain_dim();
  const Index nm = n * m;
  const Matrix g = gns_gram(rho);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double scale = lam.size() ? lam.cwiseAbs().maxCoeff() : 0.0;
  std::vector<Index> keep;
  for (Index s = 0; s < lam.size(); ++s) {
    if (lam(s) > cutoff(tol, scale)) keep.push_back(s);
  }
  const Index r = static_cast<Index>(keep.size());
  Matrix embed(r, g.rows());   // R
  Matrix lift(g.rows(), r);    // R^+ with R R^+ = I
  for (Index s = 0; s < r; ++s) {
    const Index c = keep[static_cast<std::size_t>(s)];
    const double root = std::sqrt(lam(c));
    embed.row(s) = root * es.eigenvectors().col(c).adjoint();
    lift.col(s) = es.eigenvectors().col(c) / root;
  }

  const auto labels = matrix_unit_labels(alg);
  std::vector<Matrix> images;
  for (const auto& e : labels) {
    Matrix shift = Matrix::Zero(g.rows(), g.rows());
    for (std::size_t a = 0; a < labels.size(); ++a) {
      const Index target = unit_product(alg, e, labels[a]);
      if (target < 0) continue;
      for (Index c = 0; c < nm; ++c) shift(target * nm + c, static_cast<Index>(a) * nm + c) = 1.0;
    }
    images.push_back(embed * shift * lift);
  }

  Matrix v = Matrix::Zero(r, nm);
  for (const auto& u : labels) {
    if (u.row != u.col) continue;
    const Index a = alg.coordinate(u.block, u.row, u.col);
    v += embed.middleCols(a * nm, nm);
  }
  std::vector<Matrix> isometries;
  for (Index i = 0; i < n; ++i) isometries.push_back(v.middleCols(i * m, m));
  return StinespringDilation{Representation(alg, r, std::move(images)), std::move(isometries), rho};
}

inline Index gns_rank(const CPnMap& rho, double tol) {
  const Matrix g = gns_gram(rho);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double scale = lam.size() ? lam.cwiseAbs().maxCoeff() : 0.0;
  return static_cast<Index>((lam.array() > cutoff(tol, scale)).count());
}

/// Smallest eigenvalue of the Gram matrix; nonnegative iff rho is CP^n.
inline double gram_min_eigenvalue(const CPnMap& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(gns_gram(rho)), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// Minimum over random probes of sum_st <x_s, flat(rho)(a_s* a_t) x_t> / sum ||a_s||^2 ||x_s||^2,
/// with `terms` summands per probe. A negative value refutes complete positivity.
inline double probe_minimum(const CPnMap& rho, Index probes, Index terms, Rng& rng) {
  const LinearMap flat = flatten(rho);
  const Index nm = flat.codomain_dim();
  double lowest = std::numeric_limits<double>::infinity();
  for (Index t = 0; t < probes; ++t) {
    std::vector<AlgebraElement> a;
    std::vector<Vector> x;
    double weight = 0.0;
    for (Index s = 0; s < terms; ++s) {
      a.push_back(random_element(rho.domain(), rng));
      x.push_back(gaussian_matrix(nm, 1, rng).col(0));
      weight += std::pow(cstar_norm(a.back()) * x.back().norm(), 2);
    }
    cplx total = 0.0;
    for (Index s = 0; s < terms; ++s) {
      for (Index u = 0; u < terms; ++u) {
        const Matrix img = flat(a[static_cast<std::size_t>(s)].adjoint() * a[static_cast<std::size_t>(u)]);
        total += x[static_cast<std::size_t>(s)].dot(img * x[static_cast<std::size_t>(u)]);
      }
    }
    lowest = std::min(lowest, total.real() / weight);
  }
  return lowest;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

/// dim {X : X Phi_1(e) = Phi_2(e) X for all e} from the full stacked system
/// (Phi_1(e)^T (x) I - I (x) Phi_2(e)) vec X = 0. Small spaces only.
inline Index literal_intertwiner_dim(const Representation& from, const Representation& to, double tol) {
  const Index n1 = from.space_dim();
  const Index n2 = to.space_dim();
  const Index cells = n1 * n2;
  if (cells == 0) return 0;
  const std::size_t count = from.images().size();
  Matrix stack(static_cast<Index>(count) * cells, cells);
  const Matrix i1 = Matrix::Identity(n1, n1);
  const Matrix i2 = Matrix::Identity(n2, n2);
  for (std::size_t e = 0; e < count; ++e) {
    const Matrix p1t = from.images()[e].transpose();
    const Matrix& p2 = to.images()[e];
    stack.middleRows(static_cast<Index>(e) * cells, cells) = kron(p1t, i2) - kron(i1, p2);
  }
  return null_space(stack, tol).cols();
}

inline Index literal_commutant_dim(const Representation& rep, double tol) {
  return literal_intertwiner_dim(rep, rep, tol);
}

}  // namespace cpn::oracle

#endif  // CPNKIT_TESTING_ORACLES_HPP
