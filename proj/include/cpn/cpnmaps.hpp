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

// Linear maps A -> L(C^m) stored by Choi blocks, and n x n matrices of such
// maps (candidate completely n-positive maps).
//
// Choi convention: for algebra block k of size d, the Choi block is the
// (d m) x (d m) matrix C = sum_pq E_pq (x) phi(e_pq), so that
//   C[p*m + a, q*m + b] = phi(e_pq)(a, b).
//
// Flattening sends [rho_ij] to a |-> [rho_ij(a)], a map into L(C^{n m})
// whose row index is i*m + a. Its Choi block therefore has index
// p*(n m) + i*m + a.

#ifndef CPNKIT_CPNMAPS_HPP
#define CPNKIT_CPNMAPS_HPP

#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "cpn/algebra.hpp"

namespace cpn {

class LinearMap {
 public:
  LinearMap(CStarAlgebra domain, Index codomain_dim, std::vector<Matrix> choi_blocks)
      : domain_(std::move(domain)), m_(codomain_dim), choi_(std::move(choi_blocks)) {
    if (m_ < 1) throw ValidationError("linear map: codomain dimension must be positive");
    if (static_cast<Index>(choi_.size()) != domain_.num_blocks()) {
      throw ValidationError("linear map: number of Choi blocks does not match the domain");
    }
    for (Index k = 0; k < domain_.num_blocks(); ++k) {
      const Index s = domain_.block_dim(k) * m_;
      const Matrix& c = choi_[static_cast<std::size_t>(k)];
      if (c.rows() != s || c.cols() != s) {
        std::ostringstream os;
        os << "linear map: Choi block " << k << " has shape " << c.rows() << "x" << c.cols()
           << ", expected " << s << "x" << s;
        throw ValidationError(os.str());
      }
    }
  }

  static LinearMap zero(const CStarAlgebra& domain, Index codomain_dim) {
    std::vector<Matrix> blocks;
    for (Index d : domain.block_dims()) blocks.push_back(Matrix::Zero(d * codomain_dim, d * codomain_dim));
    return LinearMap(domain, codomain_dim, std::move(blocks));
  }

  /// Builds a map from its values on the matrix units (coordinate order).
  static LinearMap from_unit_images(const CStarAlgebra& domain, Index codomain_dim,
                                    const std::vector<Matrix>& images) {
    if (static_cast<Index>(images.size()) != domain.dimension()) {
      throw ValidationError("linear map: one image per matrix unit is required");
    }
    const Index m = codomain_dim;
    std::vector<Matrix> blocks;
    for (Index k = 0; k < domain.num_blocks(); ++k) {
      const Index d = domain.block_dim(k);
      Matrix c(d * m, d * m);
      for (Index p = 0; p < d; ++p) {
        for (Index q = 0; q < d; ++q) {
          const Matrix& img = images[static_cast<std::size_t>(domain.coordinate(k, p, q))];
          if (img.rows() != m || img.cols() != m) {
            throw ValidationError("linear map: unit image has the wrong shape");
          }
          c.block(p * m, q * m, m, m) = img;
        }
      }
      blocks.push_back(std::move(c));
    }
    return LinearMap(domain, codomain_dim, std::move(blocks));
  }

  const CStarAlgebra& domain() const noexcept { return domain_; }
  Index codomain_dim() const noexcept { return m_; }
  const std::vector<Matrix>& choi_blocks() const noexcept { return choi_; }
  const Matrix& choi_block(Index k) const { return choi_[static_cast<std::size_t>(k)]; }

  /// phi(e_pq^(k)).
  Matrix unit_image(Index k, Index p, Index q) const {
    return choi_block(k).block(p * m_, q * m_, m_, m_);
  }
  Matrix unit_image(const MatrixUnit& u) const { return unit_image(u.block, u.row, u.col); }

  std::vector<Matrix> unit_images() const {
    std::vector<Matrix> out;
    for (const auto& u : matrix_unit_labels(domain_)) out.push_back(unit_image(u));
    return out;
  }

  Matrix operator()(const AlgebraElement& a) const {
    if (!(a.algebra() == domain_)) throw ValidationError("apply: element is not in the map's domain");
    Matrix out = Matrix::Zero(m_, m_);
    for (Index k = 0; k < domain_.num_blocks(); ++k) {
      const Index d = domain_.block_dim(k);
      for (Index p = 0; p < d; ++p) {
        for (Index q = 0; q < d; ++q) {
          const cplx c = a.block(k)(p, q);
          if (c != cplx(0.0)) out += c * choi_block(k).block(p * m_, q * m_, m_, m_);
        }
      }
    }
    return out;
  }

  /// Largest spectral norm over the Choi blocks.
  double choi_norm() const {
    double n = 0.0;
    for (const auto& c : choi_) n = std::max(n, op_norm(c));
    return n;
  }

  friend LinearMap operator+(const LinearMap& a, const LinearMap& b) {
    return combine(a, b, 1.0, 1.0);
  }
  friend LinearMap operator-(const LinearMap& a, const LinearMap& b) {
    return combine(a, b, 1.0, -1.0);
  }
  friend LinearMap operator*(cplx s, const LinearMap& a) {
    std::vector<Matrix> blocks;
    for (const auto& c : a.choi_) blocks.push_back(s * c);
    return LinearMap(a.domain_, a.m_, std::move(blocks));
  }

 private:
  static LinearMap combine(const LinearMap& a, const LinearMap& b, cplx sa, cplx sb) {
    if (!(a.domain_ == b.domain_) || a.m_ != b.m_) throw ValidationError("linear map: shape mismatch");
    std::vector<Matrix> blocks;
    for (std::size_t k = 0; k < a.choi_.size(); ++k) blocks.push_back(sa * a.choi_[k] + sb * b.choi_[k]);
    return LinearMap(a.domain_, a.m_, std::move(blocks));
  }

  CStarAlgebra domain_;
  Index m_;
  std::vector<Matrix> choi_;
};

inline Matrix apply(const LinearMap& map, const AlgebraElement& a) { return map(a); }

/// Max Frobenius distance between Choi blocks.
inline double distance(const LinearMap& a, const LinearMap& b) {
  if (!(a.domain() == b.domain()) || a.codomain_dim() != b.codomain_dim()) {
    throw ValidationError("linear map: shape mismatch");
  }
  double d = 0.0;
  for (Index k = 0; k < a.domain().num_blocks(); ++k) d = std::max(d, (a.choi_block(k) - b.choi_block(k)).norm());
  return d;
}

/// An n x n matrix [rho_ij] of linear maps with common domain and codomain.
class CPnMap {
 public:
  /// `entries` is row-major: entries[i*n + j] = rho_ij.
  CPnMap(Index n, std::vector<LinearMap> entries) : n_(n), entries_(std::move(entries)) {
    if (n_ < 1) throw ValidationError("cpn map: order n must be positive");
    if (static_cast<Index>(entries_.size()) != n_ * n_) {
      throw ValidationError("cpn map: expected n*n entries");
    }
    for (const auto& e : entries_) {
      if (!(e.domain() == entries_[0].domain()) || e.codomain_dim() != entries_[0].codomain_dim()) {
        throw ValidationError("cpn map: entries must share domain and codomain");
      }
    }
  }

  /// The n = 1 map with a single entry.
  explicit CPnMap(LinearMap single) : CPnMap(1, std::vector<LinearMap>{std::move(single)}) {}

  static CPnMap zero(const CStarAlgebra& domain, Index codomain_dim, Index n) {
    return CPnMap(n, std::vector<LinearMap>(static_cast<std::size_t>(n * n), LinearMap::zero(domain, codomain_dim)));
  }

  Index order() const noexcept { return n_; }
  const CStarAlgebra& domain() const { return entries_[0].domain(); }
  Index codomain_dim() const { return entries_[0].codomain_dim(); }
  const LinearMap& operator()(Index i, Index j) const { return entries_[static_cast<std::size_t>(i * n_ + j)]; }
  const std::vector<LinearMap>& entries() const noexcept { return entries_; }

  CPnMap with_entry(Index i, Index j, LinearMap map) const {
    std::vector<LinearMap> e = entries_;
    e[static_cast<std::size_t>(i * n_ + j)] = std::move(map);
    return CPnMap(n_, std::move(e));
  }

  friend CPnMap operator+(const CPnMap& a, const CPnMap& b) { return combine(a, b, 1.0, 1.0); }
  friend CPnMap operator-(const CPnMap& a, const CPnMap& b) { return combine(a, b, 1.0, -1.0); }
  friend CPnMap operator*(cplx s, const CPnMap& a) {
    std::vector<LinearMap> e;
    for (const auto& x : a.entries_) e.push_back(s * x);
    return CPnMap(a.n_, std::move(e));
  }

 private:
  static CPnMap combine(const CPnMap& a, const CPnMap& b, cplx sa, cplx sb) {
    if (a.n_ != b.n_) throw ValidationError("cpn map: order mismatch");
    std::vector<LinearMap> e;
    for (std::size_t k = 0; k < a.entries_.size(); ++k) {
      e.push_back(sa * a.entries_[k] + sb * b.entries_[k]);
    }
    return CPnMap(a.n_, std::move(e));
  }

  Index n_;
  std::vector<LinearMap> entries_;
};

/// Max entrywise Choi distance.
inline double distance(const CPnMap& a, const CPnMap& b) {
  if (a.order() != b.order()) throw ValidationError("cpn map: order mismatch");
  double d = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) d = std::max(d, distance(a.entries()[k], b.entries()[k]));
  return d;
}

/// a |-> [rho_ij(a)] as a single map into L(C^{n m}).
inline LinearMap flatten(const CPnMap& rho) {
  const CStarAlgebra& dom = rho.domain();
  const Index n = rho.order();
  const Index m = rho.codomain_dim();
  const Index nm = n * m;
  std::vector<Matrix> blocks;
  for (Index k = 0; k < dom.num_blocks(); ++k) {
    const Index d = dom.block_dim(k);
    Matrix c(d * nm, d * nm);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const Matrix& src = rho(i, j).choi_block(k);
        for (Index p = 0; p < d; ++p) {
          for (Index q = 0; q < d; ++q) {
            c.block(p * nm + i * m, q * nm + j * m, m, m) = src.block(p * m, q * m, m, m);
          }
        }
      }
    }
    blocks.push_back(std::move(c));
  }
  return LinearMap(dom, nm, std::move(blocks));
}

/// Inverse of flatten: splits a map into L(C^{n m}) into its n x n entries.
inline CPnMap unflatten(const LinearMap& flat, Index n) {
  if (n < 1 || flat.codomain_dim() % n != 0) {
    throw ValidationError("unflatten: codomain dimension is not divisible by n");
  }
  const CStarAlgebra& dom = flat.domain();
  const Index nm = flat.codomain_dim();
  const Index m = nm / n;
  std::vector<LinearMap> entries;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      std::vector<Matrix> blocks;
      for (Index k = 0; k < dom.num_blocks(); ++k) {
        const Index d = dom.block_dim(k);
        const Matrix& src = flat.choi_block(k);
        Matrix c(d * m, d * m);
        for (Index p = 0; p < d; ++p) {
          for (Index q = 0; q < d; ++q) {
            c.block(p * m, q * m, m, m) = src.block(p * nm + i * m, q * nm + j * m, m, m);
          }
        }
        blocks.push_back(std::move(c));
      }
      entries.emplace_back(dom, m, std::move(blocks));
    }
  }
  return CPnMap(n, std::move(entries));
}

/// Scale used by relative tolerances: largest Choi block norm of flatten(rho).
inline double map_scale(const CPnMap& rho) { return flatten(rho).choi_norm(); }

/// max over matrix units e and (i,j) of ||rho_ji(e*) - rho_ij(e)*||_F.
inline double hermitian_symmetry_residual(const CPnMap& rho) {
  double r = 0.0;
  const Index n = rho.order();
  for (const auto& u : matrix_unit_labels(rho.domain())) {
    const MatrixUnit ut{u.block, u.col, u.row};
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        r = std::max(r, (rho(j, i).unit_image(ut) - rho(i, j).unit_image(u).adjoint()).norm());
      }
    }
  }
  return r;
}

inline bool check_hermitian_symmetry(const CPnMap& rho, double tol) {
  return hermitian_symmetry_residual(rho) <= cutoff(tol, map_scale(rho));
}

struct PositivityCertificate {
  bool verdict = false;
  double min_eig = 0.0;              // global minimum Choi eigenvalue of flatten(rho)
  bool hermitian = false;
  double hermitian_residual = 0.0;
};

/// Choi test on flatten(rho): every block has min eigenvalue
/// >= -tol (1 + ||block||), after checking rho_ji(a*) = rho_ij(a)*.
inline PositivityCertificate complete_positivity_certificate(const CPnMap& rho, double tol) {
  PositivityCertificate cert;
  const LinearMap flat = flatten(rho);
  const double scale = flat.choi_norm();
  cert.hermitian_residual = hermitian_symmetry_residual(rho);
  cert.hermitian = cert.hermitian_residual <= cutoff(tol, scale);
  bool ok = cert.hermitian;
  double global_min = std::numeric_limits<double>::infinity();
  for (const auto& c : flat.choi_blocks()) {
    const double mn = min_eigenvalue(c);
    global_min = std::min(global_min, mn);
    if (mn < -cutoff(tol, op_norm(c))) ok = false;
  }
  cert.min_eig = global_min;
  cert.verdict = ok;
  return cert;
}

inline bool is_completely_n_positive(const CPnMap& rho, double tol) {
  return complete_positivity_certificate(rho, tol).verdict;
}

/// theta <= rho  iff  rho - theta is completely n-positive. Whether theta is
/// itself completely n-positive is not checked.
inline PositivityCertificate order_certificate(const CPnMap& theta, const CPnMap& rho, double tol) {
  if (theta.order() != rho.order() || !(theta.domain() == rho.domain()) ||
      theta.codomain_dim() != rho.codomain_dim()) {
    throw ValidationError("order_leq: shape mismatch");
  }
  return complete_positivity_certificate(rho - theta, tol);
}

inline bool order_leq(const CPnMap& theta, const CPnMap& rho, double tol) {
  return order_certificate(theta, rho, tol).verdict;
}

/// Throws DominationError unless rho is completely n-positive.
inline PositivityCertificate require_cpn(const CPnMap& rho, double tol, const char* context) {
  PositivityCertificate cert = complete_positivity_certificate(rho, tol);
  if (!cert.verdict) {
    std::ostringstream os;
    os << context << ": map is not completely n-positive (min Choi eigenvalue " << cert.min_eig
       << (cert.hermitian ? "" : ", Hermitian symmetry violated") << ")";
    throw DominationError(os.str(), cert.min_eig);
  }
  return cert;
}

// Common maps used by tests, samples and the CLI.

/// The identity map on a single-block algebra M_d (codomain C^d).
inline LinearMap identity_map(Index d) {
  const CStarAlgebra a = make_algebra({d});
  std::vector<Matrix> images;
  for (const auto& u : matrix_unit_labels(a)) {
    Matrix img = Matrix::Zero(d, d);
    img(u.row, u.col) = 1.0;
    images.push_back(img);
  }
  return LinearMap::from_unit_images(a, d, images);
}

/// a |-> tr(a) I / d on M_d.
inline LinearMap depolarizing_map(Index d) {
  const CStarAlgebra a = make_algebra({d});
  std::vector<Matrix> images;
  for (const auto& u : matrix_unit_labels(a)) {
    images.push_back(u.row == u.col ? Matrix(Matrix::Identity(d, d) / static_cast<double>(d))
                                    : Matrix(Matrix::Zero(d, d)));
  }
  return LinearMap::from_unit_images(a, d, images);
}

/// On a multi-block algebra with every block of size m: (+)_k a_k |-> a_block.
inline LinearMap block_compression(const CStarAlgebra& algebra, Index block) {
  const Index m = algebra.block_dim(block);
  std::vector<Matrix> images;
  for (const auto& u : matrix_unit_labels(algebra)) {
    Matrix img = Matrix::Zero(m, m);
    if (u.block == block) img(u.row, u.col) = 1.0;
    images.push_back(img);
  }
  return LinearMap::from_unit_images(algebra, m, images);
}

/// [rho_ij] with rho_ii = diagonal[i] and zero off-diagonal entries.
inline CPnMap diagonal_map(const std::vector<LinearMap>& diagonal) {
  const Index n = static_cast<Index>(diagonal.size());
  if (n == 0) throw ValidationError("diagonal_map: no entries");
  std::vector<LinearMap> e;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      e.push_back(i == j ? diagonal[static_cast<std::size_t>(i)]
                         : LinearMap::zero(diagonal[0].domain(), diagonal[0].codomain_dim()));
    }
  }
  return CPnMap(n, std::move(e));
}

/// [rho_ij] with every entry equal to `map`.
inline CPnMap constant_map(const LinearMap& map, Index n) {
  return CPnMap(n, std::vector<LinearMap>(static_cast<std::size_t>(n * n), map));
}

}  // namespace cpn

#endif  // CPNKIT_CPNMAPS_HPP
