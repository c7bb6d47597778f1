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

// Representations of finite-dimensional C*-algebras and minimal Stinespring
// dilations (Phi, H, V_1, ..., V_n) of completely n-positive maps, with
//   rho_ij(a) = V_i* Phi(a) V_j
// and {Phi(a) V_i xi} spanning H.
//
// The construction diagonalises each Choi block of flatten(rho). An
// eigenpair (lambda_s, w_s) of block k gives a Kraus factor K_s with
// K_s[p, c] = sqrt(lambda_s) w_s[p*(n m) + c]; the representation is
// (+)_k a_k (x) I_{r_k} on (+)_k C^{d_k} (x) C^{r_k} (row index x*r_k + s
// inside block k) and V[(x, s), c] = conj(K_s[x, c]).

#ifndef CPNKIT_STINESPRING_HPP
#define CPNKIT_STINESPRING_HPP

#include <cmath>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "cpn/cpnmaps.hpp"

namespace cpn {

class Representation {
 public:
  /// `images` holds Phi(e) for every matrix unit e, in coordinate order.
  Representation(CStarAlgebra algebra, Index space_dim, std::vector<Matrix> images,
                 std::optional<std::vector<Index>> multiplicities = std::nullopt)
      : algebra_(std::move(algebra)),
        space_dim_(space_dim),
        images_(std::move(images)),
        multiplicities_(std::move(multiplicities)) {
    if (space_dim_ < 0) throw ValidationError("representation: negative space dimension");
    if (static_cast<Index>(images_.size()) != algebra_.dimension()) {
      throw ValidationError("representation: one image per matrix unit is required");
    }
    for (const auto& img : images_) {
      if (img.rows() != space_dim_ || img.cols() != space_dim_) {
        throw ValidationError("representation: image has the wrong shape");
      }
    }
    if (multiplicities_ && static_cast<Index>(multiplicities_->size()) != algebra_.num_blocks()) {
      throw ValidationError("representation: one multiplicity per algebra block is required");
    }
  }

  /// (+)_k a_k (x) I_{r_k}.
  static Representation canonical(const CStarAlgebra& algebra, std::vector<Index> multiplicities) {
    Index dim = 0;
    std::vector<Index> offsets;
    for (Index k = 0; k < algebra.num_blocks(); ++k) {
      offsets.push_back(dim);
      dim += algebra.block_dim(k) * multiplicities[static_cast<std::size_t>(k)];
    }
    std::vector<Matrix> images;
    for (const auto& u : matrix_unit_labels(algebra)) {
      Matrix img = Matrix::Zero(dim, dim);
      const Index r = multiplicities[static_cast<std::size_t>(u.block)];
      const Index off = offsets[static_cast<std::size_t>(u.block)];
      for (Index s = 0; s < r; ++s) img(off + u.row * r + s, off + u.col * r + s) = 1.0;
      images.push_back(std::move(img));
    }
    return Representation(algebra, dim, std::move(images), std::move(multiplicities));
  }

  const CStarAlgebra& algebra() const noexcept { return algebra_; }
  Index space_dim() const noexcept { return space_dim_; }
  const std::vector<Matrix>& images() const noexcept { return images_; }
  const Matrix& image(Index unit) const { return images_[static_cast<std::size_t>(unit)]; }
  const std::optional<std::vector<Index>>& multiplicities() const noexcept { return multiplicities_; }

  Matrix operator()(const AlgebraElement& a) const {
    if (!(a.algebra() == algebra_)) throw ValidationError("representation: element from another algebra");
    const Vector c = a.coordinates();
    Matrix out = Matrix::Zero(space_dim_, space_dim_);
    for (Index x = 0; x < c.size(); ++x) {
      if (c(x) != cplx(0.0)) out += c(x) * images_[static_cast<std::size_t>(x)];
    }
    return out;
  }

 private:
  CStarAlgebra algebra_;
  Index space_dim_;
  std::vector<Matrix> images_;
  std::optional<std::vector<Index>> multiplicities_;
};

/// Phi_1 (+) Phi_2 on H_1 (+) H_2.
inline Representation direct_sum(const Representation& a, const Representation& b) {
  if (!(a.algebra() == b.algebra())) throw ValidationError("direct_sum: algebra mismatch");
  const Index n1 = a.space_dim();
  const Index n = n1 + b.space_dim();
  std::vector<Matrix> images;
  for (std::size_t x = 0; x < a.images().size(); ++x) {
    Matrix img = Matrix::Zero(n, n);
    img.topLeftCorner(n1, n1) = a.images()[x];
    img.bottomRightCorner(b.space_dim(), b.space_dim()) = b.images()[x];
    images.push_back(std::move(img));
  }
  return Representation(a.algebra(), n, std::move(images));
}

struct RepresentationResiduals {
  double multiplicative = 0.0;  // max ||Phi(e f) - Phi(e) Phi(f)||
  double star = 0.0;            // max ||Phi(e*) - Phi(e)*||
  double unital = 0.0;          // ||Phi(1) - I||
};

inline RepresentationResiduals representation_residuals(const Representation& rep) {
  RepresentationResiduals res;
  const CStarAlgebra& a = rep.algebra();
  const auto units = matrix_unit_labels(a);
  for (const auto& e : units) {
    const Index ie = a.coordinate(e.block, e.row, e.col);
    const Index it = a.coordinate(e.block, e.col, e.row);
    res.star = std::max(res.star, distance(rep.image(it), rep.image(ie).adjoint()));
    for (const auto& f : units) {
      const Index jf = a.coordinate(f.block, f.row, f.col);
      Matrix expected = Matrix::Zero(rep.space_dim(), rep.space_dim());
      if (e.block == f.block && e.col == f.row) expected = rep.image(a.coordinate(e.block, e.row, f.col));
      res.multiplicative = std::max(res.multiplicative, distance(rep.image(ie) * rep.image(jf), expected));
    }
  }
  res.unital = distance(rep(a.unit()), Matrix::Identity(rep.space_dim(), rep.space_dim()));
  return res;
}

/// max over matrix units of ||X Phi_from(e) - Phi_to(e) X||_F.
inline double intertwining_residual(const Representation& from, const Representation& to, const Matrix& x) {
  double r = 0.0;
  for (std::size_t u = 0; u < from.images().size(); ++u) {
    r = std::max(r, distance(x * from.images()[u], to.images()[u] * x));
  }
  return r;
}

inline double commutator_residual(const Representation& rep, const Matrix& x) {
  return intertwining_residual(rep, rep, x);
}

struct StinespringDilation {
  Representation rep;
  std::vector<Matrix> isometries;  // V_1, ..., V_n, each space_dim x m
  CPnMap source;

  Index order() const { return static_cast<Index>(isometries.size()); }
  Index space_dim() const { return rep.space_dim(); }
  Index codomain_dim() const { return source.codomain_dim(); }
};

/// [V_1 ... V_n], a space_dim x (n m) matrix.
inline Matrix stacked_isometry(const StinespringDilation& d) {
  const Index m = d.codomain_dim();
  Matrix v(d.space_dim(), d.order() * m);
  for (Index i = 0; i < d.order(); ++i) v.middleCols(i * m, m) = d.isometries[static_cast<std::size_t>(i)];
  return v;
}

/// [Phi(e_1) v, ..., Phi(e_D) v]: the spanning family generated by the columns of v.
inline Matrix generator_matrix(const Representation& rep, const Matrix& v) {
  const Index c = v.cols();
  Matrix g(rep.space_dim(), c * static_cast<Index>(rep.images().size()));
  for (std::size_t u = 0; u < rep.images().size(); ++u) {
    g.middleCols(static_cast<Index>(u) * c, c) = rep.images()[u] * v;
  }
  return g;
}

inline Matrix generator_matrix(const StinespringDilation& d) {
  return generator_matrix(d.rep, stacked_isometry(d));
}

/// Canonical minimal dilation. Throws DominationError when rho is not
/// completely n-positive; the zero map yields a zero-dimensional dilation.
inline StinespringDilation dilate(const CPnMap& rho, const Tolerance& tol = {}) {
  require_cpn(rho, tol.value, "dilate");
  const CStarAlgebra& alg = rho.domain();
  const Index n = rho.order();
  const Index m = rho.codomain_dim();
  const Index nm = n * m;
  const LinearMap flat = flatten(rho);

  std::vector<Index> mult;
  std::vector<HermitianSpectrum> spectra;
  std::vector<std::vector<Index>> kept;
  Index dim = 0;
  for (Index k = 0; k < alg.num_blocks(); ++k) {
    HermitianSpectrum sp = hermitian_spectrum(flat.choi_block(k));
    const double scale = sp.values.size() ? std::max(std::abs(sp.values(0)), std::abs(sp.values(sp.values.size() - 1))) : 0.0;
    std::vector<Index> keep;
    // Largest eigenvalues first so slot 0 carries the dominant Kraus factor.
    for (Index s = sp.values.size() - 1; s >= 0; --s) {
      if (sp.values(s) > cutoff(tol.rank, scale)) keep.push_back(s);
    }
    mult.push_back(static_cast<Index>(keep.size()));
    dim += alg.block_dim(k) * static_cast<Index>(keep.size());
    spectra.push_back(std::move(sp));
    kept.push_back(std::move(keep));
  }

  Representation rep = Representation::canonical(alg, mult);
  Matrix v = Matrix::Zero(dim, nm);
  Index off = 0;
  for (Index k = 0; k < alg.num_blocks(); ++k) {
    const Index d = alg.block_dim(k);
    const Index r = mult[static_cast<std::size_t>(k)];
    const HermitianSpectrum& sp = spectra[static_cast<std::size_t>(k)];
    for (Index s = 0; s < r; ++s) {
      const Index col = kept[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)];
      const double root = std::sqrt(sp.values(col));
      for (Index x = 0; x < d; ++x) {
        for (Index c = 0; c < nm; ++c) v(off + x * r + s, c) = std::conj(root * sp.vectors(x * nm + c, col));
      }
    }
    off += d * r;
  }

  std::vector<Matrix> isometries;
  for (Index i = 0; i < n; ++i) isometries.push_back(v.middleCols(i * m, m));
  return StinespringDilation{std::move(rep), std::move(isometries), rho};
}

struct DilationReport {
  double factor_residual = 0.0;  // max ||rho_ij(e) - V_i* Phi(e) V_j||_F
  Index span_dim = 0;
  Index space_dim = 0;
  bool minimal = false;
};

inline DilationReport verify_dilation(const CPnMap& rho, const StinespringDilation& d, const Tolerance& tol = {}) {
  const Index n = rho.order();
  const Index m = rho.codomain_dim();
  if (d.order() != n || !(d.rep.algebra() == rho.domain())) {
    throw ValidationError("verify_dilation: dilation does not match the map's shape");
  }
  for (const auto& v : d.isometries) {
    if (v.rows() != d.space_dim() || v.cols() != m) throw ValidationError("verify_dilation: isometry shape");
  }
  DilationReport rep;
  rep.space_dim = d.space_dim();
  const Matrix v = stacked_isometry(d);
  const Matrix vh = v.adjoint();
  const auto units = matrix_unit_labels(rho.domain());
  for (std::size_t x = 0; x < units.size(); ++x) {
    const Matrix f = vh * d.rep.images()[x] * v;
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        rep.factor_residual = std::max(
            rep.factor_residual, (rho(i, j).unit_image(units[x]) - f.block(i * m, j * m, m, m)).norm());
      }
    }
  }
  rep.span_dim = numerical_rank(generator_matrix(d.rep, v), tol.rank);
  rep.minimal = rep.span_dim == rep.space_dim;
  return rep;
}

struct UnitaryEquivalence {
  Matrix unitary;                    // U Phi_1(e) = Phi_2(e) U,  U V_{1,i} = V_{2,i}
  double unitarity_residual = 0.0;   // ||U* U - I||_F
  double intertwining_residual = 0.0;
  double isometry_residual = 0.0;    // max_i ||U V_{1,i} - V_{2,i}||_F

  double residual() const { return std::max({unitarity_residual, intertwining_residual, isometry_residual}); }
};

/// Unitary between two minimal dilations of the same map, obtained by sending
/// the spanning vectors Phi_1(e) V_{1,i} xi to Phi_2(e) V_{2,i} xi.
/// Returns nullopt when the space dimensions differ.
inline std::optional<UnitaryEquivalence> unitary_equivalence(const StinespringDilation& d1,
                                                             const StinespringDilation& d2,
                                                             const Tolerance& tol = {}) {
  if (d1.space_dim() != d2.space_dim()) return std::nullopt;
  if (!(d1.rep.algebra() == d2.rep.algebra()) || d1.order() != d2.order() ||
      d1.codomain_dim() != d2.codomain_dim()) {
    throw ValidationError("unitary_equivalence: dilations have different shapes");
  }
  const Index dim = d1.space_dim();
  const Matrix g1 = generator_matrix(d1);
  const Matrix g2 = generator_matrix(d2);
  if (numerical_rank(g1, tol.rank) != dim || numerical_rank(g2, tol.rank) != dim) {
    throw ValidationError("unitary_equivalence: dilation is not minimal");
  }
  const double scale = std::max(op_norm(g1), op_norm(g2));
  const double gram_gap = distance(g1.adjoint() * g1, g2.adjoint() * g2);
  if (gram_gap > certificate_bound(tol.value, scale * scale)) {
    std::ostringstream os;
    os << "unitary_equivalence: dilations do not dilate a common map (Gram gap " << gram_gap << ")";
    throw ValidationError(os.str());
  }

  UnitaryEquivalence out;
  out.unitary = solve_right(g1, g2, tol.rank);
  const Matrix& u = out.unitary;
  out.unitarity_residual = distance(u.adjoint() * u, Matrix::Identity(dim, dim));
  out.intertwining_residual = intertwining_residual(d1.rep, d2.rep, u);
  for (std::size_t i = 0; i < d1.isometries.size(); ++i) {
    out.isometry_residual = std::max(out.isometry_residual, distance(u * d1.isometries[i], d2.isometries[i]));
  }
  if (out.residual() > certificate_bound(tol.value, 1.0 + scale)) {
    throw CertificationError("unitary_equivalence: constructed unitary failed its certificate", out.residual());
  }
  return out;
}

struct ProjectionSet {
  std::vector<Matrix> projections;  // P_i onto span{Phi(e) V_i xi}
  std::vector<Index> dims;
  double idempotent_residual = 0.0;   // max ||P^2 - P||
  double self_adjoint_residual = 0.0; // max ||P - P*||
  double commutant_residual = 0.0;    // max ||P Phi(e) - Phi(e) P||
  double isometry_residual = 0.0;     // max ||P_i V_i - V_i||
};

inline ProjectionSet component_projections(const StinespringDilation& d, const Tolerance& tol = {}) {
  ProjectionSet out;
  for (const auto& v : d.isometries) {
    const Matrix q = range_basis(generator_matrix(d.rep, v), tol.rank);
    const Matrix p = q * q.adjoint();
    out.dims.push_back(q.cols());
    out.idempotent_residual = std::max(out.idempotent_residual, distance(p * p, p));
    out.self_adjoint_residual = std::max(out.self_adjoint_residual, hermiticity_residual(p));
    out.commutant_residual = std::max(out.commutant_residual, commutator_residual(d.rep, p));
    out.isometry_residual = std::max(out.isometry_residual, distance(p * v, v));
    out.projections.push_back(p);
  }
  return out;
}

/// Dilation of diag(rho_11, ..., rho_nn) assembled from dilations of the
/// diagonal entries: Phi = (+)_i Phi_i, V_i embeds into the i-th summand.
inline StinespringDilation direct_sum_dilation(const std::vector<StinespringDilation>& parts) {
  if (parts.empty()) throw ValidationError("direct_sum_dilation: no parts");
  Representation rep = parts[0].rep;
  for (std::size_t i = 1; i < parts.size(); ++i) rep = direct_sum(rep, parts[i].rep);
  const Index m = parts[0].codomain_dim();
  std::vector<Matrix> isometries;
  std::vector<LinearMap> diag;
  Index off = 0;
  for (const auto& part : parts) {
    if (part.order() != 1) throw ValidationError("direct_sum_dilation: parts must dilate n = 1 maps");
    Matrix v = Matrix::Zero(rep.space_dim(), m);
    v.middleRows(off, part.space_dim()) = part.isometries[0];
    isometries.push_back(std::move(v));
    diag.push_back(part.source(0, 0));
    off += part.space_dim();
  }
  return StinespringDilation{std::move(rep), std::move(isometries), diagonal_map(diag)};
}

struct DirectSumReport {
  Index space_dim = 0;
  std::vector<Index> component_dims;
  bool additive = false;
  std::optional<UnitaryEquivalence> equivalence;
};

/// For a diagonal completely n-positive map, compares its dilation with the
/// direct sum of the dilations of its diagonal entries.
inline DirectSumReport diagonal_direct_sum_check(const CPnMap& rho, const Tolerance& tol = {}) {
  const double scale = map_scale(rho);
  for (Index i = 0; i < rho.order(); ++i) {
    for (Index j = 0; j < rho.order(); ++j) {
      if (i != j && rho(i, j).choi_norm() > cutoff(tol.value, scale)) {
        std::ostringstream os;
        os << "diagonal_direct_sum_check: entry (" << i << "," << j << ") is nonzero";
        throw ValidationError(os.str());
      }
    }
  }
  const StinespringDilation whole = dilate(rho, tol);
  std::vector<StinespringDilation> parts;
  DirectSumReport out;
  out.space_dim = whole.space_dim();
  Index total = 0;
  for (Index i = 0; i < rho.order(); ++i) {
    parts.push_back(dilate(CPnMap(rho(i, i)), tol));
    out.component_dims.push_back(parts.back().space_dim());
    total += parts.back().space_dim();
  }
  out.additive = total == out.space_dim;
  out.equivalence = unitary_equivalence(whole, direct_sum_dilation(parts), tol);
  return out;
}

}  // namespace cpn

#endif  // CPNKIT_STINESPRING_HPP
