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

// Structural criteria for completely n-positive maps, all read off the
// minimal dilation:
//   - purity: the dilation representation is irreducible (commutant = C I);
//   - disjointness: no nonzero intertwiner between the two dilations, with
//     a constructive CP^2 extension when one exists;
//   - extremality in CP^n(A, L(H), I): T |-> P_0 T P_0 is injective on
//     Phi(A)', P_0 the projection onto span{V_i xi};
//   - maps rho_ij(a) = phi(u_i* a u_j) built from a pure unital phi and
//     unitaries u_i, which are pure.

#ifndef CPNKIT_STRUCTURE_HPP
#define CPNKIT_STRUCTURE_HPP

#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "cpn/commutant.hpp"
#include "cpn/radon.hpp"

namespace cpn {

struct PurityReport {
  bool pure = false;
  Index commutant_dim = 0;
  Index space_dim = 0;
  std::vector<Index> multiplicities;
  double commutation_residual = 0.0;
};

/// Throws DominationError (a ValidationError) when rho is not completely n-positive.
inline PurityReport purity_report(const CPnMap& rho, const Tolerance& tol = {}) {
  const StinespringDilation d = dilate(rho, tol);
  const CommutantBasis c = commutant(d.rep, tol);
  PurityReport out;
  out.commutant_dim = c.dimension();
  out.space_dim = d.space_dim();
  if (d.rep.multiplicities()) out.multiplicities = *d.rep.multiplicities();
  out.commutation_residual = c.commutation_residual;
  // The zero map has a zero-dimensional dilation, which is not irreducible.
  out.pure = out.commutant_dim == 1;
  return out;
}

inline bool is_pure(const CPnMap& rho, const Tolerance& tol = {}) { return purity_report(rho, tol).pure; }

struct DisjointnessReport {
  bool disjoint = false;
  Index intertwiner_dim = 0;
};

inline void require_same_shape(const CPnMap& a, const CPnMap& b, const char* context) {
  if (a.order() != 1 || b.order() != 1) {
    throw ValidationError(std::string(context) + ": both maps must have n = 1");
  }
  if (!(a.domain() == b.domain()) || a.codomain_dim() != b.codomain_dim()) {
    throw ValidationError(std::string(context) + ": maps must share domain and codomain");
  }
}

inline DisjointnessReport are_disjoint(const CPnMap& rho11, const CPnMap& rho22, const Tolerance& tol = {}) {
  require_same_shape(rho11, rho22, "are_disjoint");
  const StinespringDilation d1 = dilate(rho11, tol);
  const StinespringDilation d2 = dilate(rho22, tol);
  DisjointnessReport out;
  out.intertwiner_dim = intertwiner_space(d1.rep, d2.rep, tol).dimension();
  out.disjoint = out.intertwiner_dim == 0;
  return out;
}

struct ExtensionWitness {
  CPnMap map;                          // n = 2, diagonal entries rho11, rho22
  double off_diagonal_norm = 0.0;      // max over matrix units of ||rho_12(e)||_F
  PositivityCertificate certificate;   // completely 2-positive
};

/// A completely 2-positive [rho_ij] with the given diagonal and rho_12 != 0,
/// or nullopt when rho11 and rho22 are disjoint.
///
/// With Phi = Phi_11 (+) Phi_22, V_1 = V_11 (+) 0, V_2 = 0 (+) V_22 and the
/// partial isometry V from the polar decomposition of a nonzero intertwiner,
///   rho_12(a) = V_1* Phi(a) V* V_2,   rho_21(a) = rho_12(a*)*.
inline std::optional<ExtensionWitness> extension_witness(const CPnMap& rho11, const CPnMap& rho22,
                                                         const Tolerance& tol = {}) {
  require_same_shape(rho11, rho22, "extension_witness");
  const StinespringDilation d1 = dilate(rho11, tol);
  const StinespringDilation d2 = dilate(rho22, tol);
  const IntertwinerSpace space = intertwiner_space(d1.rep, d2.rep, tol);
  if (space.dimension() == 0) return std::nullopt;

  // Polar part of X: H_11 -> H_22, keeping singular directions above cutoff.
  const Matrix& x = space.basis.front();
  Svd svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const Index r = static_cast<Index>((s.array() > cutoff(tol.rank, s(0))).count());
  const Matrix partial = svd.matrixU().leftCols(r) * svd.matrixV().leftCols(r).adjoint();

  const Representation phi = direct_sum(d1.rep, d2.rep);
  const Index n1 = d1.space_dim();
  const Index n2 = d2.space_dim();
  const Index m = rho11.codomain_dim();
  Matrix v = Matrix::Zero(n1 + n2, n1 + n2);
  v.bottomLeftCorner(n2, n1) = partial;
  Matrix v1 = Matrix::Zero(n1 + n2, m);
  v1.topRows(n1) = d1.isometries[0];
  Matrix v2 = Matrix::Zero(n1 + n2, m);
  v2.bottomRows(n2) = d2.isometries[0];

  const Matrix left = v1.adjoint();
  const Matrix right = v.adjoint() * v2;
  std::vector<Matrix> images12;
  for (const auto& img : phi.images()) images12.push_back(left * img * right);
  const CStarAlgebra& alg = rho11.domain();
  std::vector<Matrix> images21;
  for (const auto& u : matrix_unit_labels(alg)) {
    images21.push_back(images12[static_cast<std::size_t>(alg.coordinate(u.block, u.col, u.row))].adjoint());
  }

  ExtensionWitness out{CPnMap(2, {rho11(0, 0), LinearMap::from_unit_images(alg, m, images12),
                                  LinearMap::from_unit_images(alg, m, images21), rho22(0, 0)}),
                       0.0, {}};
  for (const auto& img : images12) out.off_diagonal_norm = std::max(out.off_diagonal_norm, img.norm());
  out.certificate = complete_positivity_certificate(out.map, tol.value);
  const double scale = std::max(map_scale(rho11), map_scale(rho22));
  if (!out.certificate.verdict || out.off_diagonal_norm <= cutoff(tol.value, scale)) {
    throw CertificationError("extension_witness: constructed map failed its certificate", out.certificate.min_eig);
  }
  return out;
}

/// Entries (i, j), i <= j, violating rho_ii(1) = I or rho_ij(1) = 0.
inline std::vector<std::pair<Index, Index>> unital_membership_violations(const CPnMap& rho, double tol) {
  std::vector<std::pair<Index, Index>> bad;
  const AlgebraElement one = rho.domain().unit();
  const Index m = rho.codomain_dim();
  const double scale = map_scale(rho);
  for (Index i = 0; i < rho.order(); ++i) {
    for (Index j = i; j < rho.order(); ++j) {
      const Matrix target = i == j ? Matrix(Matrix::Identity(m, m)) : Matrix(Matrix::Zero(m, m));
      if (distance(rho(i, j)(one), target) > cutoff(tol, scale)) bad.emplace_back(i, j);
    }
  }
  return bad;
}

inline void require_unital_membership(const CPnMap& rho, double tol, const char* context) {
  const auto bad = unital_membership_violations(rho, tol);
  if (bad.empty()) return;
  std::ostringstream os;
  os << context << ": map is not in CP^n(A, L(H), I); failing entries";
  for (const auto& [i, j] : bad) os << " (" << i << "," << j << ")";
  throw ValidationError(os.str());
}

struct ExtremalityReport {
  bool extreme = false;
  Index compression_rank = 0;
  Index commutant_dim = 0;
  Index h0_dim = 0;  // dim span{V_i xi}
};

namespace detail {

struct CompressionData {
  StinespringDilation dilation;
  CommutantBasis commutant;
  Matrix stack;  // column k = vec(Q* T_k Q), Q an orthonormal basis of H_0
};

inline CompressionData compression_data(const CPnMap& rho, const Tolerance& tol) {
  require_cpn(rho, tol.value, "is_extreme");
  require_unital_membership(rho, tol.value, "is_extreme");
  StinespringDilation d = dilate(rho, tol);
  CommutantBasis c = commutant(d.rep, tol);
  const Matrix q = range_basis(stacked_isometry(d), tol.rank);
  const Index h = q.cols();
  Matrix stack(h * h, c.dimension());
  for (Index k = 0; k < c.dimension(); ++k) {
    const Matrix qtq = q.adjoint() * c.basis[static_cast<std::size_t>(k)] * q;
    stack.col(k) = Eigen::Map<const Vector>(qtq.data(), h * h);
  }
  return {std::move(d), std::move(c), std::move(stack)};
}

}  // namespace detail

/// Extremality in CP^n(A, L(H), I). Throws ValidationError listing the
/// failing (i, j) when rho is not in that set.
inline ExtremalityReport is_extreme(const CPnMap& rho, const Tolerance& tol = {}) {
  const detail::CompressionData data = detail::compression_data(rho, tol);
  ExtremalityReport out;
  out.commutant_dim = data.commutant.dimension();
  out.h0_dim = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(data.stack.rows()))));
  out.compression_rank = numerical_rank(data.stack, tol.rank);
  out.extreme = out.compression_rank == out.commutant_dim;
  return out;
}

struct ConvexDecomposition {
  double weight = 0.5;      // rho = weight * first + (1 - weight) * second
  CPnMap first;
  CPnMap second;
  Matrix kernel_element;    // Hermitian T in Phi(A)' with P_0 T P_0 = 0
};

/// For a non-extreme rho, the decomposition rho = b rho_{T1} + (1-b) rho_{T2}
/// with T1 = (a/b) T + I, T2 = I - (a/(1-b)) T built from a Hermitian T in
/// the kernel of the compression, a = 1/(4||T||), b = 1/2.
/// Returns nullopt when rho is extreme.
inline std::optional<ConvexDecomposition> extreme_decomposition(const CPnMap& rho, const Tolerance& tol = {}) {
  const detail::CompressionData data = detail::compression_data(rho, tol);
  const Matrix kernel = null_space(data.stack, tol.rank);
  if (kernel.cols() == 0) return std::nullopt;
  const Index dim = data.dilation.space_dim();
  const Matrix t = combine(data.commutant.basis, kernel.col(0), dim, dim);
  Matrix h = hermitian_part(t);
  if (h.norm() < 0.25 * t.norm()) h = (t - t.adjoint()) / cplx(0.0, 2.0);
  const double alpha = 1.0 / (4.0 * op_norm(h));
  const double beta = 0.5;
  const Matrix id = Matrix::Identity(dim, dim);
  const Matrix t1 = (alpha / beta) * h + id;
  const Matrix t2 = id - (alpha / (1.0 - beta)) * h;
  return ConvexDecomposition{beta, compress_unchecked(data.dilation, t1), compress_unchecked(data.dilation, t2), h};
}

struct ExtremeFamilySpec {
  CPnMap base;                            // pure unital completely positive phi (n = 1)
  std::vector<AlgebraElement> unitaries;  // u_1 = 1, u_2, ..., u_n
};

inline void validate(const ExtremeFamilySpec& spec, const Tolerance& tol) {
  if (spec.base.order() != 1) throw ValidationError("extreme family: base map must have n = 1");
  if (spec.unitaries.empty()) throw ValidationError("extreme family: at least one unitary is required");
  const CStarAlgebra& alg = spec.base.domain();
  const Index m = spec.base.codomain_dim();
  for (std::size_t i = 0; i < spec.unitaries.size(); ++i) {
    const AlgebraElement& u = spec.unitaries[i];
    if (!(u.algebra() == alg)) throw ValidationError("extreme family: unitary from another algebra");
    if (!is_unitary(u, tol.value)) {
      std::ostringstream os;
      os << "extreme family: u_" << i + 1 << " is not unitary";
      throw ValidationError(os.str());
    }
  }
  if (!approx_equal(spec.unitaries[0], alg.unit(), tol.value)) {
    throw ValidationError("extreme family: u_1 must be the unit");
  }
  if (distance(spec.base(0, 0)(alg.unit()), Matrix::Identity(m, m)) > cutoff(tol.value, map_scale(spec.base))) {
    throw ValidationError("extreme family: base map is not unital");
  }
  if (!is_pure(spec.base, tol)) throw ValidationError("extreme family: base map is not pure");
}

/// rho_ij(a) = V* Phi(u_i)* Phi(a) Phi(u_j) V from the minimal dilation of the
/// base map. The output is certified completely n-positive and pure, with
/// unital pure diagonal entries and rho_ij(u_i u_j*) = I.
inline CPnMap build_extreme_family(const ExtremeFamilySpec& spec, const Tolerance& tol = {}) {
  validate(spec, tol);
  const StinespringDilation d = dilate(spec.base, tol);
  const Index n = static_cast<Index>(spec.unitaries.size());
  const Index m = spec.base.codomain_dim();
  Matrix w(d.space_dim(), n * m);
  for (Index i = 0; i < n; ++i) w.middleCols(i * m, m) = d.rep(spec.unitaries[static_cast<std::size_t>(i)]) * d.isometries[0];
  std::vector<Matrix> images;
  for (const auto& img : d.rep.images()) images.push_back(w.adjoint() * img * w);
  CPnMap rho = unflatten(LinearMap::from_unit_images(spec.base.domain(), n * m, images), n);

  const double bound = certificate_bound(tol.value, map_scale(rho));
  const AlgebraElement one = rho.domain().unit();
  double worst = 0.0;
  bool ok = is_completely_n_positive(rho, tol.value);
  for (Index i = 0; i < n && ok; ++i) {
    const auto& ui = spec.unitaries[static_cast<std::size_t>(i)];
    worst = std::max(worst, distance(rho(i, i)(one), Matrix::Identity(m, m)));
    ok = ok && is_pure(CPnMap(rho(i, i)), tol);
    for (Index j = 0; j < n; ++j) {
      const auto& uj = spec.unitaries[static_cast<std::size_t>(j)];
      worst = std::max(worst, distance(rho(i, j)(ui * uj.adjoint()), Matrix::Identity(m, m)));
    }
  }
  ok = ok && worst <= bound && is_pure(rho, tol);
  if (!ok) throw CertificationError("build_extreme_family: output failed its certificate", worst);
  return rho;
}

}  // namespace cpn

#endif  // CPNKIT_STRUCTURE_HPP
