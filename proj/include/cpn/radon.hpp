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

// Radon-Nikodym correspondence between maps dominated by rho and positive
// contractions in the commutant of its dilation:
//   T in Phi(A)', 0 <= T <= I   <->   theta = rho_T,
//   (rho_T)_ij(a) = V_i* T Phi(a) V_j.
// The inverse direction goes through the contraction W: H_rho -> H_theta
// with W Phi_rho(a) V_{rho,i} xi = Phi_theta(a) V_{theta,i} xi, and T = W* W.

#ifndef CPNKIT_RADON_HPP
#define CPNKIT_RADON_HPP

#include <sstream>

#include "cpn/commutant.hpp"

namespace cpn {

/// rho_T without membership checks. T must be space_dim x space_dim.
inline CPnMap compress_unchecked(const StinespringDilation& d, const Matrix& t) {
  const Index n = d.order();
  const Index nm = n * d.codomain_dim();
  const Matrix v = stacked_isometry(d);
  const Matrix vt = v.adjoint() * t;
  std::vector<Matrix> images;
  images.reserve(d.rep.images().size());
  for (const auto& img : d.rep.images()) images.push_back(vt * img * v);
  return unflatten(LinearMap::from_unit_images(d.rep.algebra(), nm, images), n);
}

/// Throws ValidationError unless T is a positive element of Phi(A)'.
inline void require_positive_commutant(const StinespringDilation& d, const Matrix& t, const Tolerance& tol,
                                       const char* context) {
  const Index dim = d.space_dim();
  if (t.rows() != dim || t.cols() != dim) {
    std::ostringstream os;
    os << context << ": operator must be " << dim << "x" << dim;
    throw ValidationError(os.str());
  }
  const double nt = op_norm(t);
  const double comm = commutator_residual(d.rep, t);
  if (comm > certificate_bound(tol.value, nt)) {
    std::ostringstream os;
    os << context << ": operator is not in the commutant (residual " << comm << ")";
    throw ValidationError(os.str());
  }
  if (hermiticity_residual(t) > cutoff(tol.value, nt) || min_eigenvalue(t) < -cutoff(tol.value, nt)) {
    std::ostringstream os;
    os << context << ": operator is not positive semidefinite";
    throw ValidationError(os.str());
  }
}

/// rho_T for a positive T in the commutant of the dilation.
inline CPnMap compress(const StinespringDilation& d, const Matrix& t, const Tolerance& tol = {}) {
  require_positive_commutant(d, t, tol, "compress");
  return compress_unchecked(d, t);
}

struct Intertwiner {
  Matrix w;                            // H_rho -> H_theta
  double norm = 0.0;                   // spectral norm
  double isometry_residual = 0.0;      // max_i ||W V_{rho,i} - V_{theta,i}||_F
  double intertwining_residual = 0.0;  // max_e ||W Phi_rho(e) - Phi_theta(e) W||_F
  PositivityCertificate domination;    // Choi certificate of rho - theta
};

/// W for theta <= rho, given both dilations. Throws DominationError when
/// theta is not dominated and CertificationError when W fails its checks.
inline Intertwiner intertwiner(const StinespringDilation& rho_d, const StinespringDilation& theta_d,
                               const Tolerance& tol = {}) {
  Intertwiner out;
  out.domination = order_certificate(theta_d.source, rho_d.source, tol.value);
  if (!out.domination.verdict) {
    std::ostringstream os;
    os << "intertwiner: theta is not dominated by rho (min Choi eigenvalue of rho - theta "
       << out.domination.min_eig << ")";
    throw DominationError(os.str(), out.domination.min_eig);
  }
  const Matrix gr = generator_matrix(rho_d);
  const Matrix gt = generator_matrix(theta_d);
  out.w = solve_right(gr, gt, tol.rank);
  out.norm = op_norm(out.w);
  for (std::size_t i = 0; i < rho_d.isometries.size(); ++i) {
    out.isometry_residual =
        std::max(out.isometry_residual, distance(out.w * rho_d.isometries[i], theta_d.isometries[i]));
  }
  out.intertwining_residual = intertwining_residual(rho_d.rep, theta_d.rep, out.w);
  const double scale = op_norm(gr);
  const double bound = certificate_bound(tol.value, scale);
  if (out.norm > 1.0 + certificate_bound(tol.value, 0.0) || out.isometry_residual > bound ||
      out.intertwining_residual > bound) {
    throw CertificationError("intertwiner: W failed its certificate",
                             std::max({out.norm - 1.0, out.isometry_residual, out.intertwining_residual}));
  }
  return out;
}

inline Intertwiner intertwiner(const CPnMap& rho, const CPnMap& theta, const Tolerance& tol = {}) {
  const PositivityCertificate dom = order_certificate(theta, rho, tol.value);
  if (!dom.verdict) {
    std::ostringstream os;
    os << "intertwiner: theta is not dominated by rho (min Choi eigenvalue of rho - theta " << dom.min_eig << ")";
    throw DominationError(os.str(), dom.min_eig);
  }
  return intertwiner(dilate(rho, tol), dilate(theta, tol), tol);
}

struct RadonNikodym {
  Matrix t;                      // W* W, in [0, I] of Phi_rho(A)'
  double commutes = 0.0;         // max_e ||T Phi(e) - Phi(e) T||_F
  double spectrum_lo = 0.0;
  double spectrum_hi = 0.0;
  double reconstruction = 0.0;   // distance(rho_T, theta)
  Intertwiner w;
};

/// The Radon-Nikodym operator of theta with respect to the dilation of rho.
inline RadonNikodym rn_operator(const StinespringDilation& rho_d, const CPnMap& theta, const Tolerance& tol = {}) {
  const PositivityCertificate dom = order_certificate(theta, rho_d.source, tol.value);
  if (!dom.verdict) {
    std::ostringstream os;
    os << "rn_operator: theta is not dominated by rho (min Choi eigenvalue of rho - theta " << dom.min_eig << ")";
    throw DominationError(os.str(), dom.min_eig);
  }
  RadonNikodym out;
  out.w = intertwiner(rho_d, dilate(theta, tol), tol);
  out.t = out.w.w.adjoint() * out.w.w;
  out.commutes = commutator_residual(rho_d.rep, out.t);
  if (out.t.rows() > 0) {
    const HermitianSpectrum sp = hermitian_spectrum(out.t);
    out.spectrum_lo = sp.values(0);
    out.spectrum_hi = sp.values(sp.values.size() - 1);
  }
  out.reconstruction = distance(compress_unchecked(rho_d, out.t), theta);
  const double slack = certificate_bound(tol.value, 0.0);
  if (out.spectrum_lo < -slack || out.spectrum_hi > 1.0 + slack || out.commutes > certificate_bound(tol.value, 1.0) ||
      out.reconstruction > certificate_bound(tol.value, map_scale(rho_d.source))) {
    throw CertificationError("rn_operator: T failed its certificate",
                             std::max({out.commutes, out.reconstruction, out.spectrum_hi - 1.0, -out.spectrum_lo}));
  }
  return out;
}

inline RadonNikodym rn_operator(const CPnMap& rho, const CPnMap& theta, const Tolerance& tol = {}) {
  const PositivityCertificate dom = order_certificate(theta, rho, tol.value);
  if (!dom.verdict) {
    std::ostringstream os;
    os << "rn_operator: theta is not dominated by rho (min Choi eigenvalue of rho - theta " << dom.min_eig << ")";
    throw DominationError(os.str(), dom.min_eig);
  }
  return rn_operator(dilate(rho, tol), theta, tol);
}

/// Random element of [0, I] in the commutant: a random Hermitian combination
/// of the basis with its spectrum rescaled affinely onto [0, 1].
inline Matrix sample_unit_interval(const CommutantBasis& basis, Index space_dim, Rng& rng) {
  if (space_dim == 0) return Matrix(0, 0);
  Vector c(basis.dimension());
  std::normal_distribution<double> g(0.0, 1.0);
  for (Index j = 0; j < c.size(); ++j) {
    const double re = g(rng);
    const double im = g(rng);
    c(j) = cplx(re, im);
  }
  const Matrix h = hermitian_part(combine(basis.basis, c, space_dim, space_dim));
  const HermitianSpectrum sp = hermitian_spectrum(h);
  const double lo = sp.values(0);
  const double hi = sp.values(sp.values.size() - 1);
  const Matrix id = Matrix::Identity(space_dim, space_dim);
  if (hi - lo <= 1e-12 * (1.0 + std::abs(hi))) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) * id;
  }
  return (h - lo * id) / (hi - lo);
}

struct OrderEquivalence {
  bool operator_leq = false;  // T1 <= T2
  bool map_leq = false;       // rho_{T1} <= rho_{T2}
  bool agree() const { return operator_leq == map_leq; }
};

inline OrderEquivalence order_equivalence_check(const StinespringDilation& d, const Matrix& t1, const Matrix& t2,
                                                const Tolerance& tol = {}) {
  require_positive_commutant(d, t1, tol, "order_equivalence_check");
  require_positive_commutant(d, t2, tol, "order_equivalence_check");
  OrderEquivalence out;
  out.operator_leq = is_psd(t2 - t1, tol.value);
  out.map_leq = order_leq(compress_unchecked(d, t1), compress_unchecked(d, t2), tol.value);
  return out;
}

}  // namespace cpn

#endif  // CPNKIT_RADON_HPP
