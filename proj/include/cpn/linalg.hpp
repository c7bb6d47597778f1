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

// Dense complex linear algebra shared by every module: spectral norms,
// Hermitian spectra, numerical rank, ranges, null spaces and least squares.
// All cutoffs are relative: a singular value or eigenvalue counts as nonzero
// when it exceeds tol * (1 + scale), where scale is the largest one.

#ifndef CPNKIT_LINALG_HPP
#define CPNKIT_LINALG_HPP

#include <algorithm>
#include <complex>

#include <Eigen/Dense>

namespace cpn {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Tolerances used throughout the library.
///
/// `value` governs positivity tests and residual checks, `rank` governs
/// eigenvalue and singular-value cutoffs (numerical rank decisions). Most
/// callers pass a plain double, which sets both.
struct Tolerance {
  double value = 1e-9;
  double rank = 1e-9;

  Tolerance() = default;
  Tolerance(double t) : value(t), rank(t) {}  // NOLINT(google-explicit-constructor)
  Tolerance(double t, double r) : value(t), rank(r) {}
};

inline double cutoff(double tol, double scale) { return tol * (1.0 + scale); }

// Residuals of computed objects (intertwiners, unitaries, projections) are
// accepted up to this bound. The factor absorbs the conditioning of the
// spanning families the objects are solved from.
inline double certificate_bound(double tol, double scale) {
  return 1e3 * tol * (1.0 + scale);
}

// Two-sided Jacobi. Eigen 3.4.0's divide-and-conquer SVD returns wrong
// singular values on inputs with clustered spectra, which canonical
// dilations produce routinely.
using Svd = Eigen::JacobiSVD<Matrix>;

inline Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  return Svd(m).singularValues();
}

/// Largest singular value; zero for empty matrices.
inline double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

inline Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

inline double hermiticity_residual(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).norm();
}

/// Ascending eigenvalues and eigenvectors of the Hermitian part of `m`.
struct HermitianSpectrum {
  Eigen::VectorXd values;
  Matrix vectors;
};

inline HermitianSpectrum hermitian_spectrum(const Matrix& m) {
  if (m.rows() == 0) return {Eigen::VectorXd(), Matrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  return {es.eigenvalues(), es.eigenvectors()};
}

inline double min_eigenvalue(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double max_eigenvalue(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

/// PSD test with relative tolerance: min eigenvalue >= -tol (1 + ||m||).
inline bool is_psd(const Matrix& m, double tol) {
  if (m.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -cutoff(tol, scale);
}

inline Index numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  const Eigen::VectorXd s = singular_values(m);
  const double c = cutoff(tol, s(0));
  return static_cast<Index>((s.array() > c).count());
}

/// Orthonormal basis (as columns) of the numerical column range of `m`.
inline Matrix range_basis(const Matrix& m, double tol) {
  if (m.size() == 0) return Matrix(m.rows(), 0);
  Svd svd(m, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  const double c = cutoff(tol, s(0));
  const Index r = static_cast<Index>((s.array() > c).count());
  return svd.matrixU().leftCols(r);
}

/// Orthogonal projection onto the numerical column range of `m`.
inline Matrix range_projection(const Matrix& m, double tol) {
  const Matrix q = range_basis(m, tol);
  return q * q.adjoint();
}

/// Orthonormal basis (as columns) of the numerical null space of `m`.
inline Matrix null_space(const Matrix& m, double tol) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Svd svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double c = cutoff(tol, s(0));
  const Index r = static_cast<Index>((s.array() > c).count());
  return svd.matrixV().rightCols(m.cols() - r);
}

/// Moore-Penrose pseudo-inverse with a relative singular-value cutoff.
inline Matrix pseudo_inverse(const Matrix& a, double tol) {
  if (a.size() == 0) return Matrix::Zero(a.cols(), a.rows());
  Svd svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double c = cutoff(tol, s(0));
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > c) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

/// Least-squares solution X of X * a = b.
inline Matrix solve_right(const Matrix& a, const Matrix& b, double tol) {
  return b * pseudo_inverse(a, tol);
}

/// Frobenius distance, tolerant of empty operands of matching shape.
inline double distance(const Matrix& a, const Matrix& b) {
  if (a.size() == 0 && b.size() == 0) return 0.0;
  return (a - b).norm();
}

}  // namespace cpn

#endif  // CPNKIT_LINALG_HPP
