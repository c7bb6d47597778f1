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

// Finite inverse systems A_1 <- A_2 <- ... <- A_N of C*-algebras joined by
// surjective unital *-homomorphisms. A thread (a_1, ..., a_N) with
// pi_p(a_{p+1}) = a_p stands for an element of the inverse limit, and
// p_k(a) = ||a_k|| is the k-th C*-seminorm. Levels are numbered from 1.

#ifndef CPNKIT_PROSTAR_HPP
#define CPNKIT_PROSTAR_HPP

#include <sstream>
#include <string>
#include <vector>

#include "cpn/cpnmaps.hpp"

namespace cpn {

struct TowerResiduals {
  double star = 0.0;
  double multiplicative = 0.0;
  double unital = 0.0;
  Index rank = 0;
};

class Tower {
 public:
  /// connecting[p - 1] maps coordinates of A_{p+1} to coordinates of A_p.
  Tower(std::vector<CStarAlgebra> levels, std::vector<Matrix> connecting, std::vector<TowerResiduals> residuals)
      : levels_(std::move(levels)), connecting_(std::move(connecting)), residuals_(std::move(residuals)) {}

  Index depth() const noexcept { return static_cast<Index>(levels_.size()); }
  const CStarAlgebra& level(Index k) const { return levels_.at(static_cast<std::size_t>(k - 1)); }
  const std::vector<CStarAlgebra>& levels() const noexcept { return levels_; }
  const std::vector<Matrix>& connecting() const noexcept { return connecting_; }
  const std::vector<TowerResiduals>& residuals() const noexcept { return residuals_; }

  /// pi_p: A_{p+1} -> A_p.
  AlgebraElement project(Index p, const AlgebraElement& a) const {
    const Matrix& pi = connecting_.at(static_cast<std::size_t>(p - 1));
    return AlgebraElement::from_coordinates(level(p), pi * a.coordinates());
  }

 private:
  std::vector<CStarAlgebra> levels_;
  std::vector<Matrix> connecting_;
  std::vector<TowerResiduals> residuals_;
};

namespace detail {

[[noreturn]] inline void tower_axiom_failure(Index p, const char* axiom, double residual) {
  std::ostringstream os;
  os << "make_tower: connecting map at level " << p << " is not " << axiom << " (residual " << residual << ")";
  throw ValidationError(os.str());
}

}  // namespace detail

inline Tower make_tower(std::vector<CStarAlgebra> levels, std::vector<Matrix> connecting, double tol = 1e-9) {
  if (levels.empty()) throw ValidationError("make_tower: at least one level is required");
  if (connecting.size() + 1 != levels.size()) {
    throw ValidationError("make_tower: need exactly one connecting map per adjacent pair of levels");
  }
  std::vector<TowerResiduals> residuals;
  for (std::size_t i = 0; i < connecting.size(); ++i) {
    const Index p = static_cast<Index>(i) + 1;
    const CStarAlgebra& lower = levels[i];
    const CStarAlgebra& upper = levels[i + 1];
    const Matrix& pi = connecting[i];
    if (pi.rows() != lower.dimension() || pi.cols() != upper.dimension()) {
      std::ostringstream os;
      os << "make_tower: connecting map at level " << p << " must be " << lower.dimension() << "x"
         << upper.dimension();
      throw ValidationError(os.str());
    }
    auto apply = [&](const AlgebraElement& a) { return AlgebraElement::from_coordinates(lower, pi * a.coordinates()); };
    const auto units = matrix_units(upper);
    std::vector<AlgebraElement> images;
    for (const auto& e : units) images.push_back(apply(e));

    TowerResiduals r;
    const double limit = cutoff(tol, op_norm(pi));
    for (std::size_t a = 0; a < units.size(); ++a) {
      r.star = std::max(r.star, distance(apply(units[a].adjoint()), images[a].adjoint()));
    }
    if (r.star > limit) detail::tower_axiom_failure(p, "*-preserving", r.star);
    for (std::size_t a = 0; a < units.size(); ++a) {
      for (std::size_t b = 0; b < units.size(); ++b) {
        r.multiplicative = std::max(r.multiplicative, distance(apply(units[a] * units[b]), images[a] * images[b]));
      }
    }
    if (r.multiplicative > limit) detail::tower_axiom_failure(p, "multiplicative", r.multiplicative);
    r.unital = distance(apply(upper.unit()), lower.unit());
    if (r.unital > limit) detail::tower_axiom_failure(p, "unital", r.unital);
    r.rank = numerical_rank(pi, tol);
    if (r.rank != lower.dimension()) detail::tower_axiom_failure(p, "surjective", static_cast<double>(r.rank));
    residuals.push_back(r);
  }
  return Tower(std::move(levels), std::move(connecting), std::move(residuals));
}

/// Throws ValidationError naming the first level where the thread is not
/// coherent or has the wrong algebra.
inline void check_thread(const Tower& t, const std::vector<AlgebraElement>& thread, double tol = 1e-9) {
  if (static_cast<Index>(thread.size()) != t.depth()) {
    throw ValidationError("thread length does not match the tower depth");
  }
  for (Index k = 1; k <= t.depth(); ++k) {
    if (!(thread[static_cast<std::size_t>(k - 1)].algebra() == t.level(k))) {
      std::ostringstream os;
      os << "thread component at level " << k << " lies in the wrong algebra";
      throw ValidationError(os.str());
    }
  }
  for (Index p = 1; p < t.depth(); ++p) {
    const AlgebraElement& above = thread[static_cast<std::size_t>(p)];
    const AlgebraElement& here = thread[static_cast<std::size_t>(p - 1)];
    const double gap = distance(t.project(p, above), here);
    if (gap > cutoff(tol, cstar_norm(above))) {
      std::ostringstream os;
      os << "thread is not coherent at level " << p << " (residual " << gap << ")";
      throw ValidationError(os.str());
    }
  }
}

/// p_k on a coherent thread.
inline double seminorm(const Tower& t, Index k, const std::vector<AlgebraElement>& thread, double tol = 1e-9) {
  if (k < 1 || k > t.depth()) throw ValidationError("seminorm: level out of range");
  check_thread(t, thread, tol);
  return cstar_norm(thread[static_cast<std::size_t>(k - 1)]);
}

/// Thread ending in a at the top level.
inline std::vector<AlgebraElement> thread_from_top(const Tower& t, const AlgebraElement& top) {
  std::vector<AlgebraElement> out(static_cast<std::size_t>(t.depth()), top);
  for (Index p = t.depth() - 1; p >= 1; --p) {
    out[static_cast<std::size_t>(p - 1)] = t.project(p, out[static_cast<std::size_t>(p)]);
  }
  return out;
}

struct ContinuousCPnMap {
  Tower tower;
  Index level = 1;
  CPnMap base;
};

inline ContinuousCPnMap make_continuous_map(Tower tower, Index level, CPnMap base) {
  if (level < 1 || level > tower.depth()) throw ValidationError("continuous map: level out of range");
  if (!(base.domain() == tower.level(level))) {
    throw ValidationError("continuous map: base map is not defined on the chosen level");
  }
  return {std::move(tower), level, std::move(base)};
}

/// The n x n block [rho_ij(a_k)] as one nm x nm matrix.
inline Matrix evaluate_continuous_map(const ContinuousCPnMap& m, const std::vector<AlgebraElement>& thread,
                                      double tol = 1e-9) {
  check_thread(m.tower, thread, tol);
  return flatten(m.base)(thread[static_cast<std::size_t>(m.level - 1)]);
}

/// Tower A_1 = M_d <- A_2 = M_d (+) M_d with pi(a (+) b) = a.
inline Tower projection_tower(Index d) {
  const CStarAlgebra lower({d});
  const CStarAlgebra upper({d, d});
  Matrix pi = Matrix::Zero(lower.dimension(), upper.dimension());
  pi.leftCols(lower.dimension()).setIdentity();
  return make_tower({lower, upper}, {pi});
}

}  // namespace cpn

#endif  // CPNKIT_PROSTAR_HPP
