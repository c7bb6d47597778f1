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

#include <gtest/gtest.h>

#include "cpn/radon.hpp"
#include "cpn/random.hpp"

namespace cpn {
namespace {

constexpr double kTol = 1e-9;

Matrix kron_identity_left(Index d, const Matrix& b) {
  Matrix out = Matrix::Zero(d * b.rows(), d * b.cols());
  for (Index x = 0; x < d; ++x) out.block(x * b.rows(), x * b.cols(), b.rows(), b.cols()) = b;
  return out;
}

TEST(Compress, IdentityAndZero) {
  Rng rng(21);
  const CPnMap rho = random_cpn_map(CStarAlgebra({2, 1}), 2, 2, 3, rng);
  const StinespringDilation d = dilate(rho, kTol);
  const Index n = d.space_dim();
  EXPECT_LE(distance(compress(d, Matrix::Identity(n, n), kTol), rho), 1e-10 * (1 + map_scale(rho)));
  EXPECT_EQ(map_scale(compress(d, Matrix::Zero(n, n), kTol)), 0.0);
}

TEST(Compress, DepolarizingCorner) {
  const CPnMap rho(depolarizing_map(2));
  const StinespringDilation d = dilate(rho, kTol);
  ASSERT_EQ(d.space_dim(), 8);
  Matrix corner = Matrix::Zero(4, 4);
  corner(0, 0) = 1.0;
  const CPnMap theta = compress(d, kron_identity_left(2, corner), kTol);
  EXPECT_TRUE(order_leq(theta, rho, kTol));
  EXPECT_GT(map_scale(theta), 0.1);
}

TEST(Compress, RejectsOperatorsOutsideThePositiveCommutant) {
  const StinespringDilation d = dilate(CPnMap(identity_map(2)), kTol);
  Matrix off = Matrix::Zero(2, 2);
  off(0, 1) = 1.0;
  off(1, 0) = 1.0;
  EXPECT_THROW(compress(d, off, kTol), ValidationError);
  EXPECT_THROW(compress(d, -1.0 * Matrix::Identity(2, 2), kTol), ValidationError);
  EXPECT_THROW(compress(d, Matrix::Identity(3, 3), kTol), ValidationError);
}

TEST(Intertwiner, Examples) {
  Rng rng(22);
  const CPnMap rho = random_cpn_map(CStarAlgebra({2}), 2, 2, 3, rng);
  const Index n = dilate(rho, kTol).space_dim();

  const Intertwiner same = intertwiner(rho, rho, kTol);
  EXPECT_NEAR(distance(same.w, Matrix::Identity(n, n)), 0.0, 1e-10);

  const Intertwiner half = intertwiner(rho, 0.5 * rho, kTol);
  EXPECT_NEAR(distance(half.w.adjoint() * half.w, 0.5 * Matrix::Identity(n, n)), 0.0, 1e-10);
  EXPECT_NEAR(half.norm, 1.0 / std::sqrt(2.0), 1e-12);

  const Intertwiner zero = intertwiner(rho, CPnMap::zero(rho.domain(), 2, 2), kTol);
  EXPECT_EQ(zero.w.rows(), 0);
  EXPECT_EQ(zero.w.cols(), n);
}

TEST(Intertwiner, RejectsUndominated) {
  Rng rng(23);
  const CPnMap rho = random_cpn_map(CStarAlgebra({2}), 2, 1, 2, rng);
  try {
    intertwiner(rho, 2.0 * rho, kTol);
    FAIL() << "expected DominationError";
  } catch (const DominationError& e) {
    EXPECT_LT(e.min_eig(), 0.0);
  }
}

TEST(RadonNikodym, Scalars) {
  Rng rng(24);
  const CPnMap rho = random_cpn_map(CStarAlgebra({2, 1}), 2, 2, 2, rng);
  const StinespringDilation d = dilate(rho, kTol);
  const Matrix id = Matrix::Identity(d.space_dim(), d.space_dim());
  EXPECT_NEAR(distance(rn_operator(d, rho, kTol).t, id), 0.0, 1e-10);
  const RadonNikodym half = rn_operator(d, 0.5 * rho, kTol);
  EXPECT_NEAR(distance(half.t, 0.5 * id), 0.0, 1e-10);
  EXPECT_NEAR(half.spectrum_lo, 0.5, 1e-10);
  EXPECT_NEAR(half.spectrum_hi, 0.5, 1e-10);
}

TEST(RadonNikodym, RoundTrip) {
  Rng rng(25);
  for (int k = 0; k < 30; ++k) {
    const CStarAlgebra a({1 + k % 3, 1 + k % 2});
    const CPnMap rho = random_cpn_map(a, 1 + k % 3, 1 + (k / 3) % 3, 1 + k % 4, rng);
    const StinespringDilation d = dilate(rho, kTol);
    const CommutantBasis basis = commutant(d.rep, kTol);
    const Matrix t0 = sample_unit_interval(basis, d.space_dim(), rng);
    EXPECT_GE(min_eigenvalue(t0), -1e-12);
    EXPECT_LE(max_eigenvalue(t0), 1.0 + 1e-12);
    const CPnMap theta = compress(d, t0, kTol);
    EXPECT_TRUE(order_leq(theta, rho, kTol));
    const RadonNikodym rn = rn_operator(d, theta, kTol);
    EXPECT_LE(distance(rn.t, t0), 1e-8 * (1 + op_norm(t0)));
    EXPECT_LE(rn.reconstruction, 1e-9 * (1 + map_scale(rho)));
    EXPECT_LE(rn.w.norm, 1.0 + 1e-10);
  }
}

TEST(RadonNikodym, UndominatedIsRejected) {
  Rng rng(26);
  const CPnMap rho = random_cpn_map(CStarAlgebra({2}), 1, 2, 2, rng);
  EXPECT_THROW(rn_operator(rho, 2.0 * rho, kTol), DominationError);
  const CPnMap other = random_cpn_map(CStarAlgebra({2}), 1, 2, 2, rng);
  EXPECT_THROW(rn_operator(rho, other, kTol), DominationError);
}

TEST(OrderEquivalence, Examples) {
  Rng rng(27);
  const StinespringDilation d = dilate(random_cpn_map(CStarAlgebra({2}), 2, 1, 3, rng), kTol);
  const Matrix id = Matrix::Identity(d.space_dim(), d.space_dim());
  const OrderEquivalence a = order_equivalence_check(d, Matrix::Zero(d.space_dim(), d.space_dim()), id, kTol);
  EXPECT_TRUE(a.operator_leq);
  EXPECT_TRUE(a.map_leq);
  const OrderEquivalence b = order_equivalence_check(d, id, 0.5 * id, kTol);
  EXPECT_FALSE(b.operator_leq);
  EXPECT_FALSE(b.map_leq);
}

TEST(OrderEquivalence, RandomPairsAgree) {
  Rng rng(28);
  int ordered = 0;
  for (int k = 0; k < 40; ++k) {
    const StinespringDilation d = dilate(random_cpn_map(CStarAlgebra({2, 1}), 2, 1 + k % 2, 2 + k % 3, rng), kTol);
    const CommutantBasis basis = commutant(d.rep, kTol);
    const Matrix t1 = sample_unit_interval(basis, d.space_dim(), rng);
    Matrix t2 = sample_unit_interval(basis, d.space_dim(), rng);
    if (k % 2 == 0) t2 += t1;
    const OrderEquivalence e = order_equivalence_check(d, t1, t2, kTol);
    EXPECT_TRUE(e.agree());
    ordered += e.operator_leq ? 1 : 0;
  }
  EXPECT_GE(ordered, 20);
}

TEST(Affinity, SumsAndScalars) {
  Rng rng(29);
  const StinespringDilation d = dilate(random_cpn_map(CStarAlgebra({3}), 2, 2, 4, rng), kTol);
  const CommutantBasis basis = commutant(d.rep, kTol);
  const double scale = 1 + map_scale(d.source);
  for (int k = 0; k < 10; ++k) {
    const Matrix t1 = sample_unit_interval(basis, d.space_dim(), rng);
    const Matrix t2 = sample_unit_interval(basis, d.space_dim(), rng);
    EXPECT_LE(distance(compress(d, t1 + t2, kTol), compress(d, t1, kTol) + compress(d, t2, kTol)), 1e-10 * scale);
    EXPECT_LE(distance(compress(d, 3.0 * t1, kTol), 3.0 * compress(d, t1, kTol)), 1e-10 * scale);
  }
}

}  // namespace
}  // namespace cpn
