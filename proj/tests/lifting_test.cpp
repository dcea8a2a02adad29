#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "jsr/lifting.hpp"
#include "test_util.hpp"

namespace {

using jsr::LiftedOperatorSpec;
using jsr::Matrix;
using jsr::MatrixSet;
using jsr::Vector;
using namespace jsr::testing;

TEST(SdpLift, TwoByTwoClosedForm) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = random_matrix(rng, 2, -3, 3);
    const double a11 = a(0, 0), a12 = a(0, 1), a21 = a(1, 0), a22 = a(1, 1);
    Matrix expected(3, 3);
    expected << a11 * a11, 2 * a11 * a12, a12 * a12,
        a11 * a21, a11 * a22 + a12 * a21, a12 * a22,
        a21 * a21, 2 * a21 * a22, a22 * a22;
    EXPECT_LE((jsr::sdp_lift(a) - expected).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(SdpLift, MatchesVecRoute) {
  std::mt19937_64 rng(32);
  for (int n = 1; n <= 6; ++n) {
    const Matrix a = random_matrix(rng, n);
    EXPECT_LT(mat_rel_err(jsr::sdp_lift(a), lift_via_kron(a)), 1e-14);
  }
}

TEST(SdpLift, ActsAsCongruence) {
  std::mt19937_64 rng(33);
  for (int n = 1; n <= 5; ++n) {
    const Matrix a = random_matrix(rng, n);
    const Matrix x = random_symmetric(rng, n);
    const Vector lhs = jsr::sdp_lift(a) * jsr::svec(x).coords;
    const Matrix axa = a * x * a.transpose();
    const Vector rhs = jsr::svec(0.5 * (axa + axa.transpose())).coords;
    EXPECT_LT((lhs - rhs).lpNorm<Eigen::Infinity>(), 1e-13);
  }
}

TEST(SdpLift, RadiusIsSquared) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix a = random_matrix(rng, 1 + trial % 4);
    const double r = char_poly_radius(a);
    EXPECT_LT(rel_err(jsr::spectral_radius(jsr::sdp_lift(a)), r * r), 1e-8);
  }
}

TEST(SdpLift, PreservesPsdCone) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const Matrix a = random_matrix(rng, n);
    const Matrix x = random_psd(rng, n);
    jsr::SymVec y{static_cast<std::size_t>(n), jsr::sdp_lift(a) * jsr::svec(x).coords};
    const Eigen::SelfAdjointEigenSolver<Matrix> es(jsr::unsvec(y));
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(LiftedDimension, Table) {
  const auto rec = [](std::uint64_t n, int d) {
    return jsr::lifted_dimension(n, LiftedOperatorSpec::recursive(d));
  };
  EXPECT_EQ(rec(2, 1), 3u);
  EXPECT_EQ(rec(2, 2), 6u);
  EXPECT_EQ(rec(2, 3), 21u);
  EXPECT_EQ(rec(2, 4), 231u);
  EXPECT_EQ(rec(2, 5), 26796u);
  EXPECT_EQ(rec(10, 1), 55u);
  EXPECT_EQ(rec(10, 2), 1540u);
  EXPECT_EQ(rec(10, 3), 1186570u);  // 1540 * 1541 / 2
  EXPECT_EQ(rec(100, 1), 5050u);
  EXPECT_EQ(jsr::lifted_dimension(5, LiftedOperatorSpec::kron_sum(11)), 48828125u);
  EXPECT_EQ(jsr::lifted_dimension(5, LiftedOperatorSpec::sdp_lift_sum()), 15u);
  EXPECT_EQ(jsr::lifted_dimension(5, LiftedOperatorSpec::lift_then_kron(2)), 225u);
  EXPECT_EQ(jsr::lifted_dimension(3, LiftedOperatorSpec::kron_then_lift(2)), 45u);
}

TEST(LiftedDimension, OverflowAndExpressions) {
  EXPECT_THROW(jsr::lifted_dimension(10, LiftedOperatorSpec::kron_sum(30)), jsr::CapacityError);
  EXPECT_THROW(jsr::lifted_dimension(100, LiftedOperatorSpec::recursive(5)), jsr::CapacityError);
  EXPECT_EQ(jsr::lifted_dimension_expr(5, LiftedOperatorSpec::kron_sum(11)), "5^11");
  EXPECT_EQ(jsr::lifted_dimension_expr(5, LiftedOperatorSpec::lift_then_kron(11)), "15^11");
  EXPECT_NEAR(jsr::log_lifted_dimension(10, LiftedOperatorSpec::kron_sum(30)), 30 * std::log(10.0),
              1e-9);
  EXPECT_NEAR(jsr::log_lifted_dimension(2, LiftedOperatorSpec::recursive(5)), std::log(26796.0),
              1e-9);
}

Matrix lift_times(Matrix a, int depth) {
  for (int i = 0; i < depth; ++i) a = lift_via_kron(a);
  return a;
}

Matrix dense_reference(const MatrixSet& set, const LiftedOperatorSpec& spec) {
  Matrix sum;
  for (const Matrix& a : set.matrices()) {
    Matrix t;
    switch (spec.kind) {
      case jsr::LiftKind::kron_sum: t = kron_power_loops(a, spec.param); break;
      case jsr::LiftKind::sdp_lift_sum: t = lift_via_kron(a); break;
      case jsr::LiftKind::mixed_lift_then_kron: t = kron_power_loops(lift_via_kron(a), spec.param); break;
      case jsr::LiftKind::mixed_kron_then_lift: t = lift_via_kron(kron_power_loops(a, spec.param)); break;
      case jsr::LiftKind::recursive_lift: t = lift_times(a, spec.param); break;
    }
    sum = sum.size() == 0 ? t : Matrix(sum + t);
  }
  return sum;
}

TEST(MakeOperator, AgreesWithDenseConstructions) {
  std::mt19937_64 rng(36);
  int checked = 0;
  for (int n = 2; n <= 3; ++n) {
    const MatrixSet set({random_matrix(rng, n), random_matrix(rng, n)});
    std::vector<LiftedOperatorSpec> specs{LiftedOperatorSpec::sdp_lift_sum()};
    for (int p = 1; p <= 3; ++p) {
      specs.push_back(LiftedOperatorSpec::kron_sum(p));
      specs.push_back(LiftedOperatorSpec::lift_then_kron(p));
      specs.push_back(LiftedOperatorSpec::kron_then_lift(p));
      specs.push_back(LiftedOperatorSpec::recursive(p));
    }
    for (const auto& spec : specs) {
      if (jsr::lifted_dimension(n, spec) > 100) continue;
      const jsr::LinearOperator op = jsr::make_operator(set, spec);
      ASSERT_EQ(op.dim, jsr::lifted_dimension(n, spec));
      EXPECT_TRUE(op.cone_invariant);
      EXPECT_LT(mat_rel_err(jsr::materialize(op), dense_reference(set, spec)), 1e-10)
          << jsr::to_string(spec.kind) << " " << spec.param << " n=" << n;
      ++checked;
    }
  }
  EXPECT_GE(checked, 15);
}

TEST(MakeOperator, StartVectorsAreConeInterior) {
  const MatrixSet set({Matrix::Identity(2, 2)});
  const Vector ones = jsr::make_operator(set, LiftedOperatorSpec::kron_sum(2)).start;
  EXPECT_EQ(ones, Vector::Ones(4));
  const Vector s = jsr::make_operator(set, LiftedOperatorSpec::sdp_lift_sum()).start;
  ASSERT_EQ(s.size(), 3);
  EXPECT_GT(s(0), 0.0);
  EXPECT_EQ(s(1), 0.0);
  EXPECT_GT(s(2), 0.0);
}

TEST(MakeOperator, RespectsBudget) {
  const MatrixSet set({Matrix::Identity(3, 3)});
  jsr::LiftBudget budget;
  budget.max_dim = 1000;
  EXPECT_THROW(jsr::make_operator(set, LiftedOperatorSpec::kron_sum(7), budget), jsr::CapacityError);
  EXPECT_NO_THROW(jsr::make_operator(set, LiftedOperatorSpec::kron_sum(6), budget));
}

TEST(LiftSumDense, SumOfLifts) {
  std::mt19937_64 rng(37);
  const MatrixSet set({random_matrix(rng, 3), random_matrix(rng, 3), random_matrix(rng, 3)});
  EXPECT_LT(mat_rel_err(jsr::lift_sum_dense(set), dense_reference(set, LiftedOperatorSpec::sdp_lift_sum())),
            1e-14);
  EXPECT_THROW(jsr::lift_sum_dense(set, 5), jsr::CapacityError);
}

}  // namespace
