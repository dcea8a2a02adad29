#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "jsr/ellipsoid.hpp"
#include "jsr/lifting.hpp"
#include "test_util.hpp"

namespace {

using jsr::EllipsoidCertificate;
using jsr::Matrix;
using jsr::MatrixSet;
using namespace jsr::testing;

Matrix rotation(double t) {
  Matrix r(2, 2);
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

MatrixSet random_pair(std::mt19937_64& rng, int n) {
  return MatrixSet({random_matrix(rng, n), random_matrix(rng, n)});
}

TEST(VerifyCertificate, IdentityPair) {
  const MatrixSet set({Matrix::Identity(2, 2), Matrix::Identity(2, 2)});
  // tau = rho(B) = 2 with X = I: constraint margins are exactly 1/2.
  const auto ok = jsr::verify_certificate(set, {Matrix::Identity(2, 2), 2.0, 0.0});
  EXPECT_TRUE(ok.valid);
  EXPECT_NEAR(ok.slack, 0.5, 1e-15);
  EXPECT_NEAR(ok.pd_margin, 1.0, 1e-15);
  ASSERT_EQ(ok.constraint_margins.size(), 2u);

  const auto tight = jsr::verify_certificate(set, {Matrix::Identity(2, 2), 1.0, 0.0});
  EXPECT_TRUE(tight.valid);
  EXPECT_NEAR(tight.slack, 0.0, 1e-15);

  const auto bad = jsr::verify_certificate(set, {Matrix::Identity(2, 2), 0.9, 0.0});
  EXPECT_FALSE(bad.valid);
  EXPECT_LT(bad.slack, 0.0);
}

TEST(VerifyCertificate, RejectsIndefiniteAndMismatched) {
  const MatrixSet set({rotation(0.3)});
  Matrix x = Matrix::Identity(2, 2);
  x(1, 1) = -1.0;
  EXPECT_FALSE(jsr::verify_certificate(set, {x, 10.0, 0.0}).valid);
  EXPECT_THROW(jsr::verify_certificate(set, {Matrix::Identity(3, 3), 1.0, 0.0}),
               jsr::DimensionError);
}

TEST(VerifyCertificate, MatchesDirectEigenvalues) {
  std::mt19937_64 rng(61);
  const MatrixSet set = random_pair(rng, 3);
  const Matrix x = random_psd(rng, 3) + Matrix::Identity(3, 3);
  const double tau = 5.0;
  const auto check = jsr::verify_certificate(set, {x, tau, 0.0});
  const double xnorm = std::sqrt(char_poly_radius(x * x));
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Matrix c = tau * x - set[i] * x * set[i].transpose();
    const Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + c.transpose()));
    EXPECT_NEAR(check.constraint_margins[i], es.eigenvalues().minCoeff() / (tau * xnorm), 1e-10);
  }
}

TEST(LiftedSumRadius, MatchesDenseLift) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixSet set = random_pair(rng, 2 + trial % 3);
    Matrix b = lift_via_kron(set[0]) + lift_via_kron(set[1]);
    EXPECT_LT(rel_err(jsr::lifted_sum_radius(set), std::sqrt(char_poly_radius(b))), 1e-8);
  }
}

TEST(InitialCertificate, VerifiesAndStaysBelowLiftedSum) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixSet set = random_pair(rng, 2 + trial % 3);
    const EllipsoidCertificate c = jsr::initial_certificate(set);
    const auto check = jsr::verify_certificate(set, c);
    EXPECT_TRUE(check.valid);
    EXPECT_GT(check.slack, 0.0);
    EXPECT_NEAR(c.X.trace(), static_cast<double>(set.dim()), 1e-9);
    const double lsr = jsr::lifted_sum_radius(set);
    EXPECT_LE(std::sqrt(c.tau), lsr + 1e-6);
  }
}

TEST(EllipsoidApprox, ChainOnRandomPairs) {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixSet set = random_pair(rng, 2 + trial % 2);
    const auto r = jsr::ellipsoid_approx(set);
    const auto oracle = jsr::brute_force_bounds(set, 10);
    EXPECT_LE(oracle.lower, r.rho_hat * (1 + 1e-9));
    EXPECT_LE(r.rho_hat, r.lifted_sum_radius + 1e-6);
    EXPECT_LE(r.lifted_sum_radius / std::sqrt(2.0), oracle.upper * (1 + 1e-9));
    EXPECT_NEAR(r.rho_hat, std::sqrt(r.cert.tau), 1e-15);
    const auto check = jsr::verify_certificate(set, r.cert);
    EXPECT_TRUE(check.valid);
    EXPECT_GT(check.slack, 0.0);
    EXPECT_LE(r.rho_hat, std::sqrt(jsr::initial_certificate(set).tau) * (1 + 1e-12));
  }
}

TEST(EllipsoidApprox, RotationsAreTight) {
  const MatrixSet set({rotation(0.4), rotation(1.3), 0.5 * rotation(2.0)});
  const auto r = jsr::ellipsoid_approx(set);
  EXPECT_GE(r.rho_hat, 1.0);
  EXPECT_NEAR(r.rho_hat, 1.0, 1e-4);
}

TEST(EllipsoidApprox, SymmetricSetIsExact) {
  std::mt19937_64 rng(65);
  const MatrixSet set({random_symmetric(rng, 3), random_symmetric(rng, 3)});
  // For symmetric matrices the JSR is the largest spectral radius.
  const double rho = std::max(char_poly_radius(set[0]), char_poly_radius(set[1]));
  const auto r = jsr::ellipsoid_approx(set);
  EXPECT_GE(r.rho_hat, rho * (1 - 1e-12));
  EXPECT_LE(r.rho_hat, rho * (1 + 1e-4));
}

TEST(EllipsoidApprox, ZeroSet) {
  const auto r = jsr::ellipsoid_approx(MatrixSet({Matrix::Zero(2, 2), Matrix::Zero(2, 2)}));
  EXPECT_EQ(r.rho_hat, 0.0);
}

TEST(EllipsoidApprox, ScaleEquivariant) {
  std::mt19937_64 rng(66);
  const MatrixSet set = random_pair(rng, 2);
  const double a = jsr::ellipsoid_approx(set).rho_hat;
  const double b = jsr::ellipsoid_approx(set.scaled(1e6)).rho_hat;
  EXPECT_NEAR(b / (1e6 * a), 1.0, 1e-5);
}

class NeverFeasible final : public jsr::FeasibilityBackend {
 public:
  int calls = 0;
  std::optional<Matrix> find(const MatrixSet&, double, const Matrix&) override {
    ++calls;
    return std::nullopt;
  }
};

class ReturnsIdentity final : public jsr::FeasibilityBackend {
 public:
  std::optional<Matrix> find(const MatrixSet& set, double, const Matrix&) override {
    return Matrix::Identity(static_cast<Eigen::Index>(set.dim()), static_cast<Eigen::Index>(set.dim()));
  }
};

TEST(EllipsoidApprox, BackendHook) {
  std::mt19937_64 rng(67);
  const MatrixSet set = random_pair(rng, 3);
  auto never = std::make_shared<NeverFeasible>();
  jsr::EllipsoidOptions opts;
  opts.backend = never;
  const auto r = jsr::ellipsoid_approx(set, opts);
  EXPECT_GT(never->calls, 0);
  EXPECT_EQ(r.improvements, 0);
  EXPECT_NEAR(r.cert.tau, jsr::initial_certificate(set).tau, 1e-12 * r.cert.tau);

  // A backend whose candidates are never verified cannot make the bound worse
  // or produce an invalid certificate.
  opts.backend = std::make_shared<ReturnsIdentity>();
  const auto s = jsr::ellipsoid_approx(set, opts);
  EXPECT_TRUE(jsr::verify_certificate(set, s.cert).valid);
  EXPECT_LE(s.rho_hat, r.rho_hat * (1 + 1e-12));
}

}  // namespace
