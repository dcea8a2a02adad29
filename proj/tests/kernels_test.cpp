#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "jsr/kernels.hpp"
#include "test_util.hpp"

namespace {

using jsr::Matrix;
using jsr::Vector;
using namespace jsr::testing;
namespace kernels = jsr::kernels;

std::span<const double> in(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<double> out(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

std::vector<Matrix> random_set(std::mt19937_64& rng, int m, int n) {
  std::vector<Matrix> mats;
  for (int i = 0; i < m; ++i) mats.push_back(random_matrix(rng, n));
  return mats;
}

kernels::WordBatch all_words(int m, int k) {
  kernels::WordBatch b;
  b.k = k;
  long total = 1;
  for (int i = 0; i < k; ++i) total *= m;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int t = 0; t < k; ++t) {
      b.letters.push_back(static_cast<std::uint32_t>(c % m));
      c /= m;
    }
  }
  return b;
}

TEST(WordProduct, FirstLetterActsFirst) {
  Matrix a(2, 2), b(2, 2);
  a << 1, 1, 0, 1;
  b << 1, 0, 1, 1;
  const std::vector<Matrix> mats{a, b};
  const std::vector<std::uint32_t> w{0, 1, 1};
  EXPECT_EQ(kernels::word_product(mats, w), b * b * a);
}

TEST(KronSumApply, MatchesExplicitKroneckerSum) {
  std::mt19937_64 rng(21);
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 4; ++k) {
      const auto mats = random_set(rng, 3, n);
      const int dim = static_cast<int>(std::pow(n, k));
      Matrix dense = Matrix::Zero(dim, dim);
      for (const Matrix& a : mats) dense += kron_power_loops(a, k);
      const Vector x = Vector::NullaryExpr(dim, [&] { return std::uniform_real_distribution<>(-1, 1)(rng); });
      const Vector expected = dense * x;
      Vector ys(dim), yo(dim);
      kernels::serial::kron_sum_apply(mats, k, in(x), out(ys));
      kernels::omp::kron_sum_apply(mats, k, in(x), out(yo));
      EXPECT_LT((ys - expected).lpNorm<Eigen::Infinity>(), 1e-12 * (1 + expected.norm()));
      EXPECT_LT((yo - expected).lpNorm<Eigen::Infinity>(), 1e-12 * (1 + expected.norm()));
    }
  }
}

TEST(KronSumApply, SerialAndParallelAgreeOnLargeInput) {
  std::mt19937_64 rng(22);
  const auto mats = random_set(rng, 2, 4);
  const int k = 7;  // 16384 entries, above the parallel threshold
  const int dim = 1 << 14;
  const Vector x = Vector::NullaryExpr(dim, [&] { return std::uniform_real_distribution<>(0, 1)(rng); });
  Vector ys(dim), yo(dim);
  kernels::serial::kron_sum_apply(mats, k, in(x), out(ys));
  kernels::omp::kron_sum_apply(mats, k, in(x), out(yo));
  EXPECT_LT((ys - yo).lpNorm<Eigen::Infinity>(), 1e-10 * ys.lpNorm<Eigen::Infinity>());
}

TEST(KronSumApply, RejectsWrongLength) {
  const std::vector<Matrix> mats{Matrix::Identity(2, 2)};
  Vector x(3), y(3);
  EXPECT_THROW(kernels::serial::kron_sum_apply(mats, 2, {x.data(), 3}, {y.data(), 3}),
               jsr::DimensionError);
  EXPECT_THROW(kernels::omp::kron_sum_apply(mats, 2, {x.data(), 3}, {y.data(), 3}),
               jsr::DimensionError);
}

TEST(WordMaxima, MatchNaiveEnumeration) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const int m = 2 + trial % 2, n = 2 + trial % 2, k = 3 + trial % 3;
    const auto mats = random_set(rng, m, n);
    const NaiveProductBounds naive = naive_products(mats, k);
    const kernels::WordBatch words = all_words(m, k);
    EXPECT_LT(rel_err(kernels::serial::max_radius_over_words(mats, words), naive.max_rho), 1e-8);
    EXPECT_LT(rel_err(kernels::omp::max_radius_over_words(mats, words), naive.max_rho), 1e-8);
    EXPECT_LT(rel_err(kernels::serial::max_norm_over_all_words(mats, k), naive.max_norm), 1e-8);
    EXPECT_LT(rel_err(kernels::omp::max_norm_over_all_words(mats, k), naive.max_norm), 1e-8);
  }
}

TEST(WordMaxima, SerialAndParallelIdentical) {
  std::mt19937_64 rng(24);
  const auto mats = random_set(rng, 3, 3);
  const kernels::WordBatch words = all_words(3, 7);
  EXPECT_EQ(kernels::serial::max_radius_over_words(mats, words),
            kernels::omp::max_radius_over_words(mats, words));
  EXPECT_EQ(kernels::serial::max_norm_over_all_words(mats, 7),
            kernels::omp::max_norm_over_all_words(mats, 7));
}

}  // namespace
