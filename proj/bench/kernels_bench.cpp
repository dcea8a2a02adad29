// Serial reference kernels against their OpenMP versions.
//
//   jsr_bench --benchmark_filter=KronSum

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "jsr/bruteforce.hpp"
#include "jsr/kernels.hpp"

namespace {

using jsr::Matrix;
using jsr::Vector;
namespace kernels = jsr::kernels;

std::vector<Matrix> random_mats(int m, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Matrix> mats;
  for (int i = 0; i < m; ++i) mats.push_back(Matrix::NullaryExpr(n, n, [&] { return u(rng); }));
  return mats;
}

template <auto Apply>
void BM_KronSumApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const auto mats = random_mats(2, n, 1);
  std::size_t dim = 1;
  for (int i = 0; i < k; ++i) dim *= static_cast<std::size_t>(n);
  Vector x = Vector::Ones(static_cast<Eigen::Index>(dim)), y(x.size());
  for (auto _ : state) {
    Apply(mats, k, {x.data(), dim}, {y.data(), dim});
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dim));
}

template <auto MaxNorm>
void BM_MaxNorm(benchmark::State& state) {
  const auto mats = random_mats(3, 3, 2);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(MaxNorm(mats, k));
}

template <auto MaxRadius>
void BM_MaxRadius(benchmark::State& state) {
  const auto mats = random_mats(2, 3, 3);
  const int k = static_cast<int>(state.range(0));
  kernels::WordBatch batch;
  batch.k = k;
  jsr::for_each_word(2, k, true, [&](std::span<const std::uint32_t> w) {
    batch.letters.insert(batch.letters.end(), w.begin(), w.end());
  });
  for (auto _ : state) benchmark::DoNotOptimize(MaxRadius(mats, batch));
}

BENCHMARK(BM_KronSumApply<kernels::serial::kron_sum_apply>)->Name("KronSum/serial")->ArgsProduct({{3, 5, 8}, {6}})->Args({3, 9})->Args({5, 7});
BENCHMARK(BM_KronSumApply<kernels::omp::kron_sum_apply>)->Name("KronSum/omp")->ArgsProduct({{3, 5, 8}, {6}})->Args({3, 9})->Args({5, 7});
BENCHMARK(BM_MaxNorm<kernels::serial::max_norm_over_all_words>)->Name("MaxNorm/serial")->Arg(8)->Arg(11);
BENCHMARK(BM_MaxNorm<kernels::omp::max_norm_over_all_words>)->Name("MaxNorm/omp")->Arg(8)->Arg(11);
BENCHMARK(BM_MaxRadius<kernels::serial::max_radius_over_words>)->Name("MaxRadius/serial")->Arg(12)->Arg(16);
BENCHMARK(BM_MaxRadius<kernels::omp::max_radius_over_words>)->Name("MaxRadius/omp")->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
