#include "jsr/kernels.hpp"

#include <algorithm>
#include <cstddef>

#include <omp.h>

namespace jsr::kernels {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Stride = Eigen::OuterStride<>;

std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void check_kron_args(std::span<const Matrix> mats, int k, std::size_t xlen,
                     std::size_t ylen) {
  if (mats.empty()) throw ValidationError("empty matrix list");
  if (k < 1) throw ValidationError("Kronecker power needs k >= 1");
  const auto n = static_cast<std::size_t>(mats.front().rows());
  const std::size_t dim = ipow(n, k);
  if (xlen != dim || ylen != dim) {
    throw DimensionError("kron_sum_apply expects vectors of length n^k = " +
                         std::to_string(dim));
  }
}

// Mode-t product, reference loops: out[l, i, r] = sum_j a(i, j) in[l, j, r].
void mode_product_serial(const Matrix& a, std::size_t left, std::size_t right,
                         const double* in, double* out) {
  const auto n = static_cast<std::size_t>(a.rows());
  for (std::size_t l = 0; l < left; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      double* o = out + (l * n + i) * right;
      std::fill(o, o + right, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        const double aij = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        const double* src = in + (l * n + j) * right;
        for (std::size_t r = 0; r < right; ++r) o[r] += aij * src[r];
      }
    }
  }
}

// Same contraction with each (l, column chunk) block done as a small GEMM.
void mode_product_omp(const Matrix& a, std::size_t left, std::size_t right,
                      const double* in, double* out) {
  const auto n = static_cast<Eigen::Index>(a.rows());
  constexpr std::size_t kChunk = 512;
  const std::size_t chunks = (right + kChunk - 1) / kChunk;
  const auto tasks = static_cast<std::ptrdiff_t>(left * chunks);
  const bool par = left * right * static_cast<std::size_t>(n) >= 32768;
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t t = 0; t < tasks; ++t) {
    const std::size_t l = static_cast<std::size_t>(t) / chunks;
    const std::size_t c0 = (static_cast<std::size_t>(t) % chunks) * kChunk;
    const auto w = static_cast<Eigen::Index>(std::min(kChunk, right - c0));
    const std::size_t off = l * static_cast<std::size_t>(n) * right + c0;
    Eigen::Map<const RowMajor, 0, Stride> src(in + off, n, w,
                                              Stride(static_cast<Eigen::Index>(right)));
    Eigen::Map<RowMajor, 0, Stride> dst(out + off, n, w,
                                        Stride(static_cast<Eigen::Index>(right)));
    dst.noalias() = a * src;
  }
}

template <class ModeProduct>
void kron_sum_apply_impl(std::span<const Matrix> mats, int k,
                         std::span<const double> x, std::span<double> y,
                         ModeProduct&& mode) {
  check_kron_args(mats, k, x.size(), y.size());
  const auto n = static_cast<std::size_t>(mats.front().rows());
  const std::size_t dim = x.size();
  std::vector<double> buf_a(dim), buf_b(dim);
  std::fill(y.begin(), y.end(), 0.0);
  for (const Matrix& a : mats) {
    const double* cur = x.data();
    double* nxt = buf_a.data();
    for (int t = 0; t < k; ++t) {
      const std::size_t left = ipow(n, t);
      const std::size_t right = dim / (left * n);
      mode(a, left, right, cur, nxt);
      cur = nxt;
      nxt = (nxt == buf_a.data()) ? buf_b.data() : buf_a.data();
    }
    for (std::size_t i = 0; i < dim; ++i) y[i] += cur[i];
  }
}

// Depth-first search over the remaining letters under a fixed prefix.
double dfs_max_norm(std::span<const Matrix> mats, int depth_left, const Matrix& running) {
  if (depth_left == 0) return spectral_norm(running);
  double best = 0.0;
  for (const Matrix& a : mats) {
    best = std::max(best, dfs_max_norm(mats, depth_left - 1, a * running));
  }
  return best;
}

}  // namespace

Matrix word_product(std::span<const Matrix> mats, std::span<const std::uint32_t> word) {
  if (mats.empty()) throw ValidationError("empty matrix list");
  const auto n = mats.front().rows();
  Matrix p = Matrix::Identity(n, n);
  for (std::uint32_t letter : word) p = mats[letter] * p;
  return p;
}

namespace serial {

void kron_sum_apply(std::span<const Matrix> mats, int k,
                    std::span<const double> x, std::span<double> y) {
  kron_sum_apply_impl(mats, k, x, y, mode_product_serial);
}

double max_radius_over_words(std::span<const Matrix> mats, const WordBatch& words) {
  double best = 0.0;
  for (std::size_t w = 0; w < words.size(); ++w) {
    best = std::max(best, spectral_radius(word_product(mats, words.word(w))));
  }
  return best;
}

double max_norm_over_all_words(std::span<const Matrix> mats, int k) {
  if (mats.empty()) throw ValidationError("empty matrix list");
  const auto n = mats.front().rows();
  return dfs_max_norm(mats, k, Matrix::Identity(n, n));
}

}  // namespace serial

namespace omp {

void kron_sum_apply(std::span<const Matrix> mats, int k,
                    std::span<const double> x, std::span<double> y) {
  kron_sum_apply_impl(mats, k, x, y, mode_product_omp);
}

double max_radius_over_words(std::span<const Matrix> mats, const WordBatch& words) {
  const auto count = static_cast<std::ptrdiff_t>(words.size());
  double best = 0.0;
#pragma omp parallel for schedule(dynamic, 64) reduction(max : best)
  for (std::ptrdiff_t w = 0; w < count; ++w) {
    best = std::max(best, spectral_radius(word_product(
                              mats, words.word(static_cast<std::size_t>(w)))));
  }
  return best;
}

double max_norm_over_all_words(std::span<const Matrix> mats, int k) {
  if (mats.empty()) throw ValidationError("empty matrix list");
  const std::size_t m = mats.size();
  const auto n = mats.front().rows();
  // Shortest prefix length giving at least 4 tasks per thread.
  const std::size_t want = 4 * static_cast<std::size_t>(omp_get_max_threads());
  int plen = 0;
  std::size_t prefixes = 1;
  while (plen < k && prefixes < want) {
    prefixes *= m;
    ++plen;
  }
  double best = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : best)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(prefixes); ++p) {
    Matrix running = Matrix::Identity(n, n);
    auto code = static_cast<std::size_t>(p);
    // Most significant digit is the first letter.
    std::vector<std::uint32_t> letters(static_cast<std::size_t>(plen));
    for (int i = plen - 1; i >= 0; --i) {
      letters[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(code % m);
      code /= m;
    }
    for (std::uint32_t letter : letters) running = mats[letter] * running;
    best = std::max(best, dfs_max_norm(mats, k - plen, running));
  }
  return best;
}

}  // namespace omp

}  // namespace jsr::kernels
