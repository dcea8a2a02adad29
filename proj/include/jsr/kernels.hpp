#pragma once

// Data-parallel inner loops. Every kernel exists twice: `serial` is the
// plain-loop reference kept for testing, `omp` is the OpenMP version used by
// the library. Both produce bitwise-identical results for a fixed input
// except kron_sum_apply, whose omp variant reassociates the inner products
// through Eigen's GEMM (agreement to rounding).

#include <cstdint>
#include <span>
#include <vector>

#include "jsr/matrix_core.hpp"

namespace jsr::kernels {

/// Letters of a batch of words stored back to back, `k` letters per word,
/// each letter in [0, m).
struct WordBatch {
  int k = 0;
  std::vector<std::uint32_t> letters;

  std::size_t size() const { return k == 0 ? 0 : letters.size() / static_cast<std::size_t>(k); }
  std::span<const std::uint32_t> word(std::size_t w) const {
    return {letters.data() + w * static_cast<std::size_t>(k), static_cast<std::size_t>(k)};
  }
};

/// Product A_{w[k-1]} ... A_{w[0]}: the first letter acts first.
Matrix word_product(std::span<const Matrix> mats, std::span<const std::uint32_t> word);

namespace serial {

/// y = sum_i mats[i]^{(x)k} x by k mode products per term; x, y have length n^k.
void kron_sum_apply(std::span<const Matrix> mats, int k,
                    std::span<const double> x, std::span<double> y);

/// max over the listed words of rho(A_word).
double max_radius_over_words(std::span<const Matrix> mats, const WordBatch& words);

/// max over all m^k words of ||A_word||_2, by depth-first running products.
double max_norm_over_all_words(std::span<const Matrix> mats, int k);

}  // namespace serial

namespace omp {

void kron_sum_apply(std::span<const Matrix> mats, int k,
                    std::span<const double> x, std::span<double> y);

double max_radius_over_words(std::span<const Matrix> mats, const WordBatch& words);

/// Partitions the word tree by prefix across threads.
double max_norm_over_all_words(std::span<const Matrix> mats, int k);

}  // namespace omp

}  // namespace jsr::kernels
