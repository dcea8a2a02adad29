#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "jsr/matrix_set.hpp"

namespace jsr {

inline constexpr std::uint64_t kDefaultWordBudget = std::uint64_t{1} << 20;

/// A word sigma over {0, ..., m-1}; A_sigma applies letters[0] first.
struct ProductWord {
  std::vector<std::uint32_t> letters;

  /// One-based digits, e.g. "112".
  std::string to_string() const;
  bool operator==(const ProductWord&) const = default;
};

using WordVisitor = std::function<void(std::span<const std::uint32_t>)>;

/// Visits every word of length k in lexicographic order, or with
/// `dedup_cyclic` only the lexicographically least rotation of each cyclic
/// class (necklaces, generated by the FKM algorithm). Throws CapacityError
/// when m^k exceeds `budget`.
void for_each_word(std::size_t m, int k, bool dedup_cyclic, const WordVisitor& visit,
                   std::uint64_t budget = kDefaultWordBudget);

std::vector<ProductWord> enumerate_words(std::size_t m, int k, bool dedup_cyclic,
                                         std::uint64_t budget = kDefaultWordBudget);

struct BruteForceOptions {
  /// Restrict the spectral-radius maximization to cyclic representatives.
  bool dedup = true;
  std::uint64_t word_budget = kDefaultWordBudget;
  /// Use the OpenMP kernels; the serial reference otherwise.
  bool parallel = true;
};

struct BruteForceBounds {
  double lower = 0.0;  // max_sigma rho(A_sigma)^{1/k}
  double upper = 0.0;  // max_sigma ||A_sigma||^{1/k} over all m^k words
  int k = 0;
  std::uint64_t radius_words = 0;
};

/// Product bounds lower <= JSR <= upper at word length k. The matrices are
/// divided by their largest spectral norm before forming products and the
/// results rescaled.
BruteForceBounds brute_force_bounds(const MatrixSet& set, int k,
                                    const BruteForceOptions& opts = {});

}  // namespace jsr
