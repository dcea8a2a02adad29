#include "jsr/bruteforce.hpp"

#include <cmath>

#include "jsr/kernels.hpp"

namespace jsr {

namespace {

std::uint64_t word_count(std::size_t m, int k, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(m), &total) ||
        total > budget) {
      throw CapacityError(std::to_string(m) + "^" + std::to_string(k) +
                          " words exceed the enumeration budget " +
                          std::to_string(budget));
    }
  }
  return total;
}

void validate(std::size_t m, int k) {
  if (m < 1) throw ValidationError("alphabet size must be >= 1");
  if (k < 1) throw ValidationError("word length must be >= 1");
}

}  // namespace

std::string ProductWord::to_string() const {
  std::string s;
  for (std::uint32_t l : letters) {
    if (!s.empty() && l + 1 >= 10) s += ',';
    s += std::to_string(l + 1);
  }
  return s;
}

void for_each_word(std::size_t m, int k, bool dedup_cyclic, const WordVisitor& visit,
                   std::uint64_t budget) {
  validate(m, k);
  word_count(m, k, budget);
  const auto len = static_cast<std::size_t>(k);
  const auto top = static_cast<std::uint32_t>(m - 1);

  if (!dedup_cyclic) {
    std::vector<std::uint32_t> w(len, 0);
    while (true) {
      visit(w);
      std::size_t i = len;
      while (i > 0 && w[i - 1] == top) --i;
      if (i == 0) return;
      ++w[i - 1];
      std::fill(w.begin() + static_cast<std::ptrdiff_t>(i), w.end(), 0u);
    }
  }

  // FKM: successive prenecklaces in lexicographic order; a prenecklace whose
  // longest Lyndon prefix length p divides k is a necklace.
  std::vector<std::uint32_t> a(len + 1, 0);  // a[1..k], a[0] unused
  visit(std::span<const std::uint32_t>(a.data() + 1, len));
  while (true) {
    std::size_t i = len;
    while (i > 0 && a[i] == top) --i;
    if (i == 0) return;
    ++a[i];
    for (std::size_t j = i + 1; j <= len; ++j) a[j] = a[j - i];
    if (len % i == 0) visit(std::span<const std::uint32_t>(a.data() + 1, len));
  }
}

std::vector<ProductWord> enumerate_words(std::size_t m, int k, bool dedup_cyclic,
                                         std::uint64_t budget) {
  std::vector<ProductWord> out;
  for_each_word(
      m, k, dedup_cyclic,
      [&](std::span<const std::uint32_t> w) { out.push_back({{w.begin(), w.end()}}); },
      budget);
  return out;
}

BruteForceBounds brute_force_bounds(const MatrixSet& set, int k,
                                    const BruteForceOptions& opts) {
  validate(set.size(), k);
  word_count(set.size(), k, opts.word_budget);

  BruteForceBounds res;
  res.k = k;
  const double s = set.max_spectral_norm();
  if (s == 0.0) return res;

  const MatrixSet scaled = set.scaled(1.0 / s);
  kernels::WordBatch batch;
  batch.k = k;
  for_each_word(
      set.size(), k, opts.dedup,
      [&](std::span<const std::uint32_t> w) {
        batch.letters.insert(batch.letters.end(), w.begin(), w.end());
      },
      opts.word_budget);
  res.radius_words = batch.size();

  const auto mats = scaled.matrices();
  const double max_rho = opts.parallel ? kernels::omp::max_radius_over_words(mats, batch)
                                       : kernels::serial::max_radius_over_words(mats, batch);
  const double max_norm = opts.parallel ? kernels::omp::max_norm_over_all_words(mats, k)
                                        : kernels::serial::max_norm_over_all_words(mats, k);
  const double inv_k = 1.0 / k;
  res.lower = s * std::pow(max_rho, inv_k);
  // rho(P) <= ||P|| for every product; keep that ordering through rounding.
  res.upper = std::max(res.lower, s * std::pow(max_norm, inv_k));
  return res;
}

}  // namespace jsr
