#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jsr/matrix_core.hpp"

namespace jsr {

/// A finite, nonempty set of real n x n matrices.
///
/// Nonnegativity is detected on construction. `cone_asserted` records the
/// caller's claim that the matrices share an invariant proper cone; it is
/// never verified.
class MatrixSet {
 public:
  explicit MatrixSet(std::vector<Matrix> matrices, bool cone_asserted = false);

  std::size_t size() const { return mats_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(mats_.front().rows()); }
  std::span<const Matrix> matrices() const { return mats_; }
  const Matrix& operator[](std::size_t i) const { return mats_[i]; }

  bool nonnegative() const { return nonnegative_; }
  bool cone_asserted() const { return cone_asserted_; }
  /// True when the sum and Kronecker upper bounds apply.
  bool cone_hypothesis() const { return nonnegative_ || cone_asserted_ || size() == 1; }
  bool all_zero() const;

  /// Largest spectral norm among the members.
  double max_spectral_norm() const;
  MatrixSet scaled(double c) const;

 private:
  std::vector<Matrix> mats_;
  bool nonnegative_ = false;
  bool cone_asserted_ = false;
};

}  // namespace jsr
