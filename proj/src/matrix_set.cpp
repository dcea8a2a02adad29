#include "jsr/matrix_set.hpp"

#include <algorithm>
#include <string>

namespace jsr {

MatrixSet::MatrixSet(std::vector<Matrix> matrices, bool cone_asserted)
    : mats_(std::move(matrices)), cone_asserted_(cone_asserted) {
  if (mats_.empty()) throw ValidationError("matrix set is empty");
  const auto n = mats_.front().rows();
  if (n == 0) throw DimensionError("matrices must have positive dimension");
  nonnegative_ = true;
  for (std::size_t i = 0; i < mats_.size(); ++i) {
    const std::string what = "matrix " + std::to_string(i + 1);
    require_square(mats_[i], what.c_str());
    if (mats_[i].rows() != n) {
      throw DimensionError(what + " is " + std::to_string(mats_[i].rows()) +
                           "x" + std::to_string(mats_[i].rows()) +
                           " but the set dimension is " + std::to_string(n));
    }
    require_finite(mats_[i], what.c_str());
    if ((mats_[i].array() < 0.0).any()) nonnegative_ = false;
  }
}

bool MatrixSet::all_zero() const {
  return std::all_of(mats_.begin(), mats_.end(),
                     [](const Matrix& a) { return a.isZero(0.0); });
}

double MatrixSet::max_spectral_norm() const {
  double s = 0.0;
  for (const Matrix& a : mats_) s = std::max(s, spectral_norm(a));
  return s;
}

MatrixSet MatrixSet::scaled(double c) const {
  std::vector<Matrix> out;
  out.reserve(mats_.size());
  for (const Matrix& a : mats_) out.push_back(c * a);
  return MatrixSet(std::move(out), cone_asserted_);
}

}  // namespace jsr
