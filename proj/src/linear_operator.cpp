#include "jsr/linear_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace jsr {

Vector LinearOperator::operator()(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dim) {
    throw DimensionError("operator of dimension " + std::to_string(dim) +
                         " applied to vector of length " +
                         std::to_string(x.size()));
  }
  Vector y(x.size());
  apply(std::span<const double>(x.data(), dim), std::span<double>(y.data(), dim));
  return y;
}

LinearOperator dense_operator(Matrix a, bool cone_invariant) {
  require_square(a);
  require_finite(a);
  LinearOperator op;
  op.dim = static_cast<std::size_t>(a.rows());
  op.cone_invariant = cone_invariant;
  op.apply = [a = std::move(a)](std::span<const double> x, std::span<double> y) {
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::Map<Vector>(y.data(), n).noalias() =
        a * Eigen::Map<const Vector>(x.data(), n);
  };
  return op;
}

Matrix materialize(const LinearOperator& op, std::size_t side_limit) {
  if (op.dim > side_limit) {
    throw CapacityError("cannot materialize operator of dimension " +
                        std::to_string(op.dim) + " (limit " +
                        std::to_string(side_limit) + ")");
  }
  const auto n = static_cast<Eigen::Index>(op.dim);
  Matrix out(n, n);
#pragma omp parallel for schedule(dynamic) if (n >= 64)
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector e = Vector::Zero(n);
    e(j) = 1.0;
    Vector col(n);
    op.apply(std::span<const double>(e.data(), op.dim),
             std::span<double>(col.data(), op.dim));
    out.col(j) = col;
  }
  return out;
}

PowerIterationResult power_iteration(const LinearOperator& op,
                                     const PowerIterationOptions& opts) {
  if (op.dim == 0) throw DimensionError("power iteration on an empty operator");
  if (!op.cone_invariant) {
    throw ValidationError(
        "power iteration requires a cone-invariant operator");
  }
  const auto n = static_cast<Eigen::Index>(op.dim);
  const std::size_t max_iter =
      opts.max_iter != 0 ? opts.max_iter
                         : std::clamp<std::size_t>(100 * op.dim, 1000, 50000);
  constexpr double kUnderflow = 1e-290;
  constexpr int kSettleSteps = 3;

  PowerIterationResult res;
  Vector x = op.start.size() == n ? op.start : Vector::Ones(n);
  double xn = x.norm();
  if (!(xn > 0.0)) throw ValidationError("power iteration start vector is zero");
  x /= xn;

  Vector y(n);
  double prev = std::numeric_limits<double>::quiet_NaN();
  int settled = 0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    op.apply(std::span<const double>(x.data(), op.dim),
             std::span<double>(y.data(), op.dim));
    if (opts.shift != 0.0) y += opts.shift * x;
    const double yn = y.norm();
    res.iterations = it;
    if (!std::isfinite(yn)) {
      res.converged = false;
      res.estimate = std::numeric_limits<double>::infinity();
      return res;
    }
    if (yn <= kUnderflow) {
      res.estimate = 0.0;
      res.converged = true;
      res.eigenvector = x;
      return res;
    }
    const double est = yn;
    x = y / yn;
    if (std::isfinite(prev) && std::abs(est - prev) <= opts.tol * est) {
      if (++settled >= kSettleSteps) {
        res.estimate = std::max(0.0, est - opts.shift);
        res.converged = true;
        res.eigenvector = x;
        return res;
      }
    } else {
      settled = 0;
    }
    prev = est;
  }
  res.estimate = std::max(0.0, prev - opts.shift);
  res.converged = false;
  res.eigenvector = x;
  return res;
}

}  // namespace jsr
