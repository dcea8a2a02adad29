#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "jsr/matrix_core.hpp"

namespace jsr {

/// A square linear map known only through its action on vectors.
///
/// `apply(x, y)` writes op(x) into y; both spans have length `dim`. The
/// callable must be safe to invoke concurrently from several threads.
/// `cone_invariant` promises that a proper cone is mapped into itself and
/// `start` is a point in the interior of that cone (empty means the
/// all-ones vector, i.e. the nonnegative orthant).
struct LinearOperator {
  using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;

  std::size_t dim = 0;
  ApplyFn apply;
  bool cone_invariant = false;
  Vector start;

  Vector operator()(const Vector& x) const;
};

/// Wraps a dense square matrix.
LinearOperator dense_operator(Matrix a, bool cone_invariant);

/// Builds the dense matrix of `op` column by column.
Matrix materialize(const LinearOperator& op,
                   std::size_t side_limit = kDefaultDenseSideLimit);

struct PowerIterationResult {
  double estimate = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  Vector eigenvector;  // unit Euclidean norm
};

struct PowerIterationOptions {
  double tol = 1e-10;
  /// 0 selects 100 * dim clamped to [1000, 50000].
  std::size_t max_iter = 0;
  /// Iterates on op + shift * I and reports the estimate minus shift. A
  /// positive shift separates the Perron root of a cone-invariant operator
  /// from other eigenvalues on the spectral circle.
  double shift = 0.0;
};

/// Dominant eigenvalue of a cone-invariant operator by normalized power
/// iteration from `op.start`. The estimate is ||op x|| for the unit iterate
/// x; convergence means the relative change stayed below tol for several
/// consecutive steps. An iterate that collapses to zero returns (0, true).
PowerIterationResult power_iteration(const LinearOperator& op,
                                     const PowerIterationOptions& opts = {});

}  // namespace jsr
