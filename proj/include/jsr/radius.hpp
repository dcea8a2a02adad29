#pragma once

#include <cstddef>
#include <cstdint>

#include "jsr/bruteforce.hpp"
#include "jsr/lifting.hpp"
#include "jsr/linear_operator.hpp"

namespace jsr {

/// Size limits and iteration settings shared by every bound method.
struct EngineOptions {
  LiftBudget lift;
  /// Operators up to this dimension are materialized and solved densely.
  std::size_t dense_eig_dim = 64;
  /// Larger operators whose power iteration fails are still solved densely
  /// up to this dimension.
  std::size_t dense_fallback_dim = 1024;
  PowerIterationOptions power;
  std::uint64_t word_budget = kDefaultWordBudget;
};

struct PerronPair {
  double radius = 0.0;
  Vector vector;  // unit norm, oriented to have positive inner product with op.start
};

/// Perron root and vector of a cone-invariant operator. Power iteration from
/// op.start; on failure a shifted retry, then a dense solve when the
/// dimension allows. Throws ConvergenceError otherwise.
PerronPair operator_perron(const LinearOperator& op, const EngineOptions& opts = {});

/// rho(op): dense solve for small operators, operator_perron otherwise.
double operator_spectral_radius(const LinearOperator& op, const EngineOptions& opts = {});

}  // namespace jsr
