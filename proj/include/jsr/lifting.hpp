#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "jsr/linear_operator.hpp"
#include "jsr/matrix_set.hpp"

namespace jsr {

/// Matrix of X -> A X A^T on symmetric matrices in svec coordinates. Column
/// j is svec(A E_j A^T) for the basis E_11, E_12 + E_21, ..., E_nn.
Matrix sdp_lift(const Matrix& a);

/// Sum of sdp_lift over the set. Throws CapacityError if n(n+1)/2 exceeds
/// `side_limit`.
Matrix lift_sum_dense(const MatrixSet& set,
                      std::size_t side_limit = kDefaultDenseSideLimit);

enum class LiftKind {
  kron_sum,              // sum_i A_i^{(x)k}
  sdp_lift_sum,          // sum_i M_{A_i}
  mixed_lift_then_kron,  // sum_i (M_{A_i})^{(x)l}
  mixed_kron_then_lift,  // sum_i M_{A_i^{(x)l}}
  recursive_lift,        // sum_i A_i lifted `depth` times
};

const char* to_string(LiftKind kind);

struct LiftedOperatorSpec {
  LiftKind kind = LiftKind::sdp_lift_sum;
  /// k for kron_sum, l for the mixed kinds, depth for recursive_lift.
  /// Ignored for sdp_lift_sum.
  int param = 1;

  static LiftedOperatorSpec kron_sum(int k) { return {LiftKind::kron_sum, k}; }
  static LiftedOperatorSpec sdp_lift_sum() { return {LiftKind::sdp_lift_sum, 1}; }
  static LiftedOperatorSpec lift_then_kron(int l) { return {LiftKind::mixed_lift_then_kron, l}; }
  static LiftedOperatorSpec kron_then_lift(int l) { return {LiftKind::mixed_kron_then_lift, l}; }
  static LiftedOperatorSpec recursive(int depth) { return {LiftKind::recursive_lift, depth}; }
};

/// Exact operator dimension for a base dimension n. Throws CapacityError on
/// 64-bit overflow, quoting the symbolic value.
std::uint64_t lifted_dimension(std::uint64_t n, const LiftedOperatorSpec& spec);

/// Human-readable form of the dimension, e.g. "5^11" or "15^11".
std::string lifted_dimension_expr(std::uint64_t n, const LiftedOperatorSpec& spec);

/// log of the dimension, usable when the exact value overflows.
double log_lifted_dimension(std::uint64_t n, const LiftedOperatorSpec& spec);

struct LiftBudget {
  /// Longest vector a matrix-free operator may act on.
  std::size_t max_dim = std::size_t{1} << 24;
  /// Largest side of any intermediate matrix that gets materialized.
  std::size_t dense_side = kDefaultDenseSideLimit;
};

/// Matrix-free cone-invariant operator for the requested lift of the set.
/// The start vector is an interior point of the preserved cone: all ones for
/// kron_sum, svec(I) (or its Kronecker power) for the semidefinite kinds.
LinearOperator make_operator(const MatrixSet& set, const LiftedOperatorSpec& spec,
                             const LiftBudget& budget = {});

}  // namespace jsr
