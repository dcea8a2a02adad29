#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "jsr/ellipsoid.hpp"
#include "jsr/matrix_set.hpp"
#include "jsr/radius.hpp"

namespace jsr {

enum class Method {
  average,     // rho of a convex combination, lower bound only
  sum,         // rho(sum A_i), invariant cone
  kron,        // rho(sum A_i^{(x)k})^{1/k}, invariant cone
  lift,        // rho(sum M_{A_i}^{(x)l})^{1/(2l)}, any signs
  recursive,   // depth-fold semidefinite lift, any signs
  bruteforce,  // products of length k
  ellipsoid,   // certified quadratic Lyapunov bound
};

const char* to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

enum class LiftOrder { lift_then_kron, kron_then_lift };

struct MethodParams {
  int k = 0;
  int l = 0;
  int depth = 0;
  std::vector<double> weights{};
};

/// lower <= JSR <= upper. For the sum/kron/lift/recursive families
/// lower == guaranteed_accuracy * upper.
struct CertifiedInterval {
  double lower = 0.0;
  double upper = 0.0;
  Method method = Method::sum;
  MethodParams params;
  /// A priori factor mu with mu * upper <= JSR; empty when no rate is known.
  std::optional<double> guaranteed_accuracy;
};

/// Accuracy factor of a method family: 1/m (sum), m^{-1/k} (kron),
/// m^{-1/(2l)} (lift), (1/m)^{1/2^depth} (recursive).
double guaranteed_accuracy(Method method, std::size_t m, int param);

/// rho(sum_i w_i A_i); a lower bound on the JSR for any set.
double lower_bound_average(const MatrixSet& set, std::span<const double> weights);

CertifiedInterval sum_bounds(const MatrixSet& set, const EngineOptions& opts = {});
CertifiedInterval kronecker_bounds(const MatrixSet& set, int k, const EngineOptions& opts = {});
CertifiedInterval lift_bounds(const MatrixSet& set, int l, const EngineOptions& opts = {},
                              LiftOrder order = LiftOrder::lift_then_kron);
CertifiedInterval recursive_lift_bounds(const MatrixSet& set, int depth,
                                        const EngineOptions& opts = {});

struct PlanCandidate {
  Method method = Method::kron;
  int param = 1;
  double accuracy = 1.0;
  std::optional<std::uint64_t> dim;  // empty on 64-bit overflow
  std::string dim_expr;
  double log_dim = 0.0;
};

struct ApproximationPlan {
  double epsilon = 0.0;
  Method method = Method::kron;
  MethodParams params;
  double guaranteed_accuracy = 1.0;
  std::optional<std::uint64_t> predicted_dim;
  std::string predicted_dim_expr;
  bool feasible = false;
  /// Cheapest qualifying parameter for every family considered.
  std::vector<PlanCandidate> candidates;
};

struct PlanOptions {
  bool cone_available = true;
  std::uint64_t capacity = std::uint64_t{1} << 24;
};

/// Cheapest method (by operator dimension) whose guaranteed accuracy is at
/// least 1 - epsilon. Ties prefer fewer lift stages: kron, lift, recursive.
ApproximationPlan plan_accuracy(std::size_t m, std::size_t n, double epsilon,
                                const PlanOptions& opts = {});

enum class SkipReason { hypothesis_unmet, capacity, not_converged };
const char* to_string(SkipReason r);

struct MethodOutcome {
  Method method = Method::sum;
  MethodParams params;
  std::optional<CertifiedInterval> interval;
  std::optional<SkipReason> skip;
  std::string detail;
  double elapsed_ms = 0.0;
};

struct BestBoundsOptions {
  /// Empty selects every method.
  std::set<Method> methods;
  /// Unset parameters are chosen as the largest values whose operator stays
  /// within `auto_dim`.
  std::optional<int> k, l, depth, bruteforce_k;
  std::uint64_t auto_dim = std::uint64_t{1} << 12;
  std::uint64_t auto_words = std::uint64_t{1} << 14;
  double ellipsoid_tol = 1e-6;
  EngineOptions engine;
};

struct CombinedBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_source;
  std::string upper_source;
  std::vector<MethodOutcome> outcomes;
  std::optional<EllipsoidCertificate> certificate;
};

/// Runs the selected methods, skipping (and recording) those whose
/// hypothesis, capacity or convergence fails, and intersects their
/// intervals: max of lowers, min of uppers. With no upper bound available
/// `upper` is +infinity.
CombinedBounds best_bounds(const MatrixSet& set, const BestBoundsOptions& opts = {});

}  // namespace jsr
