#include "jsr/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace jsr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ScaledRadius {
  double scale = 0.0;   // s = max_i ||A_i||
  double radius = 0.0;  // rho of the lifted operator built from A_i / s
};

ScaledRadius lifted_radius(const MatrixSet& set, const LiftedOperatorSpec& spec,
                           const EngineOptions& opts) {
  ScaledRadius out;
  out.scale = set.max_spectral_norm();
  if (out.scale == 0.0) return out;
  const LinearOperator op = make_operator(set.scaled(1.0 / out.scale), spec, opts.lift);
  out.radius = operator_spectral_radius(op, opts);
  return out;
}

void require_cone(const MatrixSet& set, const char* method) {
  if (!set.cone_hypothesis()) {
    throw HypothesisError(std::string(method) +
                          " upper bound needs matrices that leave a common proper cone "
                          "invariant: the set is not entrywise nonnegative and no cone "
                          "was asserted");
  }
}

void require_positive(int value, const char* name) {
  if (value < 1) throw ValidationError(std::string(name) + " must be >= 1");
}

CertifiedInterval cone_interval(const MatrixSet& set, int k, Method method,
                                const EngineOptions& opts) {
  CertifiedInterval out;
  out.method = method;
  if (method == Method::kron) out.params.k = k;
  out.guaranteed_accuracy = guaranteed_accuracy(method, set.size(), k);
  if (set.size() == 1) {
    // Single matrix: the JSR is rho(A) whatever its signs.
    out.upper = out.lower = spectral_radius(set[0]);
    return out;
  }
  require_cone(set, to_string(method));
  const ScaledRadius r = lifted_radius(set, LiftedOperatorSpec::kron_sum(k), opts);
  out.upper = r.scale * std::pow(r.radius, 1.0 / k);
  out.lower = *out.guaranteed_accuracy * out.upper;
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

int largest_within(int lo, int hi, auto&& fits) {
  int best = lo;
  for (int p = lo; p <= hi; ++p) {
    if (fits(p)) best = p;
    else break;
  }
  return best;
}

bool dim_fits(std::size_t n, const LiftedOperatorSpec& spec, std::uint64_t cap) {
  try {
    return lifted_dimension(n, spec) <= cap;
  } catch (const CapacityError&) {
    return false;
  }
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::average: return "average";
    case Method::sum: return "sum";
    case Method::kron: return "kron";
    case Method::lift: return "lift";
    case Method::recursive: return "recursive";
    case Method::bruteforce: return "bruteforce";
    case Method::ellipsoid: return "ellipsoid";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::average, Method::sum, Method::kron, Method::lift,
                   Method::recursive, Method::bruteforce, Method::ellipsoid}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

const char* to_string(SkipReason r) {
  switch (r) {
    case SkipReason::hypothesis_unmet: return "hypothesis_unmet";
    case SkipReason::capacity: return "capacity";
    case SkipReason::not_converged: return "not_converged";
  }
  return "unknown";
}

double guaranteed_accuracy(Method method, std::size_t m, int param) {
  const auto md = static_cast<double>(m);
  switch (method) {
    case Method::sum: return 1.0 / md;
    case Method::kron: return std::pow(md, -1.0 / param);
    case Method::lift: return std::pow(md, -1.0 / (2.0 * param));
    case Method::recursive: return std::pow(1.0 / md, 1.0 / std::ldexp(1.0, param));
    default:
      throw ValidationError(std::string("no a priori accuracy for method ") + to_string(method));
  }
}

double lower_bound_average(const MatrixSet& set, std::span<const double> weights) {
  if (weights.size() != set.size()) {
    throw ValidationError("expected " + std::to_string(set.size()) + " weights, got " +
                          std::to_string(weights.size()));
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw ValidationError("weights must be finite and >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("weights must sum to 1 (sum is " + std::to_string(total) + ")");
  }
  Matrix avg = Matrix::Zero(static_cast<Eigen::Index>(set.dim()),
                            static_cast<Eigen::Index>(set.dim()));
  for (std::size_t i = 0; i < set.size(); ++i) avg += weights[i] * set[i];
  return spectral_radius(avg);
}

CertifiedInterval sum_bounds(const MatrixSet& set, const EngineOptions& opts) {
  return cone_interval(set, 1, Method::sum, opts);
}

CertifiedInterval kronecker_bounds(const MatrixSet& set, int k, const EngineOptions& opts) {
  require_positive(k, "Kronecker power k");
  return cone_interval(set, k, Method::kron, opts);
}

CertifiedInterval lift_bounds(const MatrixSet& set, int l, const EngineOptions& opts,
                              LiftOrder order) {
  require_positive(l, "lift power l");
  const LiftedOperatorSpec spec = order == LiftOrder::lift_then_kron
                                      ? LiftedOperatorSpec::lift_then_kron(l)
                                      : LiftedOperatorSpec::kron_then_lift(l);
  const ScaledRadius r = lifted_radius(set, spec, opts);
  CertifiedInterval out;
  out.method = Method::lift;
  out.params.l = l;
  out.guaranteed_accuracy = guaranteed_accuracy(Method::lift, set.size(), l);
  out.upper = r.scale * std::pow(r.radius, 1.0 / (2.0 * l));
  out.lower = *out.guaranteed_accuracy * out.upper;
  return out;
}

CertifiedInterval recursive_lift_bounds(const MatrixSet& set, int depth,
                                        const EngineOptions& opts) {
  require_positive(depth, "recursion depth");
  const ScaledRadius r = lifted_radius(set, LiftedOperatorSpec::recursive(depth), opts);
  CertifiedInterval out;
  out.method = Method::recursive;
  out.params.depth = depth;
  out.guaranteed_accuracy = guaranteed_accuracy(Method::recursive, set.size(), depth);
  out.upper = r.scale * std::pow(r.radius, 1.0 / std::ldexp(1.0, depth));
  out.lower = *out.guaranteed_accuracy * out.upper;
  return out;
}

ApproximationPlan plan_accuracy(std::size_t m, std::size_t n, double epsilon,
                                const PlanOptions& opts) {
  if (m < 1 || n < 1) throw ValidationError("plan needs m >= 1 and n >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");

  auto make_candidate = [&](Method method, int param) {
    PlanCandidate c;
    c.method = method;
    c.param = param;
    c.accuracy = m == 1 ? 1.0 : guaranteed_accuracy(method, m, param);
    LiftedOperatorSpec spec;
    switch (method) {
      case Method::kron: spec = LiftedOperatorSpec::kron_sum(param); break;
      case Method::lift: spec = LiftedOperatorSpec::lift_then_kron(param); break;
      default: spec = LiftedOperatorSpec::recursive(param); break;
    }
    c.dim_expr = lifted_dimension_expr(n, spec);
    c.log_dim = log_lifted_dimension(n, spec);
    try {
      c.dim = lifted_dimension(n, spec);
    } catch (const CapacityError&) {
    }
    return c;
  };

  ApproximationPlan plan;
  plan.epsilon = epsilon;
  const double target = 1.0 - epsilon;

  if (m == 1) {
    plan.candidates.push_back(make_candidate(Method::kron, 1));
  } else {
    // Accuracy m^{-1/x} >= target  <=>  x >= q.
    const double q = std::log(static_cast<double>(m)) / -std::log(target);
    auto smallest = [&](Method method, int guess) {
      int p = std::max(1, guess);
      while (guaranteed_accuracy(method, m, p) < target) ++p;
      while (p > 1 && guaranteed_accuracy(method, m, p - 1) >= target) --p;
      return p;
    };
    if (opts.cone_available) {
      plan.candidates.push_back(
          make_candidate(Method::kron, smallest(Method::kron, static_cast<int>(std::ceil(q)))));
    }
    plan.candidates.push_back(make_candidate(
        Method::lift, smallest(Method::lift, static_cast<int>(std::ceil(q / 2.0)))));
    plan.candidates.push_back(make_candidate(
        Method::recursive,
        smallest(Method::recursive, static_cast<int>(std::ceil(std::log2(std::max(q, 1.0)))))));
  }

  // Candidates are listed kron, lift, recursive, so a stable minimum keeps
  // the tie-breaking order.
  auto cheaper = [](const PlanCandidate& a, const PlanCandidate& b) {
    if (a.dim && b.dim) return *a.dim < *b.dim;
    return a.log_dim < b.log_dim * (1.0 - 1e-12);
  };
  const PlanCandidate& best = *std::min_element(plan.candidates.begin(),
                                                plan.candidates.end(), cheaper);
  plan.method = best.method;
  switch (best.method) {
    case Method::kron: plan.params.k = best.param; break;
    case Method::lift: plan.params.l = best.param; break;
    default: plan.params.depth = best.param; break;
  }
  plan.guaranteed_accuracy = best.accuracy;
  plan.predicted_dim = best.dim;
  plan.predicted_dim_expr = best.dim_expr;
  plan.feasible = best.dim.has_value() && *best.dim <= opts.capacity;
  return plan;
}

CombinedBounds best_bounds(const MatrixSet& set, const BestBoundsOptions& opts) {
  const std::size_t n = set.dim();
  const std::size_t m = set.size();
  const EngineOptions& eng = opts.engine;
  auto selected = [&](Method x) { return opts.methods.empty() || opts.methods.count(x) > 0; };

  const std::uint64_t cap = std::min<std::uint64_t>(opts.auto_dim, eng.lift.max_dim);
  const int k = opts.k.value_or(largest_within(1, 8, [&](int p) {
    return dim_fits(n, LiftedOperatorSpec::kron_sum(p), cap);
  }));
  const int l = opts.l.value_or(largest_within(1, 3, [&](int p) {
    return dim_fits(n, LiftedOperatorSpec::lift_then_kron(p), cap);
  }));
  const int depth = opts.depth.value_or(largest_within(1, 5, [&](int p) {
    return dim_fits(n, LiftedOperatorSpec::recursive(p), cap) &&
           (p == 1 || dim_fits(n, LiftedOperatorSpec::recursive(p - 1), eng.lift.dense_side));
  }));
  const std::uint64_t word_cap = std::min(opts.auto_words, eng.word_budget);
  const int bf_k = opts.bruteforce_k.value_or(largest_within(1, 12, [&](int p) {
    double words = std::pow(static_cast<double>(m), p);
    return words <= static_cast<double>(word_cap);
  }));

  CombinedBounds out;
  auto run = [&](Method method, MethodParams params, auto&& compute) {
    if (!selected(method)) return;
    MethodOutcome o;
    o.method = method;
    o.params = std::move(params);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o.interval = compute();
    } catch (const HypothesisError& e) {
      o.skip = SkipReason::hypothesis_unmet;
      o.detail = e.what();
    } catch (const CapacityError& e) {
      o.skip = SkipReason::capacity;
      o.detail = e.what();
    } catch (const ConvergenceError& e) {
      o.skip = SkipReason::not_converged;
      o.detail = e.what();
    }
    o.elapsed_ms = elapsed_ms(t0);
    out.outcomes.push_back(std::move(o));
  };

  const std::vector<double> uniform(m, 1.0 / static_cast<double>(m));
  run(Method::average, MethodParams{.weights = uniform}, [&] {
    CertifiedInterval ci;
    ci.method = Method::average;
    ci.params.weights = uniform;
    ci.lower = lower_bound_average(set, uniform);
    ci.upper = kInf;
    return ci;
  });
  run(Method::sum, {}, [&] { return sum_bounds(set, eng); });
  run(Method::kron, MethodParams{.k = k}, [&] { return kronecker_bounds(set, k, eng); });
  run(Method::lift, MethodParams{.l = l}, [&] { return lift_bounds(set, l, eng); });
  run(Method::recursive, MethodParams{.depth = depth},
      [&] { return recursive_lift_bounds(set, depth, eng); });
  run(Method::bruteforce, MethodParams{.k = bf_k}, [&] {
    BruteForceOptions bo;
    bo.word_budget = eng.word_budget;
    const BruteForceBounds b = brute_force_bounds(set, bf_k, bo);
    CertifiedInterval ci;
    ci.method = Method::bruteforce;
    ci.params.k = bf_k;
    ci.lower = b.lower;
    ci.upper = b.upper;
    return ci;
  });
  run(Method::ellipsoid, {}, [&] {
    EllipsoidOptions eo;
    eo.tol = opts.ellipsoid_tol;
    eo.engine = eng;
    const EllipsoidResult r = ellipsoid_approx(set, eo);
    out.certificate = r.cert;
    CertifiedInterval ci;
    ci.method = Method::ellipsoid;
    ci.upper = r.rho_hat;
    ci.lower = r.rho_hat / std::sqrt(static_cast<double>(m));
    return ci;
  });

  out.lower = 0.0;
  out.upper = kInf;
  for (const MethodOutcome& o : out.outcomes) {
    if (!o.interval) continue;
    if (out.lower_source.empty() || o.interval->lower > out.lower) {
      out.lower = o.interval->lower;
      out.lower_source = to_string(o.method);
    }
    if (o.interval->upper < out.upper) {
      out.upper = o.interval->upper;
      out.upper_source = to_string(o.method);
    }
  }
  if (out.lower > out.upper) {
    // Tight intervals from different methods can cross by rounding only.
    if (out.lower - out.upper <= 1e-9 * out.upper) {
      out.lower = out.upper;
    } else {
      throw Error("inconsistent bounds: lower " + std::to_string(out.lower) + " from " +
                  out.lower_source + " exceeds upper " + std::to_string(out.upper) +
                  " from " + out.upper_source);
    }
  }
  return out;
}

}  // namespace jsr
