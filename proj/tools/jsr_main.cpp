// jsr: certified joint spectral radius bounds from the command line.
//
//   jsr bound set.json [--method kron --k 4] [--assert-cone] [--quiet] ...
//   jsr plan --m 3 --n 5 --epsilon 0.05

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jsr/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct BoundArgs {
  std::string file;
  std::string method = "all";
  std::optional<int> k, l, depth, bruteforce_k;
  bool assert_cone = false;
  std::optional<std::uint64_t> budget_dim;
  double tol = 1e-6;
  bool quiet = false;
};

struct PlanArgs {
  std::size_t m = 0;
  std::size_t n = 0;
  double epsilon = 0.0;
  bool no_cone = false;
  std::optional<std::uint64_t> budget_dim;
};

int run_bound(const BoundArgs& args) {
  jsr::NamedSet input = jsr::load_matrix_set(args.file, args.assert_cone);

  jsr::BestBoundsOptions opts;
  if (args.method != "all") {
    const auto m = jsr::parse_method(args.method);
    if (!m) throw jsr::ValidationError("unknown method " + args.method);
    opts.methods = {*m};
  }
  opts.k = args.k;
  opts.l = args.l;
  opts.depth = args.depth;
  opts.bruteforce_k = args.bruteforce_k;
  if (opts.methods.count(jsr::Method::bruteforce) && args.k && !args.bruteforce_k) {
    opts.bruteforce_k = args.k;
  }
  opts.ellipsoid_tol = args.tol;
  if (args.budget_dim) {
    opts.engine.lift.max_dim = *args.budget_dim;
    opts.auto_dim = std::min(opts.auto_dim, *args.budget_dim);
  }

  const jsr::CombinedBounds result = jsr::best_bounds(input.set, opts);
  if (args.quiet) {
    std::printf("%.17g %.17g\n", result.lower, result.upper);
  } else {
    std::cout << jsr::make_report(input, result).dump(2) << '\n';
  }
  if (std::isfinite(result.upper)) return kExitOk;
  bool not_converged = false, skipped = false;
  for (const jsr::MethodOutcome& o : result.outcomes) {
    if (!o.skip) continue;
    skipped = true;
    not_converged = not_converged || *o.skip == jsr::SkipReason::not_converged;
  }
  if (not_converged) return kExitNumerical;
  return skipped ? kExitInput : kExitOk;
}

int run_plan(const PlanArgs& args) {
  jsr::PlanOptions po;
  po.cone_available = !args.no_cone;
  if (args.budget_dim) po.capacity = *args.budget_dim;
  const jsr::ApproximationPlan plan = jsr::plan_accuracy(args.m, args.n, args.epsilon, po);
  std::cout << jsr::plan_to_json(args.m, args.n, plan).dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified bounds on the joint spectral radius of a matrix set"};
  app.set_version_flag("--version", std::string(jsr::kToolVersion));
  app.require_subcommand(1);

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Bound the JSR of the matrices in a JSON file");
  bound_cmd->add_option("file", bound.file, "JSON file {\"matrices\": [[[...]], ...]}")
      ->required();
  bound_cmd->add_option("--method", bound.method, "Bound family to run")
      ->check(CLI::IsMember({"all", "average", "sum", "kron", "lift", "recursive",
                             "bruteforce", "ellipsoid"}));
  bound_cmd->add_option("--k", bound.k, "Kronecker power (also the word length for --method bruteforce)")
      ->check(CLI::PositiveNumber);
  bound_cmd->add_option("--l", bound.l, "Kronecker power applied after one semidefinite lift")
      ->check(CLI::PositiveNumber);
  bound_cmd->add_option("--depth", bound.depth, "Number of recursive semidefinite lifts")
      ->check(CLI::PositiveNumber);
  bound_cmd->add_option("--bruteforce-k", bound.bruteforce_k, "Product length for the brute-force bounds")
      ->check(CLI::PositiveNumber);
  bound_cmd->add_flag("--assert-cone", bound.assert_cone,
                      "Assert that the matrices share an invariant proper cone");
  bound_cmd->add_option("--budget-dim", bound.budget_dim, "Largest lifted operator dimension")
      ->check(CLI::PositiveNumber);
  bound_cmd->add_option("--tol", bound.tol, "Ellipsoid refinement tolerance")
      ->check(CLI::PositiveNumber);
  bound_cmd->add_flag("--quiet,-q", bound.quiet, "Print only \"lower upper\"");

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Choose a method for a requested relative accuracy");
  plan_cmd->add_option("--m", plan.m, "Number of matrices")->required()->check(CLI::PositiveNumber);
  plan_cmd->add_option("--n", plan.n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
  plan_cmd->add_option("--epsilon", plan.epsilon, "Requested accuracy is 1 - epsilon")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  plan_cmd->add_flag("--no-cone", plan.no_cone,
                     "No invariant cone is known: exclude the Kronecker method");
  plan_cmd->add_option("--budget-dim", plan.budget_dim, "Largest feasible operator dimension")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*bound_cmd) return run_bound(bound);
    return run_plan(plan);
  } catch (const jsr::ValidationError& e) {
    std::cerr << "jsr: " << e.what() << '\n';
    return kExitInput;
  } catch (const jsr::DimensionError& e) {
    std::cerr << "jsr: " << e.what() << '\n';
    return kExitInput;
  } catch (const jsr::Error& e) {
    std::cerr << "jsr: " << e.what() << '\n';
    return kExitNumerical;
  }
}
