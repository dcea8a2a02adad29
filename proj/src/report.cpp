#include "jsr/report.hpp"

#include <cmath>
#include <fstream>
#include <vector>

namespace jsr {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json params_to_json(Method method, const MethodParams& p) {
  json j = json::object();
  switch (method) {
    case Method::kron: j["k"] = p.k; break;
    case Method::bruteforce: j["k"] = p.k; break;
    case Method::lift: j["l"] = p.l; break;
    case Method::recursive: j["depth"] = p.depth; break;
    case Method::average: j["weights"] = p.weights; break;
    default: break;
  }
  return j;
}

json matrix_to_json(const Matrix& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

NamedSet parse_matrix_set(const json& doc, bool cone_asserted) {
  if (!doc.is_object()) throw ValidationError("input must be a JSON object");
  std::string name;
  if (auto it = doc.find("name"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) throw ValidationError("\"name\" must be a string");
    name = it->get<std::string>();
  }
  const auto it = doc.find("matrices");
  if (it == doc.end() || !it->is_array() || it->empty()) {
    throw ValidationError("\"matrices\" must be a nonempty array");
  }
  std::vector<Matrix> mats;
  for (std::size_t mi = 0; mi < it->size(); ++mi) {
    const json& jm = (*it)[mi];
    const std::string where = "matrix " + std::to_string(mi + 1);
    if (!jm.is_array() || jm.empty()) throw ValidationError(where + " must be a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(jm.size());
    Eigen::Index cols = -1;
    Matrix a;
    for (Eigen::Index r = 0; r < rows; ++r) {
      const json& jr = jm[static_cast<std::size_t>(r)];
      if (!jr.is_array()) throw ValidationError(where + " row " + std::to_string(r + 1) + " is not an array");
      if (cols < 0) {
        cols = static_cast<Eigen::Index>(jr.size());
        a.resize(rows, cols);
      } else if (static_cast<Eigen::Index>(jr.size()) != cols) {
        throw DimensionError(where + " has rows of different lengths");
      }
      for (Eigen::Index c = 0; c < cols; ++c) {
        const json& v = jr[static_cast<std::size_t>(c)];
        if (!v.is_number()) throw ValidationError(where + " has a non-numeric entry");
        a(r, c) = v.get<double>();
      }
    }
    mats.push_back(std::move(a));
  }
  return {name, MatrixSet(std::move(mats), cone_asserted)};
}

NamedSet load_matrix_set(const std::string& path, bool cone_asserted) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
  return parse_matrix_set(doc, cone_asserted);
}

json interval_to_json(const CertifiedInterval& ci) {
  json j;
  j["method"] = to_string(ci.method);
  j["lower"] = number_or_null(ci.lower);
  j["upper"] = number_or_null(ci.upper);
  j["params"] = params_to_json(ci.method, ci.params);
  j["guaranteed_accuracy"] =
      ci.guaranteed_accuracy ? json(*ci.guaranteed_accuracy) : json(nullptr);
  return j;
}

json make_report(const NamedSet& input, const CombinedBounds& result) {
  json rep;
  rep["schema"] = kReportSchema;
  rep["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  rep["input"] = {{"name", input.name},
                  {"m", input.set.size()},
                  {"n", input.set.dim()},
                  {"nonnegative", input.set.nonnegative()},
                  {"cone_asserted", input.set.cone_asserted()}};

  json methods = json::array();
  json timings = json::object();
  for (const MethodOutcome& o : result.outcomes) {
    json j;
    if (o.interval) {
      j = interval_to_json(*o.interval);
      j["status"] = "ok";
    } else {
      j["method"] = to_string(o.method);
      j["status"] = "skipped";
      j["params"] = params_to_json(o.method, o.params);
      j["reason"] = to_string(*o.skip);
      j["detail"] = o.detail;
    }
    methods.push_back(std::move(j));
    timings[to_string(o.method)] = o.elapsed_ms;
  }
  rep["methods"] = std::move(methods);
  rep["combined"] = {{"lower", number_or_null(result.lower)},
                     {"upper", number_or_null(result.upper)},
                     {"lower_source", result.lower_source},
                     {"upper_source", result.upper_source}};
  if (result.certificate) {
    rep["certificates"]["ellipsoid"] = {{"tau", result.certificate->tau},
                                        {"rho_hat", std::sqrt(result.certificate->tau)},
                                        {"slack", result.certificate->slack},
                                        {"X", matrix_to_json(result.certificate->X)}};
  } else {
    rep["certificates"] = json::object();
  }
  rep["timings_ms"] = std::move(timings);
  return rep;
}

json plan_to_json(std::size_t m, std::size_t n, const ApproximationPlan& plan) {
  auto dim_json = [](const std::optional<std::uint64_t>& d) {
    return d ? json(*d) : json(nullptr);
  };
  auto param_json = [](Method method, int p) {
    switch (method) {
      case Method::kron: return json{{"k", p}};
      case Method::lift: return json{{"l", p}};
      default: return json{{"depth", p}};
    }
  };
  json j;
  j["schema"] = "jsr-plan/1";
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["m"] = m;
  j["n"] = n;
  j["epsilon"] = plan.epsilon;
  j["method"] = to_string(plan.method);
  const int param = plan.method == Method::kron  ? plan.params.k
                    : plan.method == Method::lift ? plan.params.l
                                                  : plan.params.depth;
  j["params"] = param_json(plan.method, param);
  j["guaranteed_accuracy"] = plan.guaranteed_accuracy;
  j["predicted_dim"] = dim_json(plan.predicted_dim);
  j["predicted_dim_expr"] = plan.predicted_dim_expr;
  j["feasible"] = plan.feasible;
  json cands = json::array();
  for (const PlanCandidate& c : plan.candidates) {
    cands.push_back({{"method", to_string(c.method)},
                     {"params", param_json(c.method, c.param)},
                     {"guaranteed_accuracy", c.accuracy},
                     {"predicted_dim", dim_json(c.dim)},
                     {"predicted_dim_expr", c.dim_expr}});
  }
  j["candidates"] = std::move(cands);
  return j;
}

}  // namespace jsr
