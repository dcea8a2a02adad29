#include "jsr/lifting.hpp"

#include <cmath>
#include <memory>
#include <vector>

#include "jsr/kernels.hpp"

namespace jsr {

namespace {

bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return __builtin_mul_overflow(a, b, &out);
}

std::uint64_t checked_pow(std::uint64_t base, int e, bool& overflow) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (mul_overflows(r, base, r)) {
      overflow = true;
      return 0;
    }
  }
  return r;
}

// n(n+1)/2 without intermediate overflow.
std::uint64_t checked_sym(std::uint64_t n, bool& overflow) {
  std::uint64_t a = n, b = n + 1;
  if (a % 2 == 0) a /= 2; else b /= 2;
  std::uint64_t r = 0;
  if (mul_overflows(a, b, r)) overflow = true;
  return r;
}

void require_param(const LiftedOperatorSpec& spec) {
  if (spec.kind != LiftKind::sdp_lift_sum && spec.param < 1) {
    throw ValidationError(std::string(to_string(spec.kind)) +
                          " needs a parameter >= 1");
  }
}

// Materialized `depth`-fold semidefinite lift of a.
Matrix repeated_lift(const Matrix& a, int depth, std::size_t side_limit) {
  Matrix cur = a;
  for (int d = 0; d < depth; ++d) {
    const std::size_t next = sym_dim(static_cast<std::size_t>(cur.rows()));
    if (next > side_limit) {
      throw CapacityError("recursive lift level of side " + std::to_string(next) +
                          " exceeds the dense side limit " +
                          std::to_string(side_limit));
    }
    cur = sdp_lift(cur);
  }
  return cur;
}

// svec(I_n)^{(x)power}
Vector kron_power_vector(const Vector& v, int power) {
  Vector out = v;
  for (int p = 1; p < power; ++p) {
    Vector next(out.size() * v.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      next.segment(i * v.size(), v.size()) = out(i) * v;
    }
    out = std::move(next);
  }
  return out;
}

Vector svec_identity(std::size_t n) {
  Vector v(static_cast<Eigen::Index>(sym_dim(n)));
  svec_into(Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)), v);
  return v;
}

using MatList = std::shared_ptr<const std::vector<Matrix>>;

LinearOperator::ApplyFn kron_sum_apply_fn(MatList mats, int k) {
  return [mats = std::move(mats), k](std::span<const double> x, std::span<double> y) {
    kernels::omp::kron_sum_apply(*mats, k, x, y);
  };
}

LinearOperator::ApplyFn sdp_sum_apply_fn(MatList mats) {
  return [mats = std::move(mats)](std::span<const double> x, std::span<double> y) {
    const std::size_t n = static_cast<std::size_t>(mats->front().rows());
    Matrix xm;
    unsvec_into(Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(x.size())), n, xm);
    Matrix acc = Matrix::Zero(xm.rows(), xm.cols());
    for (const Matrix& a : *mats) acc.noalias() += a * xm * a.transpose();
    svec_into(acc, Eigen::Map<Vector>(y.data(), static_cast<Eigen::Index>(y.size())));
  };
}

// X -> sum_i K_i X K_i^T with K_i = A_i^{(x)l} applied through the kernel.
LinearOperator::ApplyFn kron_then_lift_apply_fn(MatList mats, int l) {
  return [mats = std::move(mats), l](std::span<const double> x, std::span<double> y) {
    const auto n = static_cast<std::size_t>(mats->front().rows());
    std::size_t side = 1;
    for (int i = 0; i < l; ++i) side *= n;
    const auto s = static_cast<Eigen::Index>(side);
    Matrix xm;
    unsvec_into(Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(x.size())), side, xm);
    Matrix acc = Matrix::Zero(s, s);
    Matrix z(s, s), w(s, s);
    for (const Matrix& a : *mats) {
      std::span<const Matrix> one(&a, 1);
      for (Eigen::Index c = 0; c < s; ++c) {
        kernels::omp::kron_sum_apply(one, l, {xm.col(c).data(), side}, {z.col(c).data(), side});
      }
      Matrix zt = z.transpose();
      for (Eigen::Index c = 0; c < s; ++c) {
        kernels::omp::kron_sum_apply(one, l, {zt.col(c).data(), side}, {w.col(c).data(), side});
      }
      acc += w;  // w = K (K X)^T = K X K^T since X is symmetric
    }
    svec_into(acc, Eigen::Map<Vector>(y.data(), static_cast<Eigen::Index>(y.size())));
  };
}

}  // namespace

Matrix sdp_lift(const Matrix& a) {
  require_square(a);
  const Eigen::Index n = a.rows();
  const auto d = static_cast<Eigen::Index>(sym_dim(static_cast<std::size_t>(n)));
  Matrix m(d, d);
  Eigen::Index col = 0;
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = p; q < n; ++q, ++col) {
      // A E A^T = a_p a_q^T + a_q a_p^T for p != q, a_p a_p^T otherwise.
      Eigen::Index row = 0;
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index s = r; s < n; ++s, ++row) {
          m(row, col) = p == q ? a(r, p) * a(s, p)
                               : a(r, p) * a(s, q) + a(r, q) * a(s, p);
        }
      }
    }
  }
  return m;
}

Matrix lift_sum_dense(const MatrixSet& set, std::size_t side_limit) {
  const std::size_t d = sym_dim(set.dim());
  if (d > side_limit) {
    throw CapacityError("lifted sum of side " + std::to_string(d) +
                        " exceeds the dense side limit " + std::to_string(side_limit) +
                        "; use make_operator");
  }
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const Matrix& a : set.matrices()) sum += sdp_lift(a);
  return sum;
}

const char* to_string(LiftKind kind) {
  switch (kind) {
    case LiftKind::kron_sum: return "kron_sum";
    case LiftKind::sdp_lift_sum: return "sdp_lift_sum";
    case LiftKind::mixed_lift_then_kron: return "mixed_lift_then_kron";
    case LiftKind::mixed_kron_then_lift: return "mixed_kron_then_lift";
    case LiftKind::recursive_lift: return "recursive_lift";
  }
  return "unknown";
}

std::uint64_t lifted_dimension(std::uint64_t n, const LiftedOperatorSpec& spec) {
  require_param(spec);
  bool overflow = false;
  std::uint64_t dim = 0;
  switch (spec.kind) {
    case LiftKind::kron_sum:
      dim = checked_pow(n, spec.param, overflow);
      break;
    case LiftKind::sdp_lift_sum:
      dim = checked_sym(n, overflow);
      break;
    case LiftKind::mixed_lift_then_kron: {
      const std::uint64_t s = checked_sym(n, overflow);
      if (!overflow) dim = checked_pow(s, spec.param, overflow);
      break;
    }
    case LiftKind::mixed_kron_then_lift: {
      const std::uint64_t p = checked_pow(n, spec.param, overflow);
      if (!overflow) dim = checked_sym(p, overflow);
      break;
    }
    case LiftKind::recursive_lift:
      dim = n;
      for (int d = 0; d < spec.param && !overflow; ++d) dim = checked_sym(dim, overflow);
      break;
  }
  if (overflow) {
    throw CapacityError("lifted dimension " + lifted_dimension_expr(n, spec) +
                        " overflows 64 bits");
  }
  return dim;
}

std::string lifted_dimension_expr(std::uint64_t n, const LiftedOperatorSpec& spec) {
  const std::string ns = std::to_string(n);
  const std::string ps = std::to_string(spec.param);
  switch (spec.kind) {
    case LiftKind::kron_sum:
      return ns + "^" + ps;
    case LiftKind::sdp_lift_sum:
      return std::to_string(n * (n + 1) / 2);
    case LiftKind::mixed_lift_then_kron:
      return std::to_string(n * (n + 1) / 2) + "^" + ps;
    case LiftKind::mixed_kron_then_lift:
      return ns + "^" + ps + "(" + ns + "^" + ps + "+1)/2";
    case LiftKind::recursive_lift:
      return "n_" + ps + " of n_{j+1} = n_j(n_j+1)/2 from n_0 = " + ns;
  }
  return "?";
}

double log_lifted_dimension(std::uint64_t n, const LiftedOperatorSpec& spec) {
  require_param(spec);
  const double ln = std::log(static_cast<double>(n));
  auto log_sym = [](double log_x) {
    // log(x(x+1)/2) = log x + log(x+1) - log 2, with log(x+1) = log x + log1p(1/x)
    return 2.0 * log_x + std::log1p(std::exp(-log_x)) - std::log(2.0);
  };
  switch (spec.kind) {
    case LiftKind::kron_sum: return spec.param * ln;
    case LiftKind::sdp_lift_sum: return log_sym(ln);
    case LiftKind::mixed_lift_then_kron: return spec.param * log_sym(ln);
    case LiftKind::mixed_kron_then_lift: return log_sym(spec.param * ln);
    case LiftKind::recursive_lift: {
      double v = ln;
      for (int d = 0; d < spec.param; ++d) v = log_sym(v);
      return v;
    }
  }
  return 0.0;
}

LinearOperator make_operator(const MatrixSet& set, const LiftedOperatorSpec& spec,
                             const LiftBudget& budget) {
  const std::uint64_t dim = lifted_dimension(set.dim(), spec);
  if (dim > budget.max_dim) {
    throw CapacityError(std::string(to_string(spec.kind)) + " operator dimension " +
                        std::to_string(dim) + " exceeds the budget " +
                        std::to_string(budget.max_dim));
  }
  auto originals = std::make_shared<const std::vector<Matrix>>(set.matrices().begin(),
                                                               set.matrices().end());
  const std::size_t n = set.dim();
  LinearOperator op;
  op.dim = static_cast<std::size_t>(dim);
  op.cone_invariant = true;

  switch (spec.kind) {
    case LiftKind::kron_sum:
      op.apply = kron_sum_apply_fn(originals, spec.param);
      op.start = Vector::Ones(static_cast<Eigen::Index>(dim));
      break;
    case LiftKind::sdp_lift_sum:
      op.apply = sdp_sum_apply_fn(originals);
      op.start = svec_identity(n);
      break;
    case LiftKind::mixed_lift_then_kron: {
      if (sym_dim(n) > budget.dense_side) {
        throw CapacityError("semidefinite lift of side " + std::to_string(sym_dim(n)) +
                            " exceeds the dense side limit");
      }
      std::vector<Matrix> lifted;
      for (const Matrix& a : *originals) lifted.push_back(sdp_lift(a));
      op.apply = kron_sum_apply_fn(std::make_shared<const std::vector<Matrix>>(std::move(lifted)),
                                   spec.param);
      op.start = kron_power_vector(svec_identity(n), spec.param);
      break;
    }
    case LiftKind::mixed_kron_then_lift: {
      std::size_t side = 1;
      for (int i = 0; i < spec.param; ++i) side *= n;
      if (side > budget.dense_side) {
        throw CapacityError("Kronecker-then-lift needs symmetric matrices of side " +
                            std::to_string(side) + ", above the dense side limit");
      }
      op.apply = kron_then_lift_apply_fn(originals, spec.param);
      op.start = svec_identity(side);
      break;
    }
    case LiftKind::recursive_lift: {
      // Materialize depth-1 levels, then apply the last lift matrix-free.
      std::vector<Matrix> levels;
      for (const Matrix& a : *originals) {
        levels.push_back(repeated_lift(a, spec.param - 1, budget.dense_side));
      }
      const auto prev_side = static_cast<std::size_t>(levels.front().rows());
      op.apply = sdp_sum_apply_fn(std::make_shared<const std::vector<Matrix>>(std::move(levels)));
      op.start = svec_identity(prev_side);
      break;
    }
  }
  return op;
}

}  // namespace jsr
