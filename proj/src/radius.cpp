#include "jsr/radius.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace jsr {

namespace {

PerronPair dense_perron(const LinearOperator& op) {
  const Matrix a = materialize(op);
  Eigen::EigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("dense eigenvalue solver failed");
  }
  const auto& values = solver.eigenvalues();
  const double rho = values.cwiseAbs().maxCoeff();
  // Among eigenvalues of maximal modulus pick the real positive one.
  Eigen::Index best = -1;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const std::complex<double> v = values(i);
    if (std::abs(v) >= rho * (1.0 - 1e-10) && std::abs(v.imag()) <= 1e-10 * std::max(rho, 1e-300) &&
        v.real() >= 0.0) {
      if (best < 0 || v.real() > values(best).real()) best = i;
    }
  }
  PerronPair out;
  out.radius = rho;
  const Vector start = op.start.size() == a.rows() ? op.start : Vector::Ones(a.rows());
  if (best < 0) {
    out.vector = start.normalized();
    return out;
  }
  Vector v = solver.eigenvectors().col(best).real();
  if (v.dot(start) < 0.0) v = -v;
  const double nv = v.norm();
  out.vector = nv > 0.0 ? Vector(v / nv) : start.normalized();
  return out;
}

}  // namespace

PerronPair operator_perron(const LinearOperator& op, const EngineOptions& opts) {
  PowerIterationResult r = power_iteration(op, opts.power);
  if (!r.converged) {
    PowerIterationOptions shifted = opts.power;
    shifted.shift = (std::isfinite(r.estimate) && r.estimate > 0.0) ? r.estimate : 1.0;
    r = power_iteration(op, shifted);
  }
  if (r.converged) {
    PerronPair out{r.estimate, r.eigenvector};
    const Vector start = op.start.size() == static_cast<Eigen::Index>(op.dim)
                             ? op.start
                             : Vector::Ones(static_cast<Eigen::Index>(op.dim));
    if (out.vector.dot(start) < 0.0) out.vector = -out.vector;
    return out;
  }
  if (op.dim <= opts.dense_fallback_dim) return dense_perron(op);
  throw ConvergenceError("power iteration did not converge on an operator of dimension " +
                         std::to_string(op.dim) + " after " +
                         std::to_string(r.iterations) + " steps");
}

double operator_spectral_radius(const LinearOperator& op, const EngineOptions& opts) {
  if (op.dim <= opts.dense_eig_dim) return spectral_radius(materialize(op));
  return operator_perron(op, opts).radius;
}

}  // namespace jsr
