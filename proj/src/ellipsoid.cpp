#include "jsr/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace jsr {

namespace {

using SymSolver = Eigen::SelfAdjointEigenSolver<Matrix>;

Matrix symmetrized(const Matrix& x) { return 0.5 * (x + x.transpose()); }

double min_eigenvalue(const Matrix& x) {
  SymSolver s(symmetrized(x), Eigen::EigenvaluesOnly);
  return s.eigenvalues()(0);
}

// Smallest tau with A_i X A_i^T <= tau X for all i: max_i ||L^{-1} A_i L||^2
// where X = L L^T.
std::optional<double> min_feasible_tau(const MatrixSet& set, const Matrix& x) {
  Eigen::LLT<Matrix> llt(symmetrized(x));
  if (llt.info() != Eigen::Success) return std::nullopt;
  const Matrix l = llt.matrixL();
  double tau = 0.0;
  for (const Matrix& a : set.matrices()) {
    const Matrix c = llt.matrixL().solve(a * l);
    const double nrm = spectral_norm(c);
    tau = std::max(tau, nrm * nrm);
  }
  return tau;
}

// Trace-normalized projection onto {X = X^T, trace X = n, X >= floor I}.
Matrix project(const Matrix& x, double floor) {
  const auto n = static_cast<double>(x.rows());
  SymSolver s(symmetrized(x));
  const Vector lam = s.eigenvalues();
  auto mass = [&](double theta) { return (lam.array() - theta).max(floor).sum(); };
  double lo = lam.minCoeff() - n, hi = lam.maxCoeff();
  if (floor * n >= n) return Matrix::Identity(x.rows(), x.cols());
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) > n ? lo : hi) = mid;
  }
  const Vector clipped = (lam.array() - 0.5 * (lo + hi)).max(floor).matrix();
  Matrix out = s.eigenvectors() * clipped.asDiagonal() * s.eigenvectors().transpose();
  out = symmetrized(out);
  return out * (n / out.trace());
}

std::optional<EllipsoidCertificate> certify(const MatrixSet& set, const Matrix& x,
                                            const EllipsoidTolerances& tol) {
  const Matrix xs = symmetrized(x);
  const auto tau_min = min_feasible_tau(set, xs);
  if (!tau_min) return std::nullopt;
  if (*tau_min == 0.0) {
    EllipsoidCertificate cert{xs, 0.0, 0.0};
    const CertificateCheck chk = verify_certificate(set, cert, tol);
    if (!chk.valid) return std::nullopt;
    cert.slack = chk.slack;
    return cert;
  }
  for (double margin = 1e-8; margin <= 1e-4; margin *= 10.0) {
    EllipsoidCertificate cert{xs, *tau_min * (1.0 + margin), 0.0};
    const CertificateCheck chk = verify_certificate(set, cert, tol);
    if (chk.valid && chk.slack > 0.0) {
      cert.slack = chk.slack;
      return cert;
    }
  }
  return std::nullopt;
}

struct LiftedPerron {
  double rho_b = 0.0;
  Matrix x;
};

LiftedPerron lifted_perron(const MatrixSet& set, const EngineOptions& opts) {
  const LinearOperator op = make_operator(set, LiftedOperatorSpec::sdp_lift_sum(), opts.lift);
  const PerronPair p = operator_perron(op, opts);
  Matrix x;
  unsvec_into(p.vector, set.dim(), x);
  if (x.trace() < 0.0) x = -x;
  return {p.radius, x};
}

}  // namespace

CertificateCheck verify_certificate(const MatrixSet& set, const EllipsoidCertificate& cert,
                                    const EllipsoidTolerances& tol) {
  const auto n = static_cast<Eigen::Index>(set.dim());
  if (cert.X.rows() != n || cert.X.cols() != n) {
    throw DimensionError("certificate X is " + std::to_string(cert.X.rows()) + "x" +
                         std::to_string(cert.X.cols()) + ", set dimension is " +
                         std::to_string(n));
  }
  CertificateCheck chk;
  if (!cert.X.allFinite() || !std::isfinite(cert.tau) || cert.tau < 0.0 ||
      !is_symmetric(cert.X, 1e-12)) {
    return chk;
  }
  const Matrix x = symmetrized(cert.X);
  SymSolver sx(x, Eigen::EigenvaluesOnly);
  const double trace = x.trace();
  const double xnorm = sx.eigenvalues().cwiseAbs().maxCoeff();
  chk.pd_margin = trace > 0.0 ? sx.eigenvalues()(0) / (trace / static_cast<double>(n))
                              : -1.0;
  const double scale = (cert.tau > 0.0 ? cert.tau : 1.0) * (xnorm > 0.0 ? xnorm : 1.0);
  chk.slack = std::numeric_limits<double>::infinity();
  for (const Matrix& a : set.matrices()) {
    const double lam = min_eigenvalue(cert.tau * x - a * x * a.transpose());
    chk.constraint_margins.push_back(lam / scale);
    chk.slack = std::min(chk.slack, lam / scale);
  }
  chk.valid = chk.pd_margin >= tol.pd_floor && chk.slack >= -tol.psd_tol;
  return chk;
}

double lifted_sum_radius(const MatrixSet& set, const EngineOptions& opts) {
  const double s = set.max_spectral_norm();
  if (s == 0.0) return 0.0;
  const LinearOperator op =
      make_operator(set.scaled(1.0 / s), LiftedOperatorSpec::sdp_lift_sum(), opts.lift);
  return s * std::sqrt(operator_spectral_radius(op, opts));
}

EllipsoidCertificate initial_certificate(const MatrixSet& set, const EngineOptions& opts,
                                         const EllipsoidTolerances& tol) {
  const auto n = static_cast<Eigen::Index>(set.dim());
  const double s = set.max_spectral_norm();
  if (s == 0.0) {
    return {Matrix::Identity(n, n), 0.0, 0.0};
  }
  const MatrixSet scaled = set.scaled(1.0 / s);
  const LiftedPerron perron = lifted_perron(scaled, opts);

  // The Perron matrix is PSD; lift its spectrum just above the definiteness floor.
  const double floor = 10.0 * tol.pd_floor;
  Matrix x = perron.x;
  if (!(x.trace() > 0.0)) x = Matrix::Identity(n, n);
  x = project(x * (static_cast<double>(n) / x.trace()), floor);

  auto cert = certify(scaled, x, tol);
  if (!cert) {
    throw ConvergenceError("Perron matrix of the lifted sum could not be certified");
  }
  cert->tau *= s * s;
  cert->slack = verify_certificate(set, *cert, tol).slack;
  return *cert;
}

std::optional<Matrix> SubgradientBackend::find(const MatrixSet& set, double tau,
                                               const Matrix& warm_start) {
  const double floor = 10.0 * pd_floor_;
  Matrix x = project(warm_start, floor);
  const double step0 = 0.1 * x.norm();
  const double target = -1e-10 * tau;
  double best_f = std::numeric_limits<double>::infinity();
  Matrix best = x;

  for (int t = 0; t < max_steps_; ++t) {
    double f = -std::numeric_limits<double>::infinity();
    Matrix grad;
    for (const Matrix& a : set.matrices()) {
      SymSolver s(symmetrized(a * x * a.transpose() - tau * x));
      const Eigen::Index top = s.eigenvalues().size() - 1;
      if (s.eigenvalues()(top) > f) {
        f = s.eigenvalues()(top);
        const Vector v = s.eigenvectors().col(top);
        const Vector av = a.transpose() * v;
        grad = av * av.transpose() - tau * v * v.transpose();
      }
    }
    if (f < best_f) {
      best_f = f;
      best = x;
    }
    if (f <= target) return x;
    const double gnorm = grad.norm();
    if (!(gnorm > 0.0)) break;
    x = project(x - (step0 / std::sqrt(t + 1.0)) * (grad / gnorm), floor);
  }
  if (best_f <= target) return best;
  return std::nullopt;
}

EllipsoidResult ellipsoid_approx(const MatrixSet& set, const EllipsoidOptions& opts) {
  EllipsoidResult res;
  const auto n = static_cast<Eigen::Index>(set.dim());
  const double s = set.max_spectral_norm();
  if (s == 0.0) {
    res.cert = {Matrix::Identity(n, n), 0.0, 0.0};
    return res;
  }
  const MatrixSet scaled = set.scaled(1.0 / s);
  const double rho_b = std::pow(lifted_sum_radius(scaled, opts.engine), 2);
  res.lifted_sum_radius = s * std::sqrt(rho_b);

  EllipsoidCertificate best = initial_certificate(scaled, opts.engine, opts.tolerances);

  // tau* >= rho^2 >= max(max_i rho(A_i)^2, rho(B) / m)
  double lo = rho_b / static_cast<double>(scaled.size());
  for (const Matrix& a : scaled.matrices()) lo = std::max(lo, std::pow(spectral_radius(a), 2));
  double hi = best.tau;

  std::shared_ptr<FeasibilityBackend> backend = opts.backend;
  if (!backend) {
    backend = std::make_shared<SubgradientBackend>(opts.subgradient_steps,
                                                   opts.tolerances.pd_floor);
  }
  for (int level = 0; level < opts.bisection_levels; ++level) {
    if (std::sqrt(hi) - std::sqrt(std::max(lo, 0.0)) <= opts.tol / s) break;
    const double mid = 0.5 * (lo + hi);
    bool improved = false;
    if (auto x = backend->find(scaled, mid, best.X)) {
      if (auto cert = certify(scaled, *x, opts.tolerances); cert && cert->tau < hi) {
        best = *cert;
        hi = cert->tau;
        improved = true;
        ++res.improvements;
      }
    }
    if (!improved) lo = mid;
  }

  best.tau *= s * s;
  best.slack = verify_certificate(set, best, opts.tolerances).slack;
  res.cert = best;
  res.rho_hat = std::sqrt(best.tau);
  return res;
}

}  // namespace jsr
