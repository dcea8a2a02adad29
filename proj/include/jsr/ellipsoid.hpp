#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "jsr/matrix_set.hpp"
#include "jsr/radius.hpp"

namespace jsr {

/// A pair (X, tau) with X positive definite and tau X - A_i X A_i^T PSD for
/// every i. Any such pair proves JSR <= sqrt(tau).
struct EllipsoidCertificate {
  Matrix X;
  double tau = 0.0;
  /// Smallest scaled constraint margin, see CertificateCheck.
  double slack = 0.0;
};

struct EllipsoidTolerances {
  /// lambda_min(X) >= pd_floor * trace(X) / n
  double pd_floor = 1e-9;
  /// lambda_min(tau X - A_i X A_i^T) >= -psd_tol * tau * ||X||
  double psd_tol = 1e-9;
};

struct CertificateCheck {
  bool valid = false;
  /// lambda_min(X) / (trace(X) / n)
  double pd_margin = 0.0;
  /// lambda_min(tau X - A_i X A_i^T) / (tau ||X||), one per matrix.
  std::vector<double> constraint_margins;
  double slack = 0.0;  // min of constraint_margins
};

/// Checks every constraint by explicit symmetric eigenvalue computations.
/// Throws DimensionError if X does not match the set.
CertificateCheck verify_certificate(const MatrixSet& set, const EllipsoidCertificate& cert,
                                    const EllipsoidTolerances& tol = {});

/// rho(B)^{1/2} for B: X -> sum_i A_i X A_i^T on symmetric matrices.
double lifted_sum_radius(const MatrixSet& set, const EngineOptions& opts = {});

/// Certificate built from the Perron eigenvector of B (a PSD matrix, lightly
/// regularized to be definite); its tau does not exceed rho(B) up to the
/// regularization.
EllipsoidCertificate initial_certificate(const MatrixSet& set, const EngineOptions& opts = {},
                                         const EllipsoidTolerances& tol = {});

/// Pluggable search for X with tau X - A_i X A_i^T > 0 at a fixed tau.
class FeasibilityBackend {
 public:
  virtual ~FeasibilityBackend() = default;
  /// Returns a candidate X (not yet certified) or nothing.
  virtual std::optional<Matrix> find(const MatrixSet& set, double tau,
                                     const Matrix& warm_start) = 0;
};

/// Projected subgradient descent on f(X) = max_i lambda_max(A_i X A_i^T - tau X)
/// over {trace X = n, X >= floor I}. Deterministic step schedule.
class SubgradientBackend final : public FeasibilityBackend {
 public:
  explicit SubgradientBackend(int max_steps = 500, double pd_floor = 1e-9)
      : max_steps_(max_steps), pd_floor_(pd_floor) {}
  std::optional<Matrix> find(const MatrixSet& set, double tau,
                             const Matrix& warm_start) override;

 private:
  int max_steps_;
  double pd_floor_;
};

struct EllipsoidOptions {
  double tol = 1e-6;
  int bisection_levels = 20;
  int subgradient_steps = 500;
  EllipsoidTolerances tolerances;
  EngineOptions engine;
  /// Defaults to SubgradientBackend.
  std::shared_ptr<FeasibilityBackend> backend;
};

struct EllipsoidResult {
  double rho_hat = 0.0;  // sqrt(cert.tau)
  EllipsoidCertificate cert;
  double lifted_sum_radius = 0.0;
  /// Bisection levels that produced a better certificate.
  int improvements = 0;
};

/// Best certified ellipsoid-norm bound found by bisection on tau from the
/// initial certificate. rho_hat is always backed by a verified certificate
/// and never exceeds the initial one.
EllipsoidResult ellipsoid_approx(const MatrixSet& set, const EllipsoidOptions& opts = {});

}  // namespace jsr
