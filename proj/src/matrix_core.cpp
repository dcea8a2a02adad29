#include "jsr/matrix_core.hpp"

#include <cmath>
#include <string>

namespace jsr {

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw ValidationError(std::string(what) + " has non-finite entries");
  }
}

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + " is " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + ", expected square");
  }
}

bool is_symmetric(const Matrix& x, double rel_tol) {
  if (x.rows() != x.cols()) return false;
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  return (x - x.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

double spectral_radius(const Matrix& a) {
  require_square(a);
  require_finite(a);
  if (a.size() == 0 || a.isZero(0.0)) return 0.0;
  if (a.rows() == 1) return std::abs(a(0, 0));
  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("dense eigenvalue solver failed");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_norm(const Matrix& a) {
  require_finite(a);
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_power(const Matrix& a, int k, std::size_t side_limit) {
  if (k < 1) throw ValidationError("Kronecker power needs k >= 1");
  require_square(a);
  const auto n = static_cast<std::size_t>(a.rows());
  std::size_t side = 1;
  for (int i = 0; i < k; ++i) {
    if (n != 0 && side > side_limit / n) {
      throw CapacityError("Kronecker power " + std::to_string(n) + "^" +
                          std::to_string(k) + " exceeds the dense side limit " +
                          std::to_string(side_limit) +
                          "; use a matrix-free kron_sum operator");
    }
    side *= n;
  }
  Matrix out = a;
  for (int i = 1; i < k; ++i) out = kron(out, a);
  return out;
}

SymVec svec(const Matrix& x) {
  require_square(x, "svec input");
  if (!is_symmetric(x)) throw SymmetryError("svec input is not symmetric");
  const auto n = static_cast<std::size_t>(x.rows());
  SymVec v{n, Vector(sym_dim(n))};
  svec_into(x, v.coords);
  return v;
}

void svec_into(const Matrix& x, Eigen::Ref<Vector> out) {
  const Eigen::Index n = x.rows();
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) out(p++) = x(i, j);
  }
}

Matrix unsvec(const SymVec& v) {
  if (static_cast<std::size_t>(v.coords.size()) != sym_dim(v.n)) {
    throw DimensionError("SymVec length " + std::to_string(v.coords.size()) +
                         " does not match n(n+1)/2 for n = " +
                         std::to_string(v.n));
  }
  Matrix out;
  unsvec_into(v.coords, v.n, out);
  return out;
}

void unsvec_into(const Eigen::Ref<const Vector>& coords, std::size_t n,
                 Matrix& out) {
  const auto sn = static_cast<Eigen::Index>(n);
  out.resize(sn, sn);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < sn; ++i) {
    for (Eigen::Index j = i; j < sn; ++j) {
      out(i, j) = coords(p);
      out(j, i) = coords(p);
      ++p;
    }
  }
}

std::size_t side_from_sym_dim(std::size_t len) {
  auto n = static_cast<std::size_t>(
      std::floor((std::sqrt(8.0 * static_cast<double>(len) + 1.0) - 1.0) / 2.0));
  while (sym_dim(n) < len) ++n;
  while (n > 0 && sym_dim(n) > len) --n;
  if (sym_dim(n) != len) {
    throw DimensionError(std::to_string(len) +
                         " is not a symmetric coordinate count n(n+1)/2");
  }
  return n;
}

}  // namespace jsr
