#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "jsr/errors.hpp"

namespace jsr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default upper limit on the side length of any matrix we materialize.
inline constexpr std::size_t kDefaultDenseSideLimit = 4096;

/// Throws ValidationError if any entry is NaN or infinite.
void require_finite(const Matrix& a, const char* what = "matrix");
/// Throws DimensionError if `a` is not square.
void require_square(const Matrix& a, const char* what = "matrix");

bool is_symmetric(const Matrix& x, double rel_tol = 1e-12);

/// max |lambda| over the eigenvalues of a square matrix. Exact 0 for the
/// zero matrix.
double spectral_radius(const Matrix& a);

/// Largest singular value.
double spectral_norm(const Matrix& a);

/// Row-major block Kronecker product: block (i, j) of the result is a(i, j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

/// k-fold Kronecker power. Throws CapacityError when n^k exceeds
/// `side_limit`; use a matrix-free operator from lifting.hpp instead.
Matrix kron_power(const Matrix& a, int k,
                  std::size_t side_limit = kDefaultDenseSideLimit);

/// Coordinates of a symmetric n x n matrix: the upper triangle read row by
/// row, (x11, x12, ..., x1n, x22, ..., xnn), without any sqrt(2) weighting.
struct SymVec {
  std::size_t n = 0;
  Vector coords;
};

inline constexpr std::size_t sym_dim(std::size_t n) { return n * (n + 1) / 2; }

/// Throws SymmetryError unless x is symmetric to 1e-12 relative.
SymVec svec(const Matrix& x);
/// Unchecked variant used inside operator kernels; reads the upper triangle.
void svec_into(const Matrix& x, Eigen::Ref<Vector> out);
Matrix unsvec(const SymVec& v);
void unsvec_into(const Eigen::Ref<const Vector>& coords, std::size_t n,
                 Matrix& out);
/// Recovers n from a coordinate count n(n+1)/2; throws DimensionError if the
/// count is not triangular.
std::size_t side_from_sym_dim(std::size_t len);

}  // namespace jsr
