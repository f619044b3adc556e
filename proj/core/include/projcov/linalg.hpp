#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <functional>

namespace projcov {

/// n x p observations, one row per observation. Row-major so that a row is a
/// contiguous p-vector.
using DataMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

namespace linalg {

using Dense = Eigen::MatrixXd;

/// Dense symmetric matrix. Exact symmetry is checked when built from a dense
/// matrix; the generator constructor evaluates only the lower triangle and
/// mirrors it.
class SymMatrix {
public:
  /// Throws NotSymmetric if a(i,j) != a(j,i) for any pair, DomainError if
  /// a is empty or not square.
  explicit SymMatrix(Dense a);

  /// Entry (i,j), i >= j, is entry(i,j).
  SymMatrix(std::size_t dim, const std::function<double(std::size_t, std::size_t)>& entry);

  static SymMatrix identity(std::size_t dim);
  static SymMatrix diagonal(const Vector& d);

  /// (a + a^T) / 2; for products that are symmetric only up to rounding.
  static SymMatrix symmetrized(const Dense& a);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(a_.rows()); }
  double operator()(std::size_t i, std::size_t j) const { return a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  const Dense& dense() const noexcept { return a_; }

private:
  SymMatrix() = default;
  Dense a_;
};

struct EigenDecomposition {
  Vector values;  // descending
  Dense vectors;  // column k pairs with values[k]
};

struct LogDetTrace {
  double log_det;
  double trace;
};

/// Lower-triangular L with a = L L^T.
/// Throws NotPositiveDefinite when a pivot <= dim * eps * max diagonal.
Dense cholesky(const SymMatrix& a);

/// Cyclic Jacobi eigensolver. Converged once the off-diagonal Frobenius norm
/// drops below 1e-12 * ||a||_F; throws NoConvergence after 100 sweeps.
EigenDecomposition sym_eigen(const SymMatrix& a);

/// Symmetric inverse square root via the eigendecomposition.
SymMatrix inv_sqrt(const SymMatrix& a);

LogDetTrace logdet_trace(const SymMatrix& a);

/// S = X^T X / n, without centering.
SymMatrix second_moment(const DataMatrix& x);

}  // namespace linalg
}  // namespace projcov
