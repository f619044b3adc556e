#include "projcov/linalg.hpp"

#include "projcov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace projcov::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 100;
constexpr double kJacobiTolerance = 1e-12;

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double off_diagonal_norm(const Dense& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

SymMatrix::SymMatrix(Dense a) : a_(std::move(a)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols()) {
    throw DomainError("symmetric matrix must be square with dim >= 1, got " + std::to_string(a_.rows()) + "x" +
                      std::to_string(a_.cols()));
  }
  for (Eigen::Index j = 0; j < a_.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < a_.rows(); ++i) {
      if (a_(i, j) != a_(j, i)) {
        throw NotSymmetric("matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

SymMatrix::SymMatrix(std::size_t dim, const std::function<double(std::size_t, std::size_t)>& entry) {
  if (dim == 0) throw DomainError("symmetric matrix dim must be >= 1");
  const auto n = static_cast<Eigen::Index>(dim);
  a_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      a_(i, j) = v;
      a_(j, i) = v;
    }
  }
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  return SymMatrix(dim, [](std::size_t i, std::size_t j) { return i == j ? 1.0 : 0.0; });
}

SymMatrix SymMatrix::diagonal(const Vector& d) {
  return SymMatrix(static_cast<std::size_t>(d.size()),
                   [&d](std::size_t i, std::size_t j) { return i == j ? d(static_cast<Eigen::Index>(i)) : 0.0; });
}

SymMatrix SymMatrix::symmetrized(const Dense& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) throw DomainError("symmetrized: matrix must be square and non-empty");
  return SymMatrix(static_cast<std::size_t>(a.rows()), [&a](std::size_t i, std::size_t j) {
    const auto r = static_cast<Eigen::Index>(i);
    const auto c = static_cast<Eigen::Index>(j);
    return 0.5 * (a(r, c) + a(c, r));
  });
}

Dense cholesky(const SymMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.dim());
  const Dense& src = a.dense();
  const double max_diag = src.diagonal().maxCoeff();
  const double threshold = static_cast<double>(n) * kEps * std::max(max_diag, 0.0);

  // Row-major so the inner dot products run over contiguous memory.
  RowMajor l = RowMajor::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      const double dot = j > 0 ? l.row(i).head(j).dot(l.row(j).head(j)) : 0.0;
      l(i, j) = (src(i, j) - dot) / l(j, j);
    }
    const double pivot = src(i, i) - (i > 0 ? l.row(i).head(i).squaredNorm() : 0.0);
    if (!(pivot > threshold)) {
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(pivot) + " at index " + std::to_string(i) +
                                " is not above the rank threshold");
    }
    l(i, i) = std::sqrt(pivot);
  }
  return Dense(l);
}

EigenDecomposition sym_eigen(const SymMatrix& input) {
  const auto n = static_cast<Eigen::Index>(input.dim());
  Dense a = input.dense();
  Dense v = Dense::Identity(n, n);

  const double scale = a.norm();
  bool converged = scale == 0.0;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (off_diagonal_norm(a) <= kJacobiTolerance * scale) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && off_diagonal_norm(a) > kJacobiTolerance * scale) {
    throw NoConvergence("sym_eigen: Jacobi iteration did not converge within " + std::to_string(kMaxSweeps) +
                        " sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&a](Eigen::Index x, Eigen::Index y) { return a(x, x) > a(y, y); });

  EigenDecomposition out{Vector(n), Dense(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src);
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

SymMatrix inv_sqrt(const SymMatrix& a) {
  const EigenDecomposition eig = sym_eigen(a);
  const double largest = eig.values(0);
  const double smallest = eig.values(eig.values.size() - 1);
  const double threshold = static_cast<double>(a.dim()) * kEps * std::max(largest, 0.0);
  if (!(smallest > threshold)) {
    throw NotPositiveDefinite("inv_sqrt: smallest eigenvalue " + std::to_string(smallest) +
                              " is not above the rank threshold");
  }
  const Vector scale = eig.values.array().rsqrt().matrix();
  const Dense out = eig.vectors * scale.asDiagonal() * eig.vectors.transpose();
  return SymMatrix::symmetrized(out);
}

LogDetTrace logdet_trace(const SymMatrix& a) {
  const Dense l = cholesky(a);
  return {2.0 * l.diagonal().array().log().sum(), a.dense().trace()};
}

SymMatrix second_moment(const DataMatrix& x) {
  if (x.rows() == 0 || x.cols() == 0) throw DegenerateInput("second_moment: empty data matrix");
  const Dense s = (x.transpose() * x) / static_cast<double>(x.rows());
  return SymMatrix::symmetrized(s);
}

}  // namespace projcov::linalg
