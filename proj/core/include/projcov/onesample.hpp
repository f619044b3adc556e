#pragma once

#include "projcov/linalg.hpp"
#include "projcov/outcome.hpp"

#include <optional>
#include <span>

namespace projcov {

struct OneSampleConfig {
  unsigned m = 100;
  double alpha = 0.05;
  Sidedness sided = Sidedness::TwoSided;
  rng::StreamKey key;
  /// Null covariance; data are whitened by its inverse square root when set.
  std::optional<linalg::SymMatrix> sigma0;
  /// Subtract column means first and use n - 1 degrees of freedom. Off by
  /// default: the mean is taken as known zero.
  bool center = false;
};

/// Y_k = <row k, r>. Throws DimensionMismatch if r has the wrong length and
/// DomainError if r is not a unit vector (1e-10).
Vector project_series(const DataMatrix& data, const Vector& r);

/// sqrt(2 sum y^2) - sqrt(2 n - 1), n = y.size().
double one_sample_stat(std::span<const double> y);

/// (sum y^2 - n) / sqrt(2 n).
double standardized_stat(std::span<const double> y);

/// Tests Sigma = I (or Sigma = sigma0) with m random projections.
TestOutcome one_sample_test(const DataMatrix& data, const OneSampleConfig& cfg);

/// n (tr S - log|S| - p) with S = X^T X / n, calibrated against
/// chi-square with p(p+1)/2 degrees of freedom. Throws SingularCovariance for p >= n.
LrtResult classic_lrt_one(const DataMatrix& data);

}  // namespace projcov
