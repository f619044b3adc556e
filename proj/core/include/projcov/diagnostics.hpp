#pragma once

#include "projcov/randsrc.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace projcov::diagnostics {

/// Sample covariance of paired draws with the standard error of that estimate.
struct CovarianceEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::optional<double> target;  // theoretical value, when one exists
  std::size_t pairs = 0;

  /// |estimate - target| in units of standard_error.
  double z_score() const;
};

/// Unbiased sample covariance of (a_k, b_k); the standard error is the
/// standard deviation of the centered products over sqrt(N).
CovarianceEstimate sample_covariance(std::span<const double> a, std::span<const double> b);

/// Cov(x^T R_i R_i^T x, x^T R_j R_j^T x) under x ~ N(0, I_p), fresh x, R_i,
/// R_j per pair. Target 2/p.
CovarianceEstimate quadratic_form_covariance(std::size_t p, std::size_t pairs, const rng::StreamKey& key);

struct StatisticCovariances {
  CovarianceEstimate standardized;  // (sum Y^2 - n) / sqrt(2n), target 1/p
  CovarianceEstimate transformed;   // sqrt(2 sum Y^2) - sqrt(2n - 1), no closed-form target
};

/// Covariances of the per-projection statistics of two independent
/// projections applied to the same fresh n x p null sample, one sample per pair.
StatisticCovariances statistic_covariances(std::size_t p, std::size_t n, std::size_t pairs, const rng::StreamKey& key);

struct PatnaikDiagnostic {
  double k1 = 0.0;  // sum of eigenvalues of S = X^T X / n
  double k2 = 0.0;  // 2 * sum of squared eigenvalues
  double shape = 0.0;  // k1^2 / k2
  double half_moment = 0.0;  // gamma-function route
  double expansion = 0.0;    // sqrt(k2/k1) * (a^{1/2} - a^{-1/2}/8)
  double relative_gap = 0.0;
  double monte_carlo = 0.0;  // mean of sqrt(z^T S z), z ~ N(0, I_p)
  double monte_carlo_se = 0.0;
  std::size_t draws = 0;
};

/// Draws one n x p null sample, takes its second-moment spectrum and compares
/// the moment-matched half moment with its expansion and a Monte Carlo mean.
PatnaikDiagnostic patnaik_diagnostic(std::size_t p, std::size_t n, std::size_t draws, const rng::StreamKey& key);

}  // namespace projcov::diagnostics
