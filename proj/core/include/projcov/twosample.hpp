#pragma once

#include "projcov/linalg.hpp"
#include "projcov/outcome.hpp"

#include <vector>

namespace projcov {

struct TwoSampleConfig {
  unsigned m = 100;
  double alpha = 0.05;
  Sidedness sided = Sidedness::UpperOneSided;
  rng::StreamKey key;
};

/// Per-projection variance ratio. Sample 1 is the numerator.
struct FProjection {
  double s1 = 0.0;
  double s2 = 0.0;
  double f = 0.0;
  double f_star = 0.0;
};

struct ProjectedVariances {
  double s1 = 0.0;
  double s2 = 0.0;
};

struct TwoSampleOutcome {
  TestOutcome outcome;  // per_projection holds the F* values
  std::vector<FProjection> projections;
};

/// Uncentered second moments of both samples projected on the same r.
ProjectedVariances projected_variances(const DataMatrix& x, const DataMatrix& y, const Vector& r);

/// ln(f) / sqrt(2/n1 + 2/n2). Throws DomainError for f <= 0.
double f_star(double f, std::size_t n1, std::size_t n2);

/// Tests Sigma_1 = Sigma_2 with m shared random projections.
/// Throws DegenerateProjection if a projected variance is exactly zero.
TwoSampleOutcome two_sample_test(const DataMatrix& x, const DataMatrix& y, const TwoSampleConfig& cfg);

/// (n1 + n2) log|c1 S1 + c2 S2| - n1 log|S1| - n2 log|S2|, calibrated against
/// chi-square with p(p+1)/2 degrees of freedom. Throws SingularCovariance
/// when p >= min(n1, n2).
LrtResult classic_lrt_two(const DataMatrix& x, const DataMatrix& y);

}  // namespace projcov
