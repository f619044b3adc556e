#pragma once

#include "projcov/randsrc.hpp"
#include "projcov/special.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace projcov {

/// Result of a max-of-m projection test plus an echo of its configuration.
struct TestOutcome {
  std::vector<double> per_projection;
  double stat_max = 0.0;
  double stat_min = 0.0;
  CutoffPair cutoffs;
  double p_value = 1.0;
  bool reject = false;

  std::size_t n = 0;   // sample size (first sample for two-sample tests)
  std::size_t n2 = 0;  // second sample size; 0 for one-sample tests
  std::size_t p = 0;
  unsigned m = 0;
  double alpha = 0.0;
  Sidedness sided = Sidedness::TwoSided;
  rng::StreamKey key;
};

/// Fills the aggregate fields of an outcome from its per-projection
/// statistics: max/min, cutoffs, p-value and the closed-region decision
/// (reject at equality with a cutoff).
void aggregate(TestOutcome& outcome);

/// Classical likelihood-ratio statistic with its Wilks chi-square calibration.
struct LrtResult {
  double statistic = 0.0;
  double p_value = 1.0;
  unsigned df = 0;
};

}  // namespace projcov
