#include "projcov/outcome.hpp"

#include "projcov/errors.hpp"

#include <algorithm>

namespace projcov {

void aggregate(TestOutcome& outcome) {
  if (outcome.per_projection.empty()) throw DegenerateInput("aggregate: no per-projection statistics");
  const auto [lo, hi] = std::minmax_element(outcome.per_projection.begin(), outcome.per_projection.end());
  outcome.stat_min = *lo;
  outcome.stat_max = *hi;
  outcome.cutoffs = special::max_gauss_cutoff(outcome.m, outcome.alpha, outcome.sided);

  switch (outcome.sided) {
    case Sidedness::UpperOneSided:
      outcome.reject = outcome.stat_max >= *outcome.cutoffs.c_max;
      outcome.p_value = special::max_gauss_pvalue(outcome.stat_max, outcome.m, outcome.sided);
      break;
    case Sidedness::LowerOneSided:
      outcome.reject = outcome.stat_min <= *outcome.cutoffs.c_min;
      outcome.p_value = special::max_gauss_pvalue(outcome.stat_min, outcome.m, outcome.sided);
      break;
    case Sidedness::TwoSided:
      outcome.reject = outcome.stat_max >= *outcome.cutoffs.c_max || outcome.stat_min <= *outcome.cutoffs.c_min;
      outcome.p_value = special::max_gauss_pvalue(outcome.stat_max, outcome.m, outcome.sided, outcome.stat_min);
      break;
  }
}

}  // namespace projcov
