#include "projcov/diagnostics.hpp"

#include "projcov/datagen.hpp"
#include "projcov/errors.hpp"
#include "projcov/linalg.hpp"
#include "projcov/onesample.hpp"
#include "projcov/special.hpp"

#include <cmath>
#include <vector>

namespace projcov::diagnostics {

double CovarianceEstimate::z_score() const {
  if (!target) return 0.0;
  if (standard_error == 0.0) return estimate == *target ? 0.0 : INFINITY;
  return std::abs(estimate - *target) / standard_error;
}

CovarianceEstimate sample_covariance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("sample_covariance: series lengths differ");
  if (a.size() < 2) throw DegenerateInput("sample_covariance: need at least 2 pairs");
  const auto n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    mean_a += a[k];
    mean_b += b[k];
  }
  mean_a /= n;
  mean_b /= n;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double w = (a[k] - mean_a) * (b[k] - mean_b);
    sum += w;
    sum_sq += w * w;
  }
  const double mean_w = sum / n;
  const double var_w = (sum_sq - n * mean_w * mean_w) / (n - 1.0);
  CovarianceEstimate out;
  out.estimate = sum / (n - 1.0);
  out.standard_error = std::sqrt(std::max(var_w, 0.0) / n);
  out.pairs = a.size();
  return out;
}

CovarianceEstimate quadratic_form_covariance(std::size_t p, std::size_t pairs, const rng::StreamKey& key) {
  if (p == 0) throw DomainError("quadratic_form_covariance: p must be >= 1");
  std::vector<double> a(pairs);
  std::vector<double> b(pairs);
  for (std::size_t k = 0; k < pairs; ++k) {
    const Vector x = rng::gaussian_vector(p, key.child({k, 0}));
    const double yi = rng::unit_projection(p, key.child({k, 1})).dot(x);
    const double yj = rng::unit_projection(p, key.child({k, 2})).dot(x);
    a[k] = yi * yi;
    b[k] = yj * yj;
  }
  CovarianceEstimate out = sample_covariance(a, b);
  out.target = 2.0 / static_cast<double>(p);
  return out;
}

StatisticCovariances statistic_covariances(std::size_t p, std::size_t n, std::size_t pairs, const rng::StreamKey& key) {
  if (p == 0 || n == 0) throw DomainError("statistic_covariances: p and n must be >= 1");
  const datagen::Scenario null_scenario({datagen::NullIdentity{}, n, p});
  std::vector<double> std_i(pairs);
  std::vector<double> std_j(pairs);
  std::vector<double> sqrt_i(pairs);
  std::vector<double> sqrt_j(pairs);
  for (std::size_t k = 0; k < pairs; ++k) {
    const DataMatrix x = null_scenario.sample(key.child({k, 0}));
    const Vector yi = x * rng::unit_projection(p, key.child({k, 1}));
    const Vector yj = x * rng::unit_projection(p, key.child({k, 2}));
    const std::span<const double> si(yi.data(), n);
    const std::span<const double> sj(yj.data(), n);
    std_i[k] = standardized_stat(si);
    std_j[k] = standardized_stat(sj);
    sqrt_i[k] = one_sample_stat(si);
    sqrt_j[k] = one_sample_stat(sj);
  }
  StatisticCovariances out{sample_covariance(std_i, std_j), sample_covariance(sqrt_i, sqrt_j)};
  out.standardized.target = 1.0 / static_cast<double>(p);
  return out;
}

PatnaikDiagnostic patnaik_diagnostic(std::size_t p, std::size_t n, std::size_t draws, const rng::StreamKey& key) {
  if (p == 0 || n == 0) throw DomainError("patnaik_diagnostic: p and n must be >= 1");
  const DataMatrix x = datagen::gen({datagen::NullIdentity{}, n, p}, key.child(0));

  // X^T X / n and X X^T / n share their nonzero spectrum; use the smaller one.
  const linalg::SymMatrix gram =
      p <= n ? linalg::second_moment(x)
             : linalg::SymMatrix::symmetrized((x * x.transpose()) / static_cast<double>(n));
  const Vector values = linalg::sym_eigen(gram).values.cwiseMax(0.0);

  PatnaikDiagnostic out;
  out.k1 = values.sum();
  out.k2 = 2.0 * values.squaredNorm();
  out.shape = out.k1 * out.k1 / out.k2;
  out.half_moment = special::patnaik_half_moment({values.data(), static_cast<std::size_t>(values.size())});
  out.expansion = std::sqrt(out.k2 / out.k1) * special::gamma_ratio_expansion(out.shape);
  out.relative_gap = std::abs(out.expansion - out.half_moment) / out.half_moment;

  if (draws > 0) {
    std::vector<double> roots(draws);
    for (std::size_t k = 0; k < draws; ++k) {
      const Vector z = rng::gaussian_vector(p, key.child({1, k}));
      roots[k] = std::sqrt((x * z).squaredNorm() / static_cast<double>(n));
    }
    double mean = 0.0;
    for (const double r : roots) mean += r;
    mean /= static_cast<double>(draws);
    double ss = 0.0;
    for (const double r : roots) ss += (r - mean) * (r - mean);
    out.monte_carlo = mean;
    out.monte_carlo_se = draws > 1 ? std::sqrt(ss / static_cast<double>(draws - 1) / static_cast<double>(draws)) : 0.0;
    out.draws = draws;
  }
  return out;
}

}  // namespace projcov::diagnostics
