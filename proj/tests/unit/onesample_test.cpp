#include "projcov/datagen.hpp"
#include "projcov/errors.hpp"
#include "projcov/harness.hpp"
#include "projcov/onesample.hpp"
#include "projcov/special.hpp"
#include "support/oracles.hpp"

#include <Eigen/QR>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace projcov;
using rng::StreamKey;

namespace {

DataMatrix null_data(std::size_t n, std::size_t p, const StreamKey& key) {
  return datagen::gen({datagen::NullIdentity{}, n, p}, key);
}

OneSampleConfig config(unsigned m, Sidedness sided, StreamKey key, double alpha = 0.05) {
  OneSampleConfig cfg;
  cfg.m = m;
  cfg.alpha = alpha;
  cfg.sided = sided;
  cfg.key = std::move(key);
  return cfg;
}

double rejection_rate(const datagen::ScenarioSpec& scenario, const OneSampleConfig& cfg, std::size_t reps,
                      std::uint64_t seed) {
  harness::StudySpec spec;
  spec.test = harness::OneSampleStudy{cfg, scenario};
  spec.replicates = reps;
  spec.master_key = {seed, {}};
  return harness::run_study(spec).rate;
}

}  // namespace

TEST(ProjectSeries, IdentityRowsPickCoordinate) {
  const DataMatrix x = DataMatrix::Identity(3, 3);
  Vector e1 = Vector::Zero(3);
  e1(0) = 1.0;
  EXPECT_EQ(project_series(x, e1), e1);
  EXPECT_EQ(project_series(x, -e1), -e1);
}

TEST(ProjectSeries, HandComputed) {
  DataMatrix x(2, 2);
  x << 1, 2, 3, 4;
  const Vector y = project_series(x, Vector{{0.6, 0.8}});
  EXPECT_NEAR(y(0), 2.2, 1e-15);
  EXPECT_NEAR(y(1), 5.0, 1e-15);
}

TEST(ProjectSeries, Errors) {
  const DataMatrix x = DataMatrix::Ones(4, 3);
  EXPECT_THROW(project_series(x, Vector::Ones(2) / std::sqrt(2.0)), DimensionMismatch);
  EXPECT_THROW(project_series(x, Vector::Ones(3)), DomainError);
}

TEST(OneSampleStat, KnownValues) {
  const std::vector<double> zeros(5, 0.0);
  EXPECT_NEAR(one_sample_stat(zeros), -3.0, 1e-15);
  const std::vector<double> one = {1.0, 1.0};
  EXPECT_NEAR(one_sample_stat(one), 2.0 - std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(one_sample_stat(one), 0.267949, 1e-6);
  EXPECT_THROW(one_sample_stat({}), DegenerateInput);
}

TEST(StandardizedStat, KnownValues) {
  const std::vector<double> zeros(8, 0.0);
  EXPECT_NEAR(standardized_stat(zeros), -2.0, 1e-15);
  const std::vector<double> ones(6, 1.0);
  EXPECT_EQ(standardized_stat(ones), 0.0);
  EXPECT_THROW(standardized_stat({}), DegenerateInput);
}

TEST(OneSampleStat, NullLawIsCloseToStandardNormal) {
  constexpr std::size_t kDraws = 10000;
  constexpr std::size_t kN = 200;
  std::vector<double> t(kDraws);
  for (std::size_t k = 0; k < kDraws; ++k) {
    const Vector y = rng::gaussian_vector(kN, {55, {k}});
    t[k] = one_sample_stat({y.data(), kN});
  }
  const double d = oracle::ks_distance(t, [](double x) { return static_cast<double>(oracle::phi_series(x)); });
  EXPECT_LT(d, 0.02);
}

TEST(OneSampleTest, PerProjectionStatisticsDependOnlyOnChildKeys) {
  const DataMatrix x = null_data(40, 16, {1, {}});
  const StreamKey key{2, {}};
  const TestOutcome out = one_sample_test(x, config(12, Sidedness::TwoSided, key));
  ASSERT_EQ(out.per_projection.size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) {
    const Vector y = project_series(x, rng::unit_projection(16, key.child(i)));
    EXPECT_NEAR(out.per_projection[i], one_sample_stat({y.data(), 40}), 1e-12);
  }
  const TestOutcome fewer = one_sample_test(x, config(5, Sidedness::TwoSided, key));
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(fewer.per_projection[i], out.per_projection[i], 1e-12);
}

TEST(OneSampleTest, OutcomeInvariants) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const double scale = 1.0 + 0.05 * static_cast<double>(seed % 6);
    const DataMatrix x = scale * null_data(50, 24, {seed, {0}});
    for (Sidedness s : {Sidedness::UpperOneSided, Sidedness::LowerOneSided, Sidedness::TwoSided}) {
      const TestOutcome out = one_sample_test(x, config(20, s, {seed, {1}}));
      EXPECT_EQ(out.stat_max, *std::max_element(out.per_projection.begin(), out.per_projection.end()));
      EXPECT_EQ(out.stat_min, *std::min_element(out.per_projection.begin(), out.per_projection.end()));
      EXPECT_GE(out.p_value, 0.0);
      EXPECT_LE(out.p_value, 1.0);
      if (std::abs(out.p_value - out.alpha) > 1e-12) EXPECT_EQ(out.reject, out.p_value <= out.alpha);
      EXPECT_EQ(out.n, 50u);
      EXPECT_EQ(out.n2, 0u);
      EXPECT_EQ(out.p, 24u);
    }
  }
}

TEST(OneSampleTest, InflatedScaleIsRejected) {
  const DataMatrix x = 10.0 * null_data(100, 64, {3, {}});
  const TestOutcome out = one_sample_test(x, config(10, Sidedness::UpperOneSided, {4, {}}));
  EXPECT_TRUE(out.reject);
  EXPECT_LT(out.p_value, 1e-6);
}

TEST(OneSampleTest, Deterministic) {
  const DataMatrix x = null_data(30, 20, {5, {}});
  const auto cfg = config(25, Sidedness::TwoSided, {6, {}});
  const TestOutcome a = one_sample_test(x, cfg);
  const TestOutcome b = one_sample_test(x, cfg);
  EXPECT_EQ(a.per_projection, b.per_projection);
  EXPECT_EQ(a.p_value, b.p_value);
}

TEST(OneSampleTest, IdentitySigma0MatchesDefault) {
  const DataMatrix x = null_data(30, 10, {7, {}});
  auto cfg = config(15, Sidedness::TwoSided, {8, {}});
  const TestOutcome plain = one_sample_test(x, cfg);
  cfg.sigma0 = linalg::SymMatrix::identity(10);
  EXPECT_EQ(one_sample_test(x, cfg).per_projection, plain.per_projection);
}

TEST(OneSampleTest, Sigma0WhiteningMatchesManualTransform) {
  const linalg::SymMatrix sigma0 = datagen::population_cov({datagen::ToeplitzPower{1.5, 0.5}, 1, 12});
  const DataMatrix x = datagen::gen({datagen::ToeplitzPower{1.5, 0.5}, 60, 12}, {9, {}});
  auto cfg = config(10, Sidedness::TwoSided, {10, {}});
  cfg.sigma0 = sigma0;
  const TestOutcome whitened = one_sample_test(x, cfg);
  // Independent route: whiten through the Cholesky factor, X L^{-T}. Both
  // whitening maps differ by an orthogonal rotation, so project the rotated
  // vectors instead: x^T S^{-1/2} r = x^T L^{-T} (L^T S^{-1/2} r).
  const linalg::Dense l = linalg::cholesky(sigma0);
  const linalg::Dense w = linalg::inv_sqrt(sigma0).dense();
  const DataMatrix xl = l.triangularView<Eigen::Lower>().solve(x.transpose()).transpose();
  for (std::size_t i = 0; i < 10; ++i) {
    const Vector r = rng::unit_projection(12, cfg.key.child(i));
    const Vector rotated = l.transpose() * w * r;
    ASSERT_NEAR(rotated.norm(), 1.0, 1e-10);
    const Vector y = xl * rotated;
    EXPECT_NEAR(whitened.per_projection[i], one_sample_stat({y.data(), 60}), 1e-9);
  }
}

TEST(OneSampleTest, Errors) {
  EXPECT_THROW(one_sample_test(null_data(1, 5, {}), config(3, Sidedness::TwoSided, {})), DegenerateInput);
  auto cfg = config(3, Sidedness::TwoSided, {});
  cfg.sigma0 = linalg::SymMatrix::identity(4);
  EXPECT_THROW(one_sample_test(null_data(10, 5, {}), cfg), DimensionMismatch);
  cfg.sigma0.reset();
  cfg.m = 0;
  EXPECT_THROW(one_sample_test(null_data(10, 5, {}), cfg), DomainError);
  cfg.m = 3;
  cfg.alpha = 1.5;
  EXPECT_THROW(one_sample_test(null_data(10, 5, {}), cfg), DomainError);
}

TEST(OneSampleTest, CenteringRemovesKnownMean) {
  DataMatrix x = null_data(80, 8, {11, {}});
  auto cfg = config(10, Sidedness::TwoSided, {12, {}});
  cfg.center = true;
  const TestOutcome centered = one_sample_test(x, cfg);
  x.rowwise() += Eigen::RowVectorXd::Constant(8, 50.0);
  const TestOutcome shifted = one_sample_test(x, cfg);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(centered.per_projection[i], shifted.per_projection[i], 1e-8);
  cfg.center = false;
  EXPECT_TRUE(one_sample_test(x, cfg).reject);
}

TEST(OneSampleTest, FixedProjectionSumOfSquaresIsChiSquare) {
  // With one projection held fixed, sum Y^2 over fresh null data is chi-square(n).
  constexpr std::size_t kDraws = 10000;
  constexpr std::size_t kN = 30;
  const Vector r = rng::unit_projection(20, {13, {}});
  std::vector<double> sums(kDraws);
  for (std::size_t k = 0; k < kDraws; ++k) sums[k] = project_series(null_data(kN, 20, {14, {k}}), r).squaredNorm();
  const double d = oracle::ks_distance(sums, [](double x) { return special::chi2_cdf(x, kN); });
  EXPECT_LT(d, 0.02);
}

TEST(OneSampleTest, NullSizeNearNominal) {
  const double rate = rejection_rate({datagen::NullIdentity{}, 100, 256}, config(100, Sidedness::TwoSided, {}), 1000, 21);
  EXPECT_NEAR(rate, 0.048, 0.02);
}

TEST(OneSampleTest, OrthogonalInvarianceOfRejectionRate) {
  // Q from the QR factorization of a Gaussian matrix.
  constexpr std::size_t kP = 32;
  linalg::Dense g(kP, kP);
  for (Eigen::Index j = 0; j < g.cols(); ++j) g.col(j) = rng::gaussian_vector(kP, {15, {static_cast<std::uint64_t>(j)}});
  const linalg::Dense q = Eigen::HouseholderQR<linalg::Dense>(g).householderQ();
  int plain = 0;
  int rotated = 0;
  constexpr int kReps = 500;
  for (int r = 0; r < kReps; ++r) {
    const auto rr = static_cast<std::uint64_t>(r);
    const DataMatrix x = datagen::gen({datagen::ToeplitzPower{1.3, 0.0}, 50, kP}, {16, {rr}});
    const auto cfg = config(10, Sidedness::UpperOneSided, {17, {rr}});
    plain += one_sample_test(x, cfg).reject;
    const DataMatrix xq = x * q.transpose();
    rotated += one_sample_test(xq, cfg).reject;
  }
  EXPECT_LT(std::abs(plain - rotated) / static_cast<double>(kReps), 0.03);
}

TEST(OneSampleTest, PowerGrowsWithScale) {
  double prev = 0.0;
  for (double c : {1.05, 1.1, 1.2}) {
    const double rate =
        rejection_rate({datagen::ToeplitzPower{c, 0.0}, 50, 32}, config(10, Sidedness::UpperOneSided, {}), 1000, 31);
    EXPECT_GE(rate + std::sqrt(rate * (1 - rate) / 1000.0), prev) << c;
    prev = rate;
  }
  EXPECT_GT(prev, 0.5);
}

TEST(QuadraticForm, MeanIsTraceOfProduct) {
  // E[x^T A x] = tr(A Sigma) for x ~ N(0, Sigma).
  constexpr std::size_t kP = 6;
  constexpr std::size_t kDraws = 100000;
  const linalg::SymMatrix sigma = datagen::population_cov({datagen::MovingAverage{0.7, -0.3}, 1, kP});
  const Vector g = rng::gaussian_vector(kP * kP, {18, {}});
  const linalg::SymMatrix a(kP, [&](std::size_t i, std::size_t j) { return g(static_cast<Eigen::Index>(i * kP + j)); });
  const DataMatrix x = datagen::gen({datagen::ExplicitCov{sigma}, kDraws, kP}, {19, {}});
  std::vector<double> q(kDraws);
  for (std::size_t k = 0; k < kDraws; ++k) {
    const Vector row = x.row(static_cast<Eigen::Index>(k)).transpose();
    q[k] = row.dot(a.dense() * row);
  }
  double mean = 0.0;
  for (const double v : q) mean += v;
  mean /= kDraws;
  double ss = 0.0;
  for (const double v : q) ss += (v - mean) * (v - mean);
  const double se = std::sqrt(ss / (kDraws - 1) / kDraws);
  EXPECT_NEAR(mean, (a.dense() * sigma.dense()).trace(), 3.0 * se);
}

TEST(ClassicLrtOne, ZeroAtIdentitySecondMoment) {
  // Each e_j appears twice scaled by sqrt(p), so X^T X = 2p I and S = I with n = 2p.
  constexpr std::size_t kP = 4;
  DataMatrix x = DataMatrix::Zero(2 * kP, kP);
  for (std::size_t j = 0; j < kP; ++j) {
    x(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 2.0;
    x(static_cast<Eigen::Index>(j + kP), static_cast<Eigen::Index>(j)) = 2.0;
  }
  const LrtResult r = classic_lrt_one(x);
  EXPECT_NEAR(r.statistic, 0.0, 1e-12);
  EXPECT_EQ(r.df, 10u);
  EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(ClassicLrtOne, MatchesEigenvalueFormula) {
  const DataMatrix x = null_data(40, 7, {20, {}});
  const Vector l = linalg::sym_eigen(linalg::second_moment(x)).values;
  const double expected = 40.0 * (l.array() - l.array().log() - 1.0).sum();
  EXPECT_NEAR(classic_lrt_one(x).statistic, expected, 1e-9 * expected);
}

TEST(ClassicLrtOne, SingularWhenDimensionReachesSampleSize) {
  EXPECT_THROW(classic_lrt_one(null_data(10, 10, {})), SingularCovariance);
  EXPECT_THROW(classic_lrt_one(null_data(10, 20, {})), SingularCovariance);
}
