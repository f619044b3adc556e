#include "projcov/datagen.hpp"
#include "projcov/errors.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace projcov;
using namespace projcov::datagen;
using linalg::Dense;

namespace {

// Entrywise check of the empirical second moment against sigma in units of
// the Monte Carlo standard error sqrt((s_ii s_jj + s_ij^2) / N). The bound is
// the three-SE false-alarm rate (0.27%) split across all k entries checked,
// so the whole matrix fails by chance no more often than one 3-SE check.
void expect_covariance(const ScenarioSpec& spec, const Dense& sigma, std::uint64_t seed) {
  const DataMatrix x = gen(spec, {seed, {}});
  const auto n = static_cast<double>(spec.n);
  const Dense s = x.transpose() * x / n;
  const auto k = static_cast<double>(sigma.rows() * (sigma.rows() + 1) / 2);
  const double z = -oracle::quantile_bisection(0.0027 / (2.0 * k));
  for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double se = std::sqrt((sigma(i, i) * sigma(j, j) + sigma(i, j) * sigma(i, j)) / n);
      EXPECT_NEAR(s(i, j), sigma(i, j), z * se) << describe(spec.kind) << " (" << i << "," << j << ")";
    }
  }
}

}  // namespace

TEST(Describe, TextForms) {
  EXPECT_EQ(describe(NullIdentity{}), "null");
  EXPECT_EQ(describe(MovingAverage{2, 1}), "ma(2,1)");
  EXPECT_EQ(describe(ToeplitzPower{1.2, 0.1}), "toeplitz(1.2,0.1)");
  EXPECT_EQ(describe(ExplicitCov{linalg::SymMatrix::identity(3)}), "explicit(3)");
}

TEST(PopulationCov, NullIsIdentity) {
  EXPECT_EQ(population_cov({NullIdentity{}, 5, 4}).dense(), Dense::Identity(4, 4));
}

TEST(PopulationCov, MovingAverageBands) {
  const Dense s = population_cov({MovingAverage{2, 1}, 5, 6}).dense();
  for (Eigen::Index i = 0; i < 6; ++i) {
    EXPECT_EQ(s(i, i), 6.0);
    if (i + 1 < 6) EXPECT_EQ(s(i, i + 1), 4.0);
    if (i + 2 < 6) EXPECT_EQ(s(i, i + 2), 1.0);
    if (i + 3 < 6) EXPECT_EQ(s(i, i + 3), 0.0);
  }
  EXPECT_EQ(population_cov({MovingAverage{2, 0}, 5, 3}).dense()(0, 0), 5.0);
}

TEST(PopulationCov, ToeplitzPower) {
  EXPECT_EQ(population_cov({ToeplitzPower{1.0, 0.0}, 5, 4}).dense(), Dense::Identity(4, 4));
  const Dense s = population_cov({ToeplitzPower{1.2, 0.1}, 5, 3}).dense();
  Dense expected(3, 3);
  expected << 1.2, 0.1, 0.01, 0.1, 1.2, 0.1, 0.01, 0.1, 1.2;
  EXPECT_LT((s - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Gen, ShapeAndDeterminism) {
  const ScenarioSpec spec{MovingAverage{0.5, 0.2}, 7, 5};
  const DataMatrix a = gen(spec, {1, {}});
  EXPECT_EQ(a.rows(), 7);
  EXPECT_EQ(a.cols(), 5);
  EXPECT_EQ(a, gen(spec, {1, {}}));
  EXPECT_NE(a, gen(spec, {2, {}}));
}

TEST(Gen, RowsComeFromChildStreams) {
  // Row k depends only on key/[k], so a longer draw extends a shorter one.
  const DataMatrix small = gen({ToeplitzPower{1.5, 0.5}, 4, 6}, {3, {}});
  const DataMatrix large = gen({ToeplitzPower{1.5, 0.5}, 9, 6}, {3, {}});
  EXPECT_EQ(small, large.topRows(4));
}

TEST(Gen, NullSecondMoment) {
  const DataMatrix x = gen({NullIdentity{}, 10000, 4}, {4, {}});
  const Dense s = x.transpose() * x / 10000.0;
  EXPECT_LT((s - Dense::Identity(4, 4)).cwiseAbs().maxCoeff(), 0.05);
}

TEST(Gen, MovingAverageMarginalVariance) {
  const DataMatrix x = gen({MovingAverage{2, 0}, 10000, 3}, {5, {}});
  const double var = x.col(1).squaredNorm() / 10000.0;
  EXPECT_NEAR(var, 5.0, 3.0 * 5.0 * std::sqrt(2.0 / 10000.0));
}

TEST(Gen, EmpiricalCovarianceMatchesPopulation) {
  constexpr std::size_t kN = 100000;
  constexpr std::size_t kP = 6;
  const ScenarioSpec ma{MovingAverage{2, 1}, kN, kP};
  expect_covariance(ma, population_cov(ma).dense(), 6);
  const ScenarioSpec toeplitz{ToeplitzPower{1.5, 0.5}, kN, kP};
  expect_covariance(toeplitz, population_cov(toeplitz).dense(), 7);
  Dense c(3, 3);
  c << 2.0, 0.3, -0.4, 0.3, 1.0, 0.2, -0.4, 0.2, 0.5;
  const ScenarioSpec expl{ExplicitCov{linalg::SymMatrix(c)}, kN, 3};
  expect_covariance(expl, c, 8);
}

TEST(Scenario, PowerStudyCasesArePositiveDefinite) {
  for (std::size_t p : {32u, 256u}) {
    for (const auto& [d, rho] : {std::pair{1.2, 0.1}, {1.0, 0.1}, {1.5, 0.5}, {1.0, 0.6}, {1.1, 0.2}, {1.0, 0.24}}) {
      EXPECT_NO_THROW(Scenario({ToeplitzPower{d, rho}, 10, p})) << d << " " << rho << " p=" << p;
    }
  }
}

TEST(Scenario, InvalidParameters) {
  EXPECT_THROW(Scenario({NullIdentity{}, 0, 3}), DomainError);
  EXPECT_THROW(Scenario({NullIdentity{}, 3, 0}), DomainError);
  EXPECT_THROW(Scenario({ToeplitzPower{1.0, 1.0}, 3, 3}), DomainError);
  EXPECT_THROW(Scenario({ToeplitzPower{0.0, 0.1}, 3, 3}), DomainError);
  EXPECT_THROW(Scenario({ExplicitCov{linalg::SymMatrix::identity(2)}, 3, 3}), DomainError);
  Dense singular(2, 2);
  singular << 1, 1, 1, 1;
  EXPECT_THROW(Scenario({ExplicitCov{linalg::SymMatrix(singular)}, 3, 2}), NotPositiveDefinite);
  // Diagonal too small for the off-diagonal decay.
  EXPECT_THROW(Scenario({ToeplitzPower{0.2, 0.9}, 3, 10}), NotPositiveDefinite);
}
