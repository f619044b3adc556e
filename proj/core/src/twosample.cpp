#include "projcov/twosample.hpp"

#include "projcov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace projcov {

namespace {

void check_same_dimension(const DataMatrix& x, const DataMatrix& y, const char* where) {
  if (x.cols() != y.cols()) {
    throw DimensionMismatch(std::string(where) + ": samples have " + std::to_string(x.cols()) + " and " +
                            std::to_string(y.cols()) + " columns");
  }
}

double log_det_or_singular(const linalg::SymMatrix& s, const char* which) {
  try {
    return linalg::logdet_trace(s).log_det;
  } catch (const NotPositiveDefinite& e) {
    throw SingularCovariance(std::string("classic_lrt_two: ") + which + ": " + e.what());
  }
}

}  // namespace

ProjectedVariances projected_variances(const DataMatrix& x, const DataMatrix& y, const Vector& r) {
  check_same_dimension(x, y, "projected_variances");
  if (r.size() != x.cols()) {
    throw DimensionMismatch("projected_variances: projection has length " + std::to_string(r.size()) +
                            " but samples have " + std::to_string(x.cols()) + " columns");
  }
  if (x.rows() == 0 || y.rows() == 0) throw DegenerateInput("projected_variances: empty sample");
  return {(x * r).squaredNorm() / static_cast<double>(x.rows()),
          (y * r).squaredNorm() / static_cast<double>(y.rows())};
}

double f_star(double f, std::size_t n1, std::size_t n2) {
  if (!(f > 0.0)) throw DomainError("f_star: variance ratio must be > 0, got " + std::to_string(f));
  if (n1 == 0 || n2 == 0) throw DomainError("f_star: sample sizes must be >= 1");
  return std::log(f) / std::sqrt(2.0 / static_cast<double>(n1) + 2.0 / static_cast<double>(n2));
}

TwoSampleOutcome two_sample_test(const DataMatrix& x, const DataMatrix& y, const TwoSampleConfig& cfg) {
  check_same_dimension(x, y, "two_sample_test");
  const Eigen::Index n1 = x.rows();
  const Eigen::Index n2 = y.rows();
  const Eigen::Index p = x.cols();
  if (n1 < 2 || n2 < 2) {
    throw DegenerateInput("two_sample_test: need at least 2 observations per sample, got " + std::to_string(n1) +
                          " and " + std::to_string(n2));
  }
  if (p < 1) throw DegenerateInput("two_sample_test: data has no columns");
  if (cfg.m == 0) throw DomainError("two_sample_test: m must be >= 1");

  const rng::ProjectionSet projections = rng::projection_set(static_cast<std::size_t>(p), cfg.m, cfg.key);
  Eigen::MatrixXd projected;
  projected.noalias() = x * projections.vectors.transpose();
  const Eigen::RowVectorXd s1 = projected.colwise().squaredNorm() / static_cast<double>(n1);
  projected.noalias() = y * projections.vectors.transpose();
  const Eigen::RowVectorXd s2 = projected.colwise().squaredNorm() / static_cast<double>(n2);

  TwoSampleOutcome result;
  result.projections.resize(cfg.m);
  result.outcome.per_projection.resize(cfg.m);
  for (unsigned i = 0; i < cfg.m; ++i) {
    if (s1(i) == 0.0 || s2(i) == 0.0) {
      throw DegenerateProjection("two_sample_test: projected variance of sample " +
                                 std::string(s1(i) == 0.0 ? "1" : "2") + " is zero for projection " +
                                 std::to_string(i));
    }
    FProjection& fp = result.projections[i];
    fp.s1 = s1(i);
    fp.s2 = s2(i);
    fp.f = fp.s1 / fp.s2;
    fp.f_star = f_star(fp.f, static_cast<std::size_t>(n1), static_cast<std::size_t>(n2));
    result.outcome.per_projection[i] = fp.f_star;
  }

  TestOutcome& out = result.outcome;
  out.n = static_cast<std::size_t>(n1);
  out.n2 = static_cast<std::size_t>(n2);
  out.p = static_cast<std::size_t>(p);
  out.m = cfg.m;
  out.alpha = cfg.alpha;
  out.sided = cfg.sided;
  out.key = cfg.key;
  aggregate(out);
  return result;
}

LrtResult classic_lrt_two(const DataMatrix& x, const DataMatrix& y) {
  check_same_dimension(x, y, "classic_lrt_two");
  const Eigen::Index n1 = x.rows();
  const Eigen::Index n2 = y.rows();
  const Eigen::Index p = x.cols();
  if (p < 1) throw DegenerateInput("classic_lrt_two: data has no columns");
  if (p >= std::min(n1, n2)) {
    throw SingularCovariance("classic_lrt_two: a sample covariance is singular (p=" + std::to_string(p) +
                             " >= min(n1,n2)=" + std::to_string(std::min(n1, n2)) + ")");
  }
  const linalg::SymMatrix s1 = linalg::second_moment(x);
  const linalg::SymMatrix s2 = linalg::second_moment(y);
  const double total = static_cast<double>(n1 + n2);
  const linalg::SymMatrix pooled = linalg::SymMatrix::symmetrized(
      (static_cast<double>(n1) / total) * s1.dense() + (static_cast<double>(n2) / total) * s2.dense());

  LrtResult out;
  out.df = static_cast<unsigned>(p * (p + 1) / 2);
  out.statistic = total * log_det_or_singular(pooled, "pooled") -
                  static_cast<double>(n1) * log_det_or_singular(s1, "sample 1") -
                  static_cast<double>(n2) * log_det_or_singular(s2, "sample 2");
  out.p_value = special::chi2_sf(std::max(out.statistic, 0.0), out.df);
  return out;
}

}  // namespace projcov
