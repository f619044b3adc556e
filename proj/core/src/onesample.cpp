#include "projcov/onesample.hpp"

#include "projcov/errors.hpp"

#include <cmath>
#include <string>

namespace projcov {

namespace {

constexpr double kUnitTolerance = 1e-10;

std::string dims(Eigen::Index rows, Eigen::Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace

Vector project_series(const DataMatrix& data, const Vector& r) {
  if (r.size() != data.cols()) {
    throw DimensionMismatch("project_series: projection has length " + std::to_string(r.size()) +
                            " but data is " + dims(data.rows(), data.cols()));
  }
  if (std::abs(r.norm() - 1.0) > kUnitTolerance) throw DomainError("project_series: projection is not a unit vector");
  return data * r;
}

double one_sample_stat(std::span<const double> y) {
  if (y.empty()) throw DegenerateInput("one_sample_stat: empty series");
  double sum_sq = 0.0;
  for (const double v : y) sum_sq += v * v;
  return std::sqrt(2.0 * sum_sq) - std::sqrt(2.0 * static_cast<double>(y.size()) - 1.0);
}

double standardized_stat(std::span<const double> y) {
  if (y.empty()) throw DegenerateInput("standardized_stat: empty series");
  double sum_sq = 0.0;
  for (const double v : y) sum_sq += v * v;
  const auto n = static_cast<double>(y.size());
  return (sum_sq - n) / std::sqrt(2.0 * n);
}

TestOutcome one_sample_test(const DataMatrix& data, const OneSampleConfig& cfg) {
  const Eigen::Index n = data.rows();
  const Eigen::Index p = data.cols();
  if (n < 2) throw DegenerateInput("one_sample_test: need at least 2 observations, got " + std::to_string(n));
  if (p < 1) throw DegenerateInput("one_sample_test: data has no columns");
  if (cfg.m == 0) throw DomainError("one_sample_test: m must be >= 1");

  // Rows are transformed once (x_k^T W with W symmetric) instead of
  // transforming each of the m projections.
  DataMatrix prepared;
  const DataMatrix* x = &data;
  if (cfg.sigma0) {
    if (static_cast<Eigen::Index>(cfg.sigma0->dim()) != p) {
      throw DimensionMismatch("one_sample_test: sigma0 is " + std::to_string(cfg.sigma0->dim()) + "x" +
                              std::to_string(cfg.sigma0->dim()) + " but data has " + std::to_string(p) + " columns");
    }
    prepared = data * linalg::inv_sqrt(*cfg.sigma0).dense();
    x = &prepared;
  }
  if (cfg.center) {
    if (x != &prepared) prepared = data;
    prepared.rowwise() -= prepared.colwise().mean();
    x = &prepared;
  }
  const double dof = static_cast<double>(cfg.center ? n - 1 : n);

  const rng::ProjectionSet projections = rng::projection_set(static_cast<std::size_t>(p), cfg.m, cfg.key);
  Eigen::MatrixXd projected;
  projected.noalias() = (*x) * projections.vectors.transpose();
  const Eigen::RowVectorXd sum_sq = projected.colwise().squaredNorm();

  TestOutcome out;
  out.per_projection.resize(cfg.m);
  const double offset = std::sqrt(2.0 * dof - 1.0);
  for (unsigned i = 0; i < cfg.m; ++i) out.per_projection[i] = std::sqrt(2.0 * sum_sq(i)) - offset;

  out.n = static_cast<std::size_t>(n);
  out.p = static_cast<std::size_t>(p);
  out.m = cfg.m;
  out.alpha = cfg.alpha;
  out.sided = cfg.sided;
  out.key = cfg.key;
  aggregate(out);
  return out;
}

LrtResult classic_lrt_one(const DataMatrix& data) {
  const Eigen::Index n = data.rows();
  const Eigen::Index p = data.cols();
  if (p < 1) throw DegenerateInput("classic_lrt_one: data has no columns");
  if (p >= n) {
    throw SingularCovariance("classic_lrt_one: sample covariance is singular (p=" + std::to_string(p) +
                             " >= n=" + std::to_string(n) + ")");
  }
  const linalg::SymMatrix s = linalg::second_moment(data);
  linalg::LogDetTrace ld{};
  try {
    ld = linalg::logdet_trace(s);
  } catch (const NotPositiveDefinite& e) {
    throw SingularCovariance(std::string("classic_lrt_one: ") + e.what());
  }
  LrtResult out;
  out.df = static_cast<unsigned>(p * (p + 1) / 2);
  out.statistic = static_cast<double>(n) * (ld.trace - ld.log_det - static_cast<double>(p));
  out.p_value = special::chi2_sf(std::max(out.statistic, 0.0), out.df);
  return out;
}

}  // namespace projcov
