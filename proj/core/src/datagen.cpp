#include "projcov/datagen.hpp"

#include "projcov/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace projcov::datagen {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

linalg::SymMatrix toeplitz_power(const ToeplitzPower& t, std::size_t p) {
  return linalg::SymMatrix(p, [&t](std::size_t i, std::size_t j) {
    return i == j ? t.d : std::pow(t.rho, static_cast<double>(i - j));
  });
}

linalg::SymMatrix moving_average_cov(const MovingAverage& ma, std::size_t p) {
  const double lag0 = 1.0 + ma.theta1 * ma.theta1 + ma.theta2 * ma.theta2;
  const double lag1 = ma.theta1 + ma.theta1 * ma.theta2;
  const double lag2 = ma.theta2;
  return linalg::SymMatrix(p, [=](std::size_t i, std::size_t j) {
    switch (i - j) {
      case 0:
        return lag0;
      case 1:
        return lag1;
      case 2:
        return lag2;
      default:
        return 0.0;
    }
  });
}

void fill_standard_rows(DataMatrix& out, const rng::StreamKey& key) {
  const auto p = static_cast<std::size_t>(out.cols());
  for (Eigen::Index k = 0; k < out.rows(); ++k) {
    rng::Stream stream(key.child(static_cast<std::uint64_t>(k)));
    stream.fill_gaussian({out.row(k).data(), p});
  }
}

}  // namespace

std::string describe(const ScenarioKind& kind) {
  // Shortest text that reads back to the same double, so 0.1 prints as 0.1.
  auto num = [](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  return std::visit(Overloaded{
                        [](const NullIdentity&) { return std::string("null"); },
                        [&](const MovingAverage& ma) { return "ma(" + num(ma.theta1) + "," + num(ma.theta2) + ")"; },
                        [&](const ToeplitzPower& t) { return "toeplitz(" + num(t.d) + "," + num(t.rho) + ")"; },
                        [](const ExplicitCov& e) { return "explicit(" + std::to_string(e.cov.dim()) + ")"; },
                    },
                    kind);
}

linalg::SymMatrix population_cov(const ScenarioSpec& spec) {
  if (spec.p == 0) throw DomainError("population_cov: p must be >= 1");
  return std::visit(Overloaded{
                        [&](const NullIdentity&) { return linalg::SymMatrix::identity(spec.p); },
                        [&](const MovingAverage& ma) { return moving_average_cov(ma, spec.p); },
                        [&](const ToeplitzPower& t) { return toeplitz_power(t, spec.p); },
                        [&](const ExplicitCov& e) { return e.cov; },
                    },
                    spec.kind);
}

Scenario::Scenario(ScenarioSpec spec) : spec_(std::move(spec)) {
  if (spec_.n == 0 || spec_.p == 0) throw DomainError("scenario: n and p must be >= 1");
  std::visit(Overloaded{
                 [](const NullIdentity&) {},
                 [](const MovingAverage&) {},
                 [&](const ToeplitzPower& t) {
                   if (!(t.d > 0.0)) throw DomainError("toeplitz: diagonal d must be > 0");
                   if (!(std::abs(t.rho) < 1.0)) throw DomainError("toeplitz: rho must lie in (-1,1)");
                   factor_ = linalg::cholesky(toeplitz_power(t, spec_.p));
                 },
                 [&](const ExplicitCov& e) {
                   if (e.cov.dim() != spec_.p) {
                     throw DomainError("explicit covariance is " + std::to_string(e.cov.dim()) +
                                       "-dimensional but scenario p is " + std::to_string(spec_.p));
                   }
                   factor_ = linalg::cholesky(e.cov);
                 },
             },
             spec_.kind);
}

DataMatrix Scenario::sample(const rng::StreamKey& key) const {
  const auto n = static_cast<Eigen::Index>(spec_.n);
  const auto p = static_cast<Eigen::Index>(spec_.p);

  if (const auto* ma = std::get_if<MovingAverage>(&spec_.kind)) {
    DataMatrix latent(n, p + 2);
    fill_standard_rows(latent, key);
    return latent.leftCols(p) + ma->theta1 * latent.middleCols(1, p) + ma->theta2 * latent.rightCols(p);
  }

  DataMatrix z(n, p);
  fill_standard_rows(z, key);
  if (!factor_) return z;
  // Row k becomes (L z_k)^T = z_k^T L^T.
  DataMatrix x(n, p);
  x.noalias() = z * factor_->transpose().triangularView<Eigen::Upper>();
  return x;
}

DataMatrix gen(const ScenarioSpec& spec, const rng::StreamKey& key) { return Scenario(spec).sample(key); }

}  // namespace projcov::datagen
