#pragma once

#include "projcov/linalg.hpp"
#include "projcov/randsrc.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

namespace projcov::datagen {

/// Rows are i.i.d. N(0, I_p).
struct NullIdentity {};

/// X_ij = Z_ij + theta1 Z_i,j+1 + theta2 Z_i,j+2 over p + 2 latent
/// N(0,1) variates per row (no wraparound).
struct MovingAverage {
  double theta1 = 0.0;
  double theta2 = 0.0;
};

/// Covariance with d on the diagonal and rho^|i-j| elsewhere.
struct ToeplitzPower {
  double d = 1.0;
  double rho = 0.0;
};

struct ExplicitCov {
  linalg::SymMatrix cov;
};

using ScenarioKind = std::variant<NullIdentity, MovingAverage, ToeplitzPower, ExplicitCov>;

struct ScenarioSpec {
  ScenarioKind kind;
  std::size_t n = 0;
  std::size_t p = 0;
};

/// Short text form: null, ma(t1,t2), toeplitz(d,rho), explicit(p).
std::string describe(const ScenarioKind& kind);

/// The exact population covariance of the scenario.
linalg::SymMatrix population_cov(const ScenarioSpec& spec);

/// A validated scenario with its sampling factor precomputed, so repeated
/// draws (one per Monte Carlo replicate) skip the Cholesky factorization.
class Scenario {
public:
  /// Throws DomainError for n or p of zero, bad parameters or a mismatched
  /// explicit covariance; NotPositiveDefinite when the covariance fails
  /// Cholesky.
  explicit Scenario(ScenarioSpec spec);

  const ScenarioSpec& spec() const noexcept { return spec_; }

  /// n x p draw; row k uses the sub-stream key.child(k).
  DataMatrix sample(const rng::StreamKey& key) const;

private:
  ScenarioSpec spec_;
  std::optional<linalg::Dense> factor_;  // lower Cholesky factor for covariance-based kinds
};

/// Scenario(spec).sample(key).
DataMatrix gen(const ScenarioSpec& spec, const rng::StreamKey& key);

}  // namespace projcov::datagen
