#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace projcov {

enum class Sidedness { UpperOneSided, LowerOneSided, TwoSided };

std::string_view to_string(Sidedness s) noexcept;
/// Accepts "upper", "lower", "two" and "two-sided"; throws DomainError otherwise.
Sidedness parse_sidedness(std::string_view text);

/// Critical values for the max/min of m independent standard normals.
struct CutoffPair {
  std::optional<double> c_max;
  std::optional<double> c_min;
  double alpha = 0.0;
  unsigned m = 0;
};

namespace special {

/// Standard normal CDF.
double normal_cdf(double x) noexcept;
/// 1 - normal_cdf(x) without cancellation.
double normal_sf(double x) noexcept;

/// z with normal_cdf(z) = u. Acklam's rational initializer plus a Halley step.
double normal_quantile(double u);
/// z with normal_sf(z) = q; stays accurate for q far below machine epsilon.
double normal_upper_quantile(double q);

/// log Gamma(a) for a > 0 (Lanczos, g = 7).
double log_gamma(double a);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);
/// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

double chi2_cdf(double x, unsigned df);
double chi2_sf(double x, unsigned df);
double f_cdf(double x, unsigned d1, unsigned d2);

/// Level-alpha critical values for max (Upper), min (Lower) or both (TwoSided,
/// alpha/2 in each tail) of m i.i.d. standard normals.
CutoffPair max_gauss_cutoff(unsigned m, double alpha, Sidedness sided);

/// Upper: P(max Z > t). Lower: P(min Z < t). TwoSided: twice the smaller of
/// the two one-sided values at (t, t_min), capped at 1, so that p <= alpha
/// exactly when the two-sided cutoff rule rejects. t_min is required for
/// TwoSided.
double max_gauss_pvalue(double t, unsigned m, Sidedness sided, std::optional<double> t_min = std::nullopt);

/// E(Y^{1/2}) for the moment-matched scaled chi-square Y of a Gaussian
/// quadratic form with the given eigenvalues: k1 = sum l, k2 = 2 sum l^2,
/// result = sqrt(k2/k1) Gamma(k1^2/k2 + 1/2) / Gamma(k1^2/k2).
double patnaik_half_moment(std::span<const double> eigenvalues);

/// Two-term asymptotic Gamma(a + 1/2) / Gamma(a) ~ a^{1/2} - a^{-1/2}/8.
double gamma_ratio_expansion(double a);

}  // namespace special
}  // namespace projcov
