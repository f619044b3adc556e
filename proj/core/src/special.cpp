#include "projcov/special.hpp"

#include "projcov/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace projcov {

std::string_view to_string(Sidedness s) noexcept {
  switch (s) {
    case Sidedness::UpperOneSided:
      return "upper";
    case Sidedness::LowerOneSided:
      return "lower";
    case Sidedness::TwoSided:
      return "two";
  }
  return "unknown";
}

Sidedness parse_sidedness(std::string_view text) {
  if (text == "upper") return Sidedness::UpperOneSided;
  if (text == "lower") return Sidedness::LowerOneSided;
  if (text == "two" || text == "two-sided") return Sidedness::TwoSided;
  throw DomainError("unknown sidedness '" + std::string(text) + "' (expected upper, lower or two)");
}

namespace special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 100000;

// Acklam's rational approximation to the normal quantile, |rel err| < 1.15e-9.
constexpr std::array<double, 6> kA = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                      1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
constexpr std::array<double, 5> kB = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                      6.680131188771972e+01, -1.328068155288572e+01};
constexpr std::array<double, 6> kC = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                      -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
constexpr std::array<double, 4> kD = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                      3.754408661907416e+00};
constexpr double kLowRegion = 0.02425;

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                            771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                            -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Quantile for p in (0, 0.5]; result <= 0.
double lower_quantile(double p) {
  double x;
  if (p < kLowRegion) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
        ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
        (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
  }
  // Halley refinement on Phi(x) = p; Phi is evaluated in its accurate lower tail.
  for (int step = 0; step < 2; ++step) {
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

// exp(a log x - x - log Gamma(a)), the common prefactor of P and Q.
double gamma_prefactor(double a, double x) { return std::exp(a * std::log(x) - x - log_gamma(a)); }

double gamma_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) return sum * gamma_prefactor(a, x);
  }
  throw NoConvergence("incomplete gamma series did not converge for a=" + std::to_string(a));
}

double gamma_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h * gamma_prefactor(a, x);
  }
  throw NoConvergence("incomplete gamma continued fraction did not converge for a=" + std::to_string(a));
}

double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NoConvergence("incomplete beta continued fraction did not converge");
}

// I_x(a, b) with y = 1 - x supplied separately to avoid cancellation.
double beta_inc_xy(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double front = std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) + b * std::log(y));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1), got " + std::to_string(alpha));
}

// P(max of m i.i.d. N(0,1) > t).
double upper_tail_max(double t, unsigned m) { return -std::expm1(m * std::log1p(-normal_sf(t))); }

// P(min of m i.i.d. N(0,1) < t).
double lower_tail_min(double t, unsigned m) { return -std::expm1(m * std::log1p(-normal_cdf(t))); }

}  // namespace

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("normal_quantile: argument must lie in (0,1), got " + std::to_string(u));
  if (u == 0.5) return 0.0;
  return u < 0.5 ? lower_quantile(u) : -lower_quantile(1.0 - u);
}

double normal_upper_quantile(double q) { return -normal_quantile(q); }

double log_gamma(double a) {
  if (!(a > 0.0)) throw DomainError("log_gamma: argument must be > 0, got " + std::to_string(a));
  if (a == 1.0 || a == 2.0) return 0.0;
  if (a < 0.5) {
    // Reflection keeps the Lanczos sum in its accurate range.
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * a)) - log_gamma(1.0 - a);
  }
  const double x = a - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (x + static_cast<double>(i));
  const double t = x + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(sum);
}

double gamma_p(double a, double x) {
  if (!(a > 0.0)) throw DomainError("gamma_p: shape must be > 0");
  if (!(x >= 0.0)) throw DomainError("gamma_p: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_series(a, x);
  return 1.0 - gamma_continued_fraction(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0)) throw DomainError("gamma_q: shape must be > 0");
  if (!(x >= 0.0)) throw DomainError("gamma_q: x must be >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_series(a, x);
  return gamma_continued_fraction(a, x);
}

double beta_inc(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("beta_inc: shape parameters must be > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("beta_inc: x must lie in [0,1]");
  return beta_inc_xy(a, b, x, 1.0 - x);
}

double chi2_cdf(double x, unsigned df) {
  if (df == 0) throw DomainError("chi2_cdf: df must be >= 1");
  if (!(x >= 0.0)) throw DomainError("chi2_cdf: x must be >= 0, got " + std::to_string(x));
  return gamma_p(0.5 * df, 0.5 * x);
}

double chi2_sf(double x, unsigned df) {
  if (df == 0) throw DomainError("chi2_sf: df must be >= 1");
  if (!(x >= 0.0)) throw DomainError("chi2_sf: x must be >= 0, got " + std::to_string(x));
  return gamma_q(0.5 * df, 0.5 * x);
}

double f_cdf(double x, unsigned d1, unsigned d2) {
  if (d1 == 0 || d2 == 0) throw DomainError("f_cdf: degrees of freedom must be >= 1");
  if (!(x >= 0.0)) throw DomainError("f_cdf: x must be >= 0, got " + std::to_string(x));
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double num = d1 * x;
  const double den = num + d2;
  return beta_inc_xy(0.5 * d1, 0.5 * d2, num / den, d2 / den);
}

CutoffPair max_gauss_cutoff(unsigned m, double alpha, Sidedness sided) {
  if (m == 0) throw DomainError("max_gauss_cutoff: m must be >= 1");
  check_alpha(alpha);
  const double level = sided == Sidedness::TwoSided ? 0.5 * alpha : alpha;
  // Per-projection tail probability 1 - (1 - level)^{1/m}, computed without cancellation.
  const double tail = -std::expm1(std::log1p(-level) / m);
  const double c = normal_upper_quantile(tail);

  CutoffPair out;
  out.alpha = alpha;
  out.m = m;
  switch (sided) {
    case Sidedness::UpperOneSided:
      out.c_max = c;
      break;
    case Sidedness::LowerOneSided:
      out.c_min = -c;
      break;
    case Sidedness::TwoSided:
      out.c_max = c;
      out.c_min = -c;
      break;
  }
  return out;
}

double max_gauss_pvalue(double t, unsigned m, Sidedness sided, std::optional<double> t_min) {
  if (m == 0) throw DomainError("max_gauss_pvalue: m must be >= 1");
  switch (sided) {
    case Sidedness::UpperOneSided:
      return upper_tail_max(t, m);
    case Sidedness::LowerOneSided:
      return lower_tail_min(t, m);
    case Sidedness::TwoSided: {
      if (!t_min) throw MissingArgument("max_gauss_pvalue: two-sided p-value needs the observed minimum");
      const double one_sided = std::min(upper_tail_max(t, m), lower_tail_min(*t_min, m));
      return std::min(1.0, 2.0 * one_sided);
    }
  }
  return 1.0;
}

double patnaik_half_moment(std::span<const double> eigenvalues) {
  if (eigenvalues.empty()) throw DomainError("patnaik_half_moment: empty spectrum");
  double k1 = 0.0;
  double sum_sq = 0.0;
  for (const double l : eigenvalues) {
    if (!(l >= 0.0)) throw DomainError("patnaik_half_moment: eigenvalues must be >= 0");
    k1 += l;
    sum_sq += l * l;
  }
  if (!(k1 > 0.0)) throw DomainError("patnaik_half_moment: all eigenvalues are zero");
  const double k2 = 2.0 * sum_sq;
  const double a = k1 * k1 / k2;
  return std::sqrt(k2 / k1) * std::exp(log_gamma(a + 0.5) - log_gamma(a));
}

double gamma_ratio_expansion(double a) {
  if (!(a > 0.0)) throw DomainError("gamma_ratio_expansion: argument must be > 0");
  const double root = std::sqrt(a);
  return root - 0.125 / root;
}

}  // namespace special
}  // namespace projcov
