#include "dlaplace/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dlaplace {
namespace {

constexpr int kSeriesTerms = 40;

// 1/(k+1)! and 1/(k+2)! for k = 0..kSeriesTerms-1.
struct SeriesCoefficients {
  std::array<double, kSeriesTerms> inv_fact_plus1{};
  std::array<double, kSeriesTerms> inv_fact_plus2{};
  // (2^{k+2} - 2)/(k+2)! - 1/k!, the Taylor coefficients of N(x)^2 - e^x,
  // shifted so index 0 holds k = 2.
  std::array<double, kSeriesTerms> q_prime_num{};
};

SeriesCoefficients make_coefficients() {
  SeriesCoefficients c;
  long double fact = 1.0L;  // k!
  for (int k = 0; k < kSeriesTerms + 2; ++k) {
    if (k > 0) fact *= k;
    const long double f1 = fact * (k + 1);
    const long double f2 = f1 * (k + 2);
    if (k < kSeriesTerms) {
      c.inv_fact_plus1[k] = static_cast<double>(1.0L / f1);
      c.inv_fact_plus2[k] = static_cast<double>(1.0L / f2);
    }
    if (k >= 2 && k - 2 < kSeriesTerms) {
      const long double two_pow = std::ldexp(1.0L, k + 2);
      c.q_prime_num[k - 2] = static_cast<double>((two_pow - 2.0L) / f2 - 1.0L / fact);
    }
  }
  return c;
}

const SeriesCoefficients& coefficients() {
  static const SeriesCoefficients c = make_coefficients();
  return c;
}

double horner(const std::array<double, kSeriesTerms>& a, double x) noexcept {
  double acc = 0.0;
  for (int k = kSeriesTerms - 1; k >= 0; --k) acc = acc * x + a[k];
  return acc;
}

// (e^x - 1)/x and (e^x - 1 - x)/x^2 as power series.
double series_n(double x) noexcept { return horner(coefficients().inv_fact_plus1, x); }
double series_d(double x) noexcept { return horner(coefficients().inv_fact_plus2, x); }

void require_above_two(double xi, const char* fn) {
  if (!(xi > 2.0)) throw std::domain_error(std::string(fn) + ": argument must exceed 2, got " + std::to_string(xi));
}

struct LnFactorialTable {
  std::array<double, kLnFactorialTableMax + 1> values{};
  LnFactorialTable() {
    long double acc = 0.0L;
    values[0] = 0.0;
    for (std::int64_t k = 1; k <= kLnFactorialTableMax; ++k) {
      acc += std::log(static_cast<long double>(k));
      values[k] = static_cast<double>(acc);
    }
  }
};

}  // namespace

double ln_factorial(std::int64_t n) {
  if (n < 0) throw std::domain_error("ln_factorial: negative argument");
  static const LnFactorialTable table;
  if (n <= kLnFactorialTableMax) return table.values[n];
  const long double x = static_cast<long double>(n);
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  const long double correction =
      inv * (1.0L / 12 - inv2 * (1.0L / 360 - inv2 * (1.0L / 1260 - inv2 / 1680)));
  const long double half_ln_2pi = 0.918938533204672741780329736405617639861L;
  return static_cast<double>((x + 0.5L) * std::log(x) - x + half_ln_2pi + correction);
}

double ln_binomial(std::int64_t q, std::int64_t p) {
  if (p < 0 || p > q) throw std::domain_error("ln_binomial: need 0 <= p <= q");
  return ln_factorial(q) - ln_factorial(p) - ln_factorial(q - p);
}

double exp_minus_one_minus_x(double x) noexcept {
  if (std::fabs(x) < kQSeriesCutoff) return x * x * series_d(x);
  return std::expm1(x) - x;
}

double q_of(double x) {
  if (!(x > 0.0)) throw std::domain_error("q_of: argument must be positive");
  if (x < kQSeriesCutoff) return series_n(x) / series_d(x);
  const double t = std::exp(-x);
  return x * (-std::expm1(-x)) / (1.0 - (1.0 + x) * t);
}

double q_prime(double x) {
  if (!(x > 0.0)) throw std::domain_error("q_prime: argument must be positive");
  if (x < 2.0) {
    const double d = series_d(x);
    return horner(coefficients().q_prime_num, x) / (d * d);
  }
  const double t = std::exp(-x);
  const double one_minus_t = -std::expm1(-x);
  const double den = 1.0 - (1.0 + x) * t;
  return (one_minus_t * one_minus_t - x * x * t) / (den * den);
}

double q_inverse(double xi) {
  require_above_two(xi, "q_inverse");
  constexpr double kFloor = 1e-12;
  double lo = std::max(xi - 2.0, kFloor);
  double hi = xi;
  if (q_of(lo) > xi) {
    // Root below kFloor, where Q(x) = 2 + x/3 to double precision.
    return 3.0 * (xi - 2.0);
  }

  while (hi - lo > 1e-3 * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    (q_of(mid) < xi ? lo : hi) = mid;
  }

  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = q_of(x) - xi;
    if (f == 0.0) return x;
    (f < 0.0 ? lo : hi) = x;
    double next = x - f / q_prime(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - x);
    x = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * x) break;
  }
  return x;
}

double ln_big_a(double xi) {
  require_above_two(xi, "ln_big_a");
  const double u = q_inverse(xi);
  if (u < kQSeriesCutoff) return 2.0 * std::log(u) + std::log(series_d(u));
  return u + std::log1p(-(1.0 + u) * std::exp(-u));
}

double big_a(double xi) {
  require_above_two(xi, "big_a");
  const double u = q_inverse(xi);
  if (u < kQSeriesCutoff) return exp_minus_one_minus_x(u);
  return std::exp(ln_big_a(xi));
}

double big_p(double xi) {
  require_above_two(xi, "big_p");
  const double u = q_inverse(xi);
  return std::sqrt(u * q_prime(u));
}

double h_s(double xi) {
  if (!(xi > 0.0)) throw std::domain_error("h_s: argument must be positive");
  if (xi <= 2.0 || std::isinf(xi)) return std::numbers::ln2;
  return xi * std::log(q_inverse(xi)) - ln_big_a(xi);
}

double g_s(std::int64_t p, std::int64_t q) {
  if (p < 0 || q < 0) throw std::domain_error("g_s: negative argument");
  if (2 * q == p) return 1.0;
  if (q == 0 || 2 * q > p) return 0.0;
  const double ratio = static_cast<double>(p) / static_cast<double>(q);
  return 1.0 / (std::sqrt(2.0 * std::numbers::pi * static_cast<double>(q)) * big_p(ratio));
}

double h_b(double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw std::domain_error("h_b: argument outside [0, 1]");
  if (xi == 0.0 || xi == 1.0) return 0.0;
  return xi * std::log(xi) + (1.0 - xi) * std::log1p(-xi);
}

double g_b(std::int64_t p, std::int64_t q) {
  if (q < 1 || p < 0 || p > q) throw std::domain_error("g_b: need 0 <= p <= q, q >= 1");
  const double a = static_cast<double>(std::max<std::int64_t>(p, 1));
  const double b = static_cast<double>(std::max<std::int64_t>(q - p, 1));
  return std::sqrt(static_cast<double>(q)) / std::sqrt(2.0 * std::numbers::pi * a * b);
}

}  // namespace dlaplace
