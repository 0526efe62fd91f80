#pragma once

#include <cstdint>

namespace dlaplace {

/// Arguments below this use the power series for e^x - 1 - x and Q; the
/// closed forms cancel catastrophically there.
inline constexpr double kQSeriesCutoff = 1.0;

/// ln(n!). Summed exactly (extended precision) up to this n, Stirling series above.
inline constexpr std::int64_t kLnFactorialTableMax = 1024;

[[nodiscard]] double ln_factorial(std::int64_t n);

/// ln C(q, p) for 0 <= p <= q.
[[nodiscard]] double ln_binomial(std::int64_t q, std::int64_t p);

/// e^x - 1 - x, accurate for small x.
[[nodiscard]] double exp_minus_one_minus_x(double x) noexcept;

/// Q(x) = x(e^x - 1) / (e^x - 1 - x), x > 0. Strictly increasing from 2 to infinity.
[[nodiscard]] double q_of(double x);

/// Q'(x) = ((e^x - 1)^2 - x^2 e^x) / (e^x - 1 - x)^2, x > 0. Takes values in [1/3, 1].
[[nodiscard]] double q_prime(double x);

/// Inverse of Q on (2, inf). Bisection on [xi - 2, xi] followed by safeguarded
/// Newton; |Q(x) - xi| <= 1e-12 xi on return.
[[nodiscard]] double q_inverse(double xi);

/// A(xi) = e^u - 1 - u with u = Q^{-1}(xi). Overflows to +inf once u > ~709;
/// use ln_big_a there.
[[nodiscard]] double big_a(double xi);

/// ln A(xi), evaluated in log space so it is finite for every xi > 2.
[[nodiscard]] double ln_big_a(double xi);

/// P(xi) = sqrt(u Q'(u)) with u = Q^{-1}(xi).
[[nodiscard]] double big_p(double xi);

/// h^S(xi): ln 2 on (0, 2] and at +inf, xi ln Q^{-1}(xi) - ln A(xi) above 2.
[[nodiscard]] double h_s(double xi);

/// g^S(p, q): 1/(sqrt(2 pi q) P(p/q)) for 1 <= q < p/2, 1 at q = p/2, 0 otherwise.
/// g_s(0, 0) is taken as 1, the q = p/2 branch (matches S_2(0,0) = 1).
[[nodiscard]] double g_s(std::int64_t p, std::int64_t q);

/// h^B(xi) = xi ln xi + (1 - xi) ln(1 - xi) on [0, 1], zero at the endpoints.
[[nodiscard]] double h_b(double xi);

/// g^B(p, q) = sqrt(q) / sqrt(2 pi max(p,1) max(q-p,1)) for 0 <= p <= q, q >= 1.
[[nodiscard]] double g_b(std::int64_t p, std::int64_t q);

}  // namespace dlaplace
