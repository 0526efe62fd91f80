#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace dlaplace {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// ln(e^a + e^b) without overflow. Either argument may be -inf.
[[nodiscard]] double ln_add_exp(double a, double b) noexcept;

/// ln(e^a - e^b) for a >= b. Returns -inf when a == b.
[[nodiscard]] double ln_sub_exp(double a, double b) noexcept;

/// Signed real stored as sign and natural log of the magnitude.
///
/// Products and quotients are exact in the exponent; sums go through
/// ln_add_exp / ln_sub_exp. sign == 0 is exact zero and log_mag is ignored.
class LogScalar {
 public:
  constexpr LogScalar() noexcept = default;

  [[nodiscard]] static constexpr LogScalar zero() noexcept { return {}; }
  [[nodiscard]] static constexpr LogScalar one() noexcept { return from_log(0.0); }

  /// Positive value e^log_mag. A log_mag of -inf yields zero.
  [[nodiscard]] static constexpr LogScalar from_log(double log_mag, int sign = 1) noexcept {
    LogScalar s;
    if (sign == 0 || log_mag == kNegInf) return s;
    s.sign_ = sign > 0 ? 1 : -1;
    s.log_mag_ = log_mag;
    return s;
  }

  [[nodiscard]] static LogScalar from_real(double x) noexcept {
    if (x == 0.0) return {};
    return from_log(std::log(std::fabs(x)), x > 0.0 ? 1 : -1);
  }

  [[nodiscard]] constexpr int sign() const noexcept { return sign_; }
  [[nodiscard]] constexpr bool is_zero() const noexcept { return sign_ == 0; }

  /// Natural log of |value|; -inf for zero.
  [[nodiscard]] constexpr double log_mag() const noexcept { return sign_ == 0 ? kNegInf : log_mag_; }

  [[nodiscard]] double to_real() const noexcept {
    return sign_ == 0 ? 0.0 : static_cast<double>(sign_) * std::exp(log_mag_);
  }

  [[nodiscard]] constexpr LogScalar operator-() const noexcept {
    LogScalar s = *this;
    s.sign_ = -s.sign_;
    return s;
  }

  LogScalar& operator*=(const LogScalar& rhs) noexcept;
  LogScalar& operator/=(const LogScalar& rhs);
  LogScalar& operator+=(const LogScalar& rhs) noexcept;
  LogScalar& operator-=(const LogScalar& rhs) noexcept { return *this += -rhs; }

  friend LogScalar operator*(LogScalar a, const LogScalar& b) noexcept { return a *= b; }
  friend LogScalar operator/(LogScalar a, const LogScalar& b) { return a /= b; }
  friend LogScalar operator+(LogScalar a, const LogScalar& b) noexcept { return a += b; }
  friend LogScalar operator-(LogScalar a, const LogScalar& b) noexcept { return a -= b; }

  friend constexpr bool operator==(const LogScalar& a, const LogScalar& b) noexcept {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || a.log_mag_ == b.log_mag_);
  }

 private:
  int sign_ = 0;
  double log_mag_ = 0.0;
};

/// Pairwise (tree) reduction. The result depends only on the order of `terms`.
[[nodiscard]] LogScalar pairwise_sum(std::span<const LogScalar> terms) noexcept;

}  // namespace dlaplace
