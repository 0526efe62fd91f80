#include "dlaplace/log_scalar.hpp"

#include <stdexcept>

namespace dlaplace {

double ln_add_exp(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

double ln_sub_exp(double a, double b) noexcept {
  if (b == kNegInf) return a;
  if (a <= b) return kNegInf;
  const double d = b - a;
  // log1p(-e^d) loses accuracy for d near 0; log(-expm1(d)) does not.
  return a + (d > -0.6931471805599453 ? std::log(-std::expm1(d)) : std::log1p(-std::exp(d)));
}

LogScalar& LogScalar::operator*=(const LogScalar& rhs) noexcept {
  if (sign_ == 0 || rhs.sign_ == 0) {
    *this = zero();
    return *this;
  }
  sign_ *= rhs.sign_;
  log_mag_ += rhs.log_mag_;
  return *this;
}

LogScalar& LogScalar::operator/=(const LogScalar& rhs) {
  if (rhs.sign_ == 0) throw std::domain_error("LogScalar: division by zero");
  if (sign_ == 0) return *this;
  sign_ *= rhs.sign_;
  log_mag_ -= rhs.log_mag_;
  return *this;
}

LogScalar& LogScalar::operator+=(const LogScalar& rhs) noexcept {
  if (rhs.sign_ == 0) return *this;
  if (sign_ == 0) {
    *this = rhs;
    return *this;
  }
  if (sign_ == rhs.sign_) {
    log_mag_ = ln_add_exp(log_mag_, rhs.log_mag_);
    return *this;
  }
  if (log_mag_ == rhs.log_mag_) {
    *this = zero();
  } else if (log_mag_ > rhs.log_mag_) {
    log_mag_ = ln_sub_exp(log_mag_, rhs.log_mag_);
  } else {
    log_mag_ = ln_sub_exp(rhs.log_mag_, log_mag_);
    sign_ = rhs.sign_;
  }
  return *this;
}

LogScalar pairwise_sum(std::span<const LogScalar> terms) noexcept {
  // Below this size a left fold is as accurate as the tree in practice and the
  // split points stay fixed, so results remain reproducible.
  constexpr std::size_t kLeaf = 8;
  if (terms.size() <= kLeaf) {
    LogScalar acc;
    for (const auto& t : terms) acc += t;
    return acc;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace dlaplace
