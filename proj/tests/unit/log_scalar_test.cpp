#include "dlaplace/log_scalar.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

using dlaplace::LogScalar;
using dlaplace::kNegInf;
using Big = boost::multiprecision::cpp_bin_float_50;

TEST(LnAddExp, Examples) {
  EXPECT_NEAR(dlaplace::ln_add_exp(std::log(2.0), std::log(3.0)), std::log(5.0), 1e-15);
  EXPECT_EQ(dlaplace::ln_add_exp(1.25, kNegInf), 1.25);
  EXPECT_EQ(dlaplace::ln_add_exp(kNegInf, 1.25), 1.25);
  EXPECT_NEAR(dlaplace::ln_add_exp(700.0, 700.0), 700.0 + std::log(2.0), 1e-12);
  EXPECT_EQ(dlaplace::ln_add_exp(kNegInf, kNegInf), kNegInf);
}

TEST(LnSubExp, EqualArgumentsGiveZero) {
  EXPECT_EQ(dlaplace::ln_sub_exp(3.0, 3.0), kNegInf);
  EXPECT_NEAR(dlaplace::ln_sub_exp(std::log(5.0), std::log(2.0)), std::log(3.0), 1e-15);
}

TEST(LogScalar, ZeroAndSigns) {
  EXPECT_TRUE(LogScalar::from_real(0.0).is_zero());
  EXPECT_TRUE(LogScalar::from_log(kNegInf).is_zero());
  const auto a = LogScalar::from_real(-2.0);
  EXPECT_EQ(a.sign(), -1);
  EXPECT_DOUBLE_EQ((a * a).to_real(), 4.0);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_DOUBLE_EQ((a + LogScalar::from_real(5.0)).to_real(), 3.0);
  EXPECT_DOUBLE_EQ((LogScalar::from_real(1.0) - LogScalar::from_real(4.0)).to_real(), -3.0);
  EXPECT_THROW((void)(LogScalar::one() / LogScalar::zero()), std::domain_error);
}

TEST(LogScalar, HugeMagnitudes) {
  const auto a = LogScalar::from_log(5000.0);
  const auto b = LogScalar::from_log(5000.0 + std::log(3.0));
  EXPECT_NEAR((a + b).log_mag(), 5000.0 + std::log(4.0), 1e-12);
  EXPECT_NEAR((b / a).to_real(), 3.0, 1e-12);
}

// 10^4 random mixed-sign operations against 50-digit arithmetic.
TEST(LogScalar, AgreesWithExtendedPrecision) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> mag(-50.0, 50.0);
  std::uniform_int_distribution<int> coin(0, 1);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const double la = mag(rng), lb = mag(rng);
    const int sa = coin(rng) ? 1 : -1, sb = coin(rng) ? 1 : -1;
    const auto a = LogScalar::from_log(la, sa);
    const auto b = LogScalar::from_log(lb, sb);
    const Big ba = Big(sa) * exp(Big(la));
    const Big bb = Big(sb) * exp(Big(lb));
    auto rel = [](const LogScalar& got, const Big& ref) {
      if (ref == 0) return got.is_zero() ? 0.0 : 1.0;
      const Big g = Big(got.sign()) * exp(Big(got.log_mag()));
      return static_cast<double>(abs(g / ref - 1));
    };
    worst = std::max({worst, rel(a * b, ba * bb), rel(a / b, ba / bb)});
    // Sums only make sense relatively when there is no heavy cancellation.
    if (sa == sb || std::fabs(la - lb) > 1.0) worst = std::max(worst, rel(a + b, ba + bb));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(PairwiseSum, MatchesDirectSumAndIsOrderFixed) {
  std::vector<LogScalar> terms;
  double direct = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    terms.push_back(LogScalar::from_real(1.0 / k));
    direct += 1.0 / k;
  }
  const auto s = dlaplace::pairwise_sum(terms);
  EXPECT_NEAR(s.to_real(), direct, 1e-12);
  EXPECT_EQ(s, dlaplace::pairwise_sum(terms));
  EXPECT_TRUE(dlaplace::pairwise_sum({}).is_zero());
}
