#include "dlaplace/xorsat_asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "dlaplace/special_functions.hpp"

using namespace dlaplace;

namespace {

constexpr double kYs[] = {2.1, 2.5, 2.9};

BigInt big_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

BigInt pow_int(int base, int e) {
  BigInt r = 1;
  for (int t = 0; t < e; ++t) r *= base;
  return r;
}

// Ordinary Stirling numbers from the explicit alternating sum, then
// S_2(p,q) = sum_i (-1)^i C(p,i) S(p-i, q-i). No recurrence involved.
BigInt ordinary_stirling(int p, int q) {
  if (p == 0 && q == 0) return 1;
  if (q == 0) return 0;
  BigInt acc = 0;
  for (int j = 0; j <= q; ++j) {
    const BigInt term = big_binomial(q, j) * pow_int(q - j, p);
    acc += (j % 2 ? -term : term);
  }
  BigInt fact = 1;
  for (int t = 2; t <= q; ++t) fact *= t;
  return acc / fact;
}

BigInt associated_stirling(int p, int q) {
  BigInt acc = 0;
  for (int i = 0; i <= q && i <= p; ++i) {
    const BigInt term = big_binomial(p, i) * ordinary_stirling(p - i, q - i);
    acc += (i % 2 ? -term : term);
  }
  return acc;
}

}  // namespace

TEST(OracleSelfCheck, KnownValues) {
  EXPECT_EQ(associated_stirling(4, 2), 3);
  EXPECT_EQ(associated_stirling(6, 3), 15);
  EXPECT_EQ(associated_stirling(7, 3), 105);
}

TEST(XorLattice, Validation) {
  EXPECT_NO_THROW((XorLattice{8, 10}.validate()));
  EXPECT_THROW((XorLattice{6, 10}.validate()), std::domain_error);
  EXPECT_THROW((XorLattice{10, 10}.validate()), std::domain_error);
  const XorLattice g{8, 10};
  const std::pair<std::int64_t, std::int64_t> expected{3, 7};
  EXPECT_EQ(g.index_of(g.r_at(3), g.alpha_at(7)), expected);
  EXPECT_THROW((void)g.index_of(0.77, 0.5), std::invalid_argument);
}

TEST(Trapezoid, Classification) {
  for (const double y : kYs) EXPECT_EQ(trapezoid_contains(y, 0.5, 0.5), Membership::interior);
  EXPECT_EQ(trapezoid_contains(2.1, 1.0 / 3.0, 0.99), Membership::exterior);
  // alpha n = 3 r m / 2 exactly: m = 8, n = 10, j = 2 gives 3m - 2j = 20 = 2i at i = 10.
  const XorLattice g{8, 10};
  EXPECT_EQ(trapezoid_contains(g, 2, 10), Membership::boundary);
  EXPECT_EQ(trapezoid_contains(g, 4, 7), Membership::interior);
  EXPECT_EQ(trapezoid_contains(g, 1, 8), Membership::exterior);
}

TEST(Summand, CornerAndExterior) {
  const XorLattice g{8, 10};
  const auto table = StirlingTable::build(24, StirlingMode::exact);
  EXPECT_NEAR(summand_log(table, g, 0, 10).to_real(), 10.0 * std::ldexp(1.0, -2), 1e-14);
  for (std::int64_t j = 0; j <= g.m; ++j) {
    for (std::int64_t i = 0; i <= g.n; ++i) {
      if (trapezoid_contains(g, j, i) == Membership::exterior) EXPECT_TRUE(summand_log(table, g, j, i).is_zero());
    }
  }
  EXPECT_THROW((void)summand_log(StirlingTable::build(20, StirlingMode::exact), g, 1, 5), std::out_of_range);
}

TEST(Summand, ExactBigIntegerOracle) {
  const auto table = StirlingTable::build(36, StirlingMode::log_space);
  double worst = 0.0;
  int grids = 0;
  for (int n = 2; n <= 12; ++n) {
    for (int m = 1; m <= 10; ++m) {
      if (!(2 * n < 3 * m && m < n)) continue;
      ++grids;
      const XorLattice g{m, n};
      const BigInt total = associated_stirling(3 * m, n);
      for (int j = 0; j <= m; ++j) {
        for (int i = 0; i <= n; ++i) {
          // n 2^{m-n} 3^j C(m,j) S_2(3m-2j,i) S_2(2j,n-i) / S_2(3m,n), with 2^{m-n} moved to the denominator.
          const BigInt num = n * pow_int(3, j) * big_binomial(m, j) * associated_stirling(3 * m - 2 * j, i) *
                             associated_stirling(2 * j, n - i);
          const BigInt den = total << (n - m);
          const auto got = summand_log(table, g, j, i);
          if (num == 0) {
            ASSERT_TRUE(got.is_zero()) << m << "," << n << "," << j << "," << i;
            continue;
          }
          const double ref = ln_bigint(num) - ln_bigint(den);
          worst = std::max(worst, std::fabs(std::expm1(got.log_mag() - ref)));
        }
      }
    }
  }
  EXPECT_GT(grids, 5);
  EXPECT_LT(worst, 1e-10);
}

TEST(GMn, MatchesClosedFormAndBound) {
  const XorLattice g{80, 100};
  double worst = 0.0;
  double biggest = 0.0;
  for (std::int64_t j = 1; j <= g.m; ++j) {
    for (std::int64_t i = 0; i <= g.n; ++i) {
      const double v = g_mn(g, j, i);
      biggest = std::max(biggest, v);
      const auto where = trapezoid_contains(g, j, i);
      if (where == Membership::exterior) EXPECT_EQ(v, 0.0);
      if (where == Membership::interior && i > 0 && i < g.n) {
        worst = std::max(worst, std::fabs(v / g_y(g.y(), g.r_at(j), g.alpha_at(i)) - 1.0));
      }
    }
  }
  EXPECT_LT(worst, 1e-10);
  const double cap = 0.8;
  EXPECT_LE(biggest, 1.5 * std::pow(cap, 1.5) * 1e6);
  EXPECT_THROW((void)g_mn(g, 0, 100), std::domain_error);
}

TEST(HY, ValuesAndGradient) {
  for (const double y : kYs) {
    EXPECT_LE(std::fabs(h_y_eval(y, 0.5, 0.5)), 1e-12);
    EXPECT_LT(h_y_gradient_fd(y).norm(), 1e-6);
  }
  EXPECT_EQ(h_y_eval(2.1, 1.0 / 3.0, 0.99), 1.0);
  EXPECT_TRUE(std::isnan(h_y_eval(2.5, 1.0, 1.0)));
  EXPECT_TRUE(h_y_is_singular(1.0, 1.0));
  EXPECT_THROW((void)h_y_eval(3.5, 0.5, 0.5), std::domain_error);
}

TEST(HY, ConvexInAlpha) {
  for (const double y : kYs) {
    for (const double r : {0.35, 0.5, 0.7, 0.95}) {
      const auto [lo, hi] = alpha_bracket(y, r);
      const double d = (hi - lo) / 200.0;
      for (int k = 2; k < 198; ++k) {
        const double a = lo + k * d;
        const double second = h_y_eval(y, r, a + d) - 2 * h_y_eval(y, r, a) + h_y_eval(y, r, a - d);
        ASSERT_GT(second, 0.0) << y << " " << r << " " << a;
      }
    }
  }
}

TEST(AlphaY, LocationAndInterior) {
  for (const double y : kYs) {
    EXPECT_NEAR(alpha_y(y, 0.5), 0.5, 1e-12);
    EXPECT_GT(alpha_y(y, 0.4), 0.4);
    EXPECT_LT(alpha_y(y, 0.7), 0.7);
    for (int k = 0; k < 100; ++k) {
      const double r = 1.0 / 3.0 + (2.0 / 3.0) * k / 100.0;
      const double a = alpha_y(y, r);
      EXPECT_GT(a, 1.0 - (1.0 - r) * y / 2.0);
      EXPECT_LT(a, std::min(r * y / 2.0, 1.0));
      EXPECT_LE(std::fabs(std::expm1(ln_l_ry(y, r, a))), 1e-11);
    }
  }
  EXPECT_THROW((void)alpha_y(2.5, 1.0), std::domain_error);
}

TEST(CenterData, ReferenceValues) {
  for (const double y : kYs) {
    const auto c = center_data(y);
    EXPECT_NEAR(c.g_center, 4.0 / (std::numbers::pi * big_p(y)), 1e-14);
    const double p = big_p(y);
    EXPECT_NEAR(c.hessian.determinant() / (16.0 * y * y / (p * p)), 1.0, 1e-12);
    EXPECT_NEAR(c.det_a, 2.0 / y, 1e-15);
    EXPECT_NEAR(c.omega_ratio(), 1.0, 1e-12);
  }
}

TEST(Hessian, FiniteDifferenceAgreement) {
  for (const double y : kYs) {
    const auto h = hessian_fd_check(y, 1e-4);
    EXPECT_LT(h.max_rel_deviation, 1e-4) << y;
    EXPECT_TRUE(h.fd_positive_definite);
    EXPECT_LT(h.asymmetry, 1e-7);
  }
}

TEST(Positivity, CertificateAndCurveEnds) {
  const double y = 2.5;
  const auto cert = positivity_certificate(y, 0.05, 400, 2000, 2);
  EXPECT_GT(cert.min, 0.0);
  EXPECT_GT(cert.grid_points, 150000);
  EXPECT_LE(cert.grid_points, 400 * 401);
  const auto curve = alpha_curve(y, 200);
  ASSERT_EQ(curve.size(), 200u);
  EXPECT_NEAR(curve.back().r, 0.999, 1e-12);
  EXPECT_LT(std::fabs(curve.back().h - std::numbers::ln2 * (1.0 - y / 3.0)), 0.01);
  EXPECT_GE(curve.front().h, y * (2.0 * std::log(3.0) / 3.0 - std::numbers::ln2));
  std::ostringstream os;
  write_alpha_curve_csv(os, curve);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "r,alpha_y,h_on_curve");
}

TEST(SumLimit, RegimeAndOutput) {
  EXPECT_EQ(m_for(0.8, 1600), 1280);
  EXPECT_THROW((void)m_for(1.2, 100), std::domain_error);
  EXPECT_THROW((void)m_for(0.6, 100), std::domain_error);
  const auto res = sum_limit_experiment(0.8, {1600});
  ASSERT_EQ(res.rows.size(), 1u);
  EXPECT_LT(res.rows[0].err_vs_1, 0.1);
  EXPECT_NEAR(res.rows[0].corner_term / std::ldexp(1.0, -320), 1.0, 1e-12);
  // n = 2: m = 2 is not < n, so it is skipped rather than run.
  const auto skipped = sum_limit_experiment(0.8, {2, 400});
  EXPECT_EQ(skipped.skipped_n, std::vector<std::int64_t>{2});
  std::ostringstream os;
  write_sum_limit_csv(os, res);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "n,m,normalized_sum,corner_term,err_vs_1");
}

TEST(GridSum, ThreadIndependentAndMatchesEngine) {
  const XorLattice g{160, 200};
  const auto table = StirlingTable::build(3 * g.m, StirlingMode::log_space);
  const auto a = grid_sum(table, g, true, 1);
  EXPECT_EQ(a, grid_sum(table, g, true, 3));
  const auto interior = grid_sum(table, g, false, 1);
  const auto family = xor_family(table, g);
  const auto engine = discrete_sum(family, g.lattice(), g.region(false), {SumTerm::s_k, 2});
  EXPECT_NEAR(engine.log_mag() - interior.log_mag(), 0.0, 1e-12);
  // The r = 1 column is the single corner term.
  const auto corner = summand_log(table, g, 0, g.n);
  EXPECT_NEAR(corner.to_real() / (g.n * std::ldexp(1.0, static_cast<int>(g.m - g.n))), 1.0, 1e-12);
  EXPECT_NEAR((interior + corner).log_mag() - a.log_mag(), 0.0, 1e-12);
}

TEST(Envelope, DominanceAndLocalAsymptotics) {
  const auto big = StirlingTable::build(3 * 1280, StirlingMode::log_space);
  const auto constants = measure_envelope_constants(big, 400, 60);
  const auto dom = envelope_dominance(big, XorLattice{160, 200}, constants);
  EXPECT_GT(dom.points, 0);
  EXPECT_TRUE(dom.dominated) << dom.max_ratio << " vs " << dom.bound;
  double prev = 1.0;
  for (const std::int64_t n : {400, 800, 1600}) {
    const double err = local_asymptotic_error(big, XorLattice{m_for(0.8, n), n});
    EXPECT_LT(err, prev) << n;
    prev = err;
  }
}

TEST(HyMinimum, FindsCentre) {
  for (const double y : kYs) {
    // An odd grid never lands on (1/2, 1/2), so the refinement has to do the work.
    const auto best = h_y_minimum(y, 97, 2);
    EXPECT_NEAR(best.r, 0.5, 1e-6) << y;
    EXPECT_NEAR(best.alpha, 0.5, 1e-6) << y;
    EXPECT_LE(std::fabs(best.value), 1e-12) << y;
  }
}
