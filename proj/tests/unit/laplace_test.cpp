#include "dlaplace/laplace.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

using namespace dlaplace;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const double x : xs) v[i++] = x;
  return v;
}

// g e^{-n x^2} on (-1, 1): H = 2, h(0) = 0.
SummandFamily quadratic_1d(std::function<double(const Eigen::VectorXd&)> g, double g0) {
  SummandFamily f;
  f.eval_g = std::move(g);
  f.eval_h = [](const Eigen::VectorXd& x) { return x[0] * x[0]; };
  f.x0 = vec({0});
  f.g_at_x0 = g0;
  f.hessian_at_x0 = Eigen::MatrixXd::Constant(1, 1, 2.0);
  f.a_limit = Eigen::MatrixXd::Identity(1, 1);
  return f;
}

const Region kUnitInterval = Region::open_box(vec({-1}), vec({1}));

}  // namespace

TEST(DiscreteSum, CountingMeasure) {
  SummandFamily f = quadratic_1d([](const Eigen::VectorXd&) { return 1.0; }, 1.0);
  f.eval_h = [](const Eigen::VectorXd&) { return 0.0; };
  const auto s = discrete_sum(f, Lattice::unit(10, 1), Region::closed_box(vec({0}), vec({1})));
  EXPECT_NEAR(s.to_real(), 11.0, 1e-12);
}

TEST(DiscreteSum, GaussianIntegral) {
  const auto f = quadratic_1d([](const Eigen::VectorXd&) { return 1.0; }, 1.0);
  const double v = normalize_sum(discrete_sum(f, Lattice::unit(10000, 1), kUnitInterval), f, 10000).to_real();
  EXPECT_NEAR(v, std::sqrt(std::numbers::pi), 1e-3);
}

TEST(DiscreteSum, ZeroSummand) {
  const auto f = quadratic_1d([](const Eigen::VectorXd&) { return 0.0; }, 1.0);
  const auto s = discrete_sum(f, Lattice::unit(50, 1), kUnitInterval);
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(s.sign(), 0);
}

TEST(DiscreteSum, ErrorNamesPoint) {
  auto f = quadratic_1d([](const Eigen::VectorXd&) { return 1.0; }, 1.0);
  f.eval_h = [](const Eigen::VectorXd& x) { return x[0] > 0.5 ? std::nan("") : 0.0; };
  try {
    (void)discrete_sum(f, Lattice::unit(10, 1), kUnitInterval);
    FAIL() << "expected throw";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("at (0.59999"), std::string::npos) << e.what();
  }
}

TEST(DiscreteSum, BitIdenticalAcrossThreadCounts) {
  const auto f = quadratic_1d([](const Eigen::VectorXd& x) { return std::cos(x[0]); }, 1.0);
  const auto lat = Lattice::unit(20000, 1);
  const auto a = discrete_sum(f, lat, kUnitInterval, {SumTerm::g_exp_h, 1});
  const auto b = discrete_sum(f, lat, kUnitInterval, {SumTerm::g_exp_h, 4});
  const auto c = discrete_sum(f, lat, kUnitInterval, {SumTerm::g_exp_h, 1});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(Omega, SubstitutionAndScaling) {
  auto f = quadratic_1d([](const Eigen::VectorXd&) { return 1.0; }, 1.0);
  EXPECT_NEAR(omega_asymptote(f, 100).to_real(), std::sqrt(100 * std::numbers::pi), 1e-10);
  EXPECT_NEAR(omega_asymptote(f, 100).to_real() / omega_asymptote(f, 400).to_real(), 0.5, 1e-14);
  f.hessian_at_x0(0, 0) = -1.0;
  EXPECT_THROW((void)omega_asymptote(f, 100), std::domain_error);
}

TEST(GaussianLatticeSum, OneAndTwoDimensions) {
  const double v1 = gaussian_lattice_sum(Eigen::MatrixXd::Identity(1, 1), vec({0}), Lattice::unit(500, 1), kUnitInterval);
  EXPECT_NEAR(v1, std::sqrt(2 * std::numbers::pi), 1e-6);
  const auto sq = Region::open_box(vec({-1, -1}), vec({1, 1}));
  const double v2 = gaussian_lattice_sum(Eigen::MatrixXd::Identity(2, 2), vec({0, 0}), Lattice::unit(500, 2), sq);
  EXPECT_NEAR(v2, 2 * std::numbers::pi, 1e-5);
  Lattice half = Lattice::unit(500, 2);
  half.a_matrix(0, 0) = 0.5;
  const double v3 = gaussian_lattice_sum(Eigen::MatrixXd::Identity(2, 2), vec({0, 0}), half, sq);
  EXPECT_NEAR(v3 / v2, 2.0, 1e-9);
}

TEST(ContinuousReference, AgreesWithRiemannSum) {
  const auto flat = quadratic_1d([](const Eigen::VectorXd&) { return 1.0; }, 1.0);
  EXPECT_NEAR(continuous_reference(flat, kUnitInterval, 10000), std::sqrt(std::numbers::pi), 1e-4);
  const auto f = quadratic_1d([](const Eigen::VectorXd& x) { return std::cos(x[0]); }, 1.0);
  const auto lat = Lattice::unit(10000, 1);
  const double riemann = normalize_sum(discrete_sum(f, lat, kUnitInterval), f, 10000).to_real();
  const double cont = continuous_reference(f, kUnitInterval, 10000);
  EXPECT_NEAR(cont / riemann, 1.0, 1e-3);
  EXPECT_NEAR(cont, std::sqrt(std::numbers::pi), 1e-3);
}

TEST(ContinuousReference, TwoDimensions) {
  SummandFamily f;
  f.eval_g = [](const Eigen::VectorXd&) { return 1.0; };
  f.eval_h = [](const Eigen::VectorXd& x) { return 0.5 * x.squaredNorm(); };
  f.x0 = vec({0, 0});
  f.hessian_at_x0 = Eigen::MatrixXd::Identity(2, 2);
  f.a_limit = Eigen::MatrixXd::Identity(2, 2);
  const double v = continuous_reference(f, Region::open_box(vec({-1, -1}), vec({1, 1})), 400, 1e-7);
  EXPECT_NEAR(v, 2 * std::numbers::pi, 1e-6);
}

TEST(TailDecomposition, PartitionAndDecay) {
  const auto f = quadratic_1d([](const Eigen::VectorXd&) { return 1.0; }, 1.0);
  double prev_frac = 1.0;
  LogScalar prev_ext;
  for (const std::int64_t n : {50, 100, 200, 400}) {
    const auto lat = Lattice::unit(n, 1);
    const auto split = tail_decomposition(f, lat, kUnitInterval, 0.3);
    const auto total = normalize_sum(discrete_sum(f, lat, kUnitInterval), f, n);
    EXPECT_NEAR((split.interior + split.exterior).to_real() / total.to_real(), 1.0, 1e-12);
    const double frac = split.exterior.to_real() / total.to_real();
    EXPECT_LT(frac, prev_frac) << n;
    prev_frac = frac;
    if (n == 400) {
      // From n = 100 to 400 the exterior drops at least like e^{-0.09 * 300 / 2}.
      EXPECT_LE(split.exterior.log_mag() - prev_ext.log_mag(), -0.09 * 300 / 2);
    }
    if (n == 100) prev_ext = split.exterior;
  }
}

TEST(TaylorSandwich, RadiusExists) {
  auto f = quadratic_1d([](const Eigen::VectorXd&) { return 1.0; }, 1.0);
  f.eval_h = [](const Eigen::VectorXd& x) { return 1.0 - std::cos(std::sqrt(2.0) * x[0]); };
  const auto lat = Lattice::unit(1000, 1);
  for (const double eps : {0.1, 0.01}) {
    const double r = taylor_sandwich_radius(f, lat, kUnitInterval, eps, 1.0);
    EXPECT_GT(r, 0.0) << eps;
    for_each_lattice_point(lat, kUnitInterval, [&](const IntVector&, const Eigen::VectorXd& x) {
      if (std::fabs(x[0]) >= r || x[0] == 0.0) return;
      const double ratio = f.eval_h(x) / (x[0] * x[0]);
      EXPECT_GE(ratio, 1.0 - eps);
      EXPECT_LE(ratio, 1.0 + eps);
    });
  }
}

// d = 1 and d = 2 families with a known limit; the error should shrink like 1/n.
TEST(ConvergenceStudy, RatioTendsToOne) {
  const ConvergenceProblem p1{
      [](std::int64_t) { return quadratic_1d([](const Eigen::VectorXd& x) { return std::exp(x[0]); }, 1.0); },
      [](std::int64_t n) { return Lattice::unit(n, 1); }, kUnitInterval};
  const auto rows1 = convergence_study(p1, {100, 200, 400, 800});
  for (std::size_t k = 1; k < rows1.size(); ++k) {
    EXPECT_LT(rows1[k].abs_error, rows1[k - 1].abs_error);
    EXPECT_NEAR(rows1[k].abs_error * static_cast<double>(rows1[k].n),
                rows1[k - 1].abs_error * static_cast<double>(rows1[k - 1].n), 0.1);
  }

  auto family2 = [](std::int64_t) {
    SummandFamily f;
    f.eval_g = [](const Eigen::VectorXd& x) { return 1.0 + x[0] * x[1] + x[0] * x[0]; };
    f.eval_h = [](const Eigen::VectorXd& x) { return x[0] * x[0] + 0.5 * x[0] * x[1] + x[1] * x[1]; };
    f.x0 = vec({0, 0});
    f.hessian_at_x0 = Eigen::Matrix2d{{2.0, 0.5}, {0.5, 2.0}};
    f.a_limit = Eigen::Matrix2d{{1.0, 0.0}, {0.0, 0.5}};
    return f;
  };
  auto lattice2 = [](std::int64_t n) {
    Lattice l = Lattice::unit(n, 2);
    l.a_matrix(1, 1) = 0.5;
    return l;
  };
  const ConvergenceProblem p2{family2, lattice2, Region::open_box(vec({-1, -1}), vec({1, 1}))};
  const auto rows2 = convergence_study(p2, {50, 100, 200, 400});
  for (std::size_t k = 1; k < rows2.size(); ++k) EXPECT_LT(rows2[k].abs_error, rows2[k - 1].abs_error);
  EXPECT_LT(rows2.back().abs_error, 0.01);

  std::ostringstream os;
  write_convergence_csv(os, rows2);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "n,normalized_sum,omega_normalized,ratio,abs_error");
}
