#include "dlaplace/lattice.hpp"

#include <cmath>

#include <gtest/gtest.h>

using namespace dlaplace;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST(Lattice, UnitGridPoints) {
  const auto pts = lattice_points(Lattice::unit(10, 1), Region::closed_box(vec({0}), vec({1})));
  ASSERT_EQ(pts.size(), 11u);
  for (std::size_t k = 0; k < pts.size(); ++k) EXPECT_NEAR(pts[k][0], 0.1 * static_cast<double>(k), 1e-15);
}

TEST(Lattice, OpenSidesExcludeBoundary) {
  EXPECT_EQ(count_lattice_points(Lattice::unit(10, 1), Region::open_box(vec({0}), vec({1}))), 9);
  const auto half = Region::box(vec({0}), vec({1}), {true}, {false});
  EXPECT_EQ(count_lattice_points(Lattice::unit(10, 1), half), 10);
}

TEST(Lattice, ScalesLikeNToTheD) {
  const auto reg = Region::closed_box(vec({0, 0}), vec({1, 1}));
  const auto c10 = count_lattice_points(Lattice::unit(10, 2), reg);
  const auto c20 = count_lattice_points(Lattice::unit(20, 2), reg);
  EXPECT_EQ(c10, 121);
  EXPECT_EQ(c20, 441);
  EXPECT_NEAR(static_cast<double>(c20) / static_cast<double>(c10), 4.0, 0.4);
}

TEST(Lattice, CountBoundedByVolumeOverDet) {
  Lattice lat;
  lat.a_matrix = Eigen::Matrix2d{{0.5, 0.2}, {0.0, 1.5}};
  lat.v = vec({0.1, -0.3});
  const auto reg = Region::closed_box(vec({-1, -1}), vec({1, 2}));
  for (const std::int64_t n : {10, 40, 160}) {
    lat.n = n;
    const double det = std::fabs(lat.a_matrix.determinant());
    const double bulk = 6.0 / det * static_cast<double>(n * n);
    const auto c = static_cast<double>(count_lattice_points(lat, reg));
    EXPECT_LE(c, 1.2 * bulk + 40.0 * static_cast<double>(n)) << n;
    EXPECT_GE(c, 0.8 * bulk - 40.0 * static_cast<double>(n)) << n;
  }
}

// The candidate box must cover skewed lattices: compare against a brute scan.
TEST(Lattice, SkewedEnumerationIsComplete) {
  Lattice lat;
  lat.n = 7;
  lat.a_matrix = Eigen::Matrix2d{{1.0, 0.9}, {0.3, 1.1}};
  lat.v = vec({0.05, 0.02});
  const auto reg = Region::predicate(vec({-1, -1}), vec({1, 1}), [](const Eigen::VectorXd& x) { return x.norm() < 1.0; });
  std::int64_t brute = 0;
  for (int a = -100; a <= 100; ++a) {
    for (int b = -100; b <= 100; ++b) brute += reg.contains(lat.point({a, b})) ? 1 : 0;
  }
  EXPECT_EQ(count_lattice_points(lat, reg), brute);
}

TEST(Lattice, LexicographicOrder) {
  IntVector prev;
  for_each_lattice_point(Lattice::unit(3, 2), Region::closed_box(vec({0, 0}), vec({1, 1})),
                         [&](const IntVector& z, const Eigen::VectorXd&) {
                           if (!prev.empty()) EXPECT_LT(prev, z);
                           prev = z;
                         });
}

TEST(Lattice, Validation) {
  Lattice singular;
  singular.a_matrix = Eigen::Matrix2d{{1, 2}, {2, 4}};
  singular.v = vec({0, 0});
  EXPECT_THROW(singular.validate(), std::invalid_argument);
  EXPECT_THROW((void)Region::closed_box(vec({0}), vec({INFINITY})), std::invalid_argument);
}
