#include "dlaplace/xorsat_asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "dlaplace/special_functions.hpp"
#include "parallel.hpp"

namespace dlaplace {
namespace {

constexpr double kLn2 = std::numbers::ln2;
const double kLn3 = std::log(3.0);

void require_y(double y) {
  if (!(y > 2.0 && y < 3.0)) throw std::domain_error("y must lie in (2, 3), got " + std::to_string(y));
}

// ln of the grid-independent part of S_{m,n}: n 2^{m-n} / S_2(3m, n).
double ln_summand_base(const XorLattice& g) {
  return std::log(static_cast<double>(g.n)) + static_cast<double>(g.m - g.n) * kLn2;
}

// Stirling indices with a nonzero S_2(3m-2j, i) S_2(2j, n-i) in row j.
std::pair<std::int64_t, std::int64_t> nonzero_i_range(const XorLattice& g, std::int64_t j) {
  const std::int64_t lo = std::max<std::int64_t>(g.n - j, 1);
  std::int64_t hi = (3 * g.m - 2 * j) / 2;
  hi = std::min(hi, j > 0 ? g.n - 1 : g.n);
  return {lo, hi};
}

}  // namespace

void XorLattice::validate() const {
  if (m < 1 || n < 1) throw std::domain_error("XorLattice: m and n must be positive");
  if (!(2 * n < 3 * m && 3 * m < 3 * n)) {
    throw std::domain_error("XorLattice: need 2 < 3m/n < 3, got m = " + std::to_string(m) + ", n = " + std::to_string(n));
  }
}

std::pair<std::int64_t, std::int64_t> XorLattice::index_of(double r, double alpha) const {
  const double jr = 1.5 * (1.0 - r) * static_cast<double>(m);
  const double ir = alpha * static_cast<double>(n);
  const auto j = static_cast<std::int64_t>(std::llround(jr));
  const auto i = static_cast<std::int64_t>(std::llround(ir));
  if (std::fabs(jr - static_cast<double>(j)) > 1e-6 || std::fabs(ir - static_cast<double>(i)) > 1e-6) {
    throw std::invalid_argument("point (" + std::to_string(r) + ", " + std::to_string(alpha) +
                                ") is not on the (m, n) grid");
  }
  if (j < 0 || j > m || i < 0 || i > n) throw std::invalid_argument("grid point outside [1/3,1] x [0,1]");
  return {j, i};
}

Lattice XorLattice::lattice() const {
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
  a(0, 0) = 2.0 * static_cast<double>(n) / (3.0 * static_cast<double>(m));
  a(1, 1) = 1.0;
  return Lattice{n, a, Eigen::Vector2d(1.0, 0.0)};
}

Region XorLattice::region(bool include_r1) const {
  // Lattice coordinates carry rounding from A z / n; pad the box slightly.
  constexpr double kPad = 1e-9;
  const Eigen::Vector2d lo(1.0 / 3.0 - kPad, -kPad);
  const Eigen::Vector2d hi(1.0 + kPad, 1.0 + kPad);
  if (include_r1) return Region::closed_box(lo, hi);
  return Region::predicate(lo, hi, [](const Eigen::VectorXd& x) { return x[0] < 1.0 - kPad; });
}

Membership trapezoid_contains(double y, double r, double alpha) {
  const double lower = 1.0 - (1.0 - r) * y / 2.0;
  const double upper = r * y / 2.0;
  // Grid points on an edge land a few ulps to either side once r and alpha are rounded.
  constexpr double kEdgeTol = 1e-12;
  auto near = [](double a, double b) { return std::fabs(a - b) <= kEdgeTol; };
  if (r < 1.0 / 3.0 - kEdgeTol || r > 1.0 + kEdgeTol || alpha < -kEdgeTol || alpha > 1.0 + kEdgeTol) {
    return Membership::exterior;
  }
  if (alpha < lower - kEdgeTol || alpha > upper + kEdgeTol) return Membership::exterior;
  if (near(alpha, lower) || near(alpha, upper) || near(r, 1.0 / 3.0) || near(r, 1.0) || near(alpha, 1.0)) {
    return Membership::boundary;
  }
  return Membership::interior;
}

Membership trapezoid_contains(const XorLattice& g, std::int64_t j, std::int64_t i) {
  if (j < 0 || j > g.m || i < 0 || i > g.n) return Membership::exterior;
  // alpha <= ry/2  <=>  2i <= 3m - 2j;   alpha >= 1 - (1-r)y/2  <=>  i >= n - j.
  const std::int64_t up = 3 * g.m - 2 * j - 2 * i;
  const std::int64_t down = i - (g.n - j);
  if (up < 0 || down < 0) return Membership::exterior;
  if (up == 0 || down == 0 || j == 0 || j == g.m || i == g.n) return Membership::boundary;
  return Membership::interior;
}

LogScalar summand_log(const StirlingTable& table, const XorLattice& g, std::int64_t j, std::int64_t i) {
  if (j < 0 || j > g.m || i < 0 || i > g.n) throw std::out_of_range("summand_log: grid index out of range");
  if (table.p_max() < 3 * g.m) throw std::out_of_range("summand_log: Stirling table does not reach p = 3m");
  const double l1 = table.ln_value(3 * g.m - 2 * j, i);
  const double l2 = table.ln_value(2 * j, g.n - i);
  if (l1 == kNegInf || l2 == kNegInf) return LogScalar::zero();
  // Cancel against S_2(3m, n) first so the r = 1 corner comes out exact.
  const double ratio = l1 - table.ln_value(3 * g.m, g.n);
  return LogScalar::from_log(ln_summand_base(g) + (ratio + (static_cast<double>(j) * kLn3 + ln_binomial(g.m, j) + l2)));
}

LogScalar summand_log(const StirlingTable& table, std::int64_t m, std::int64_t n, double r, double alpha) {
  const XorLattice g{m, n};
  const auto [j, i] = g.index_of(r, alpha);
  return summand_log(table, g, j, i);
}

double g_mn(const XorLattice& g, std::int64_t j, std::int64_t i) {
  if (j == 0) throw std::domain_error("g_mn: r = 1 is excluded");
  if (j < 0 || j > g.m || i < 0 || i > g.n) throw std::out_of_range("g_mn: grid index out of range");
  const std::int64_t p1 = 3 * g.m - 2 * j;
  const double num = g_s(p1, i) * g_s(2 * j, g.n - i) * g_b(i, g.n) * g_b(j, g.m);
  if (num == 0.0) return 0.0;
  return static_cast<double>(g.n) * num / (g_s(3 * g.m, g.n) * g_b(p1, 3 * g.m));
}

double g_y(double y, double r, double alpha) {
  require_y(y);
  if (trapezoid_contains(y, r, alpha) != Membership::interior) {
    throw std::domain_error("g_y: closed form holds on the interior of T_y only");
  }
  return std::sqrt(r) * big_p(y) /
         (std::numbers::pi * alpha * (1.0 - alpha) * std::sqrt(3.0 * r - 1.0) * big_p(r * y / alpha) *
          big_p((1.0 - r) * y / (1.0 - alpha)));
}

bool h_y_is_singular(double r, double alpha) noexcept { return r == 1.0 && alpha == 1.0; }

double h_y_eval(double y, double r, double alpha) {
  require_y(y);
  if (h_y_is_singular(r, alpha)) return std::numeric_limits<double>::quiet_NaN();
  if (trapezoid_contains(y, r, alpha) == Membership::exterior) return 1.0;
  r = std::clamp(r, 1.0 / 3.0, 1.0);
  alpha = std::clamp(alpha, 0.0, 1.0);
  // alpha h^S(ry/alpha) -> 0 as alpha -> 0, likewise for 1 - alpha.
  const double t1 = alpha > 0.0 ? alpha * h_s(r * y / alpha) : 0.0;
  const double t2 = alpha < 1.0 ? (1.0 - alpha) * h_s((1.0 - r) * y / (1.0 - alpha)) : 0.0;
  const double rows = h_b(r) - h_b(1.5 * (1.0 - r)) / 3.0 + kLn2 / 3.0 + kLn3 * (1.0 - r) / 2.0;
  return t1 + t2 - h_s(y) + h_b(alpha) + kLn2 - y * rows;
}

double ln_l_ry(double y, double r, double alpha) {
  return std::log(alpha) - std::log1p(-alpha) + ln_big_a((1.0 - r) * y / (1.0 - alpha)) - ln_big_a(r * y / alpha);
}

std::pair<double, double> alpha_bracket(double y, double r) {
  return {1.0 - (1.0 - r) * y / 2.0, std::min(r * y / 2.0, 1.0)};
}

double alpha_y(double y, double r) {
  require_y(y);
  if (!(r >= 1.0 / 3.0 && r < 1.0)) throw std::domain_error("alpha_y: r must lie in [1/3, 1)");
  auto [lo, hi] = alpha_bracket(y, r);
  if (!(lo < hi)) throw std::runtime_error("alpha_y: empty bracket");
  // ln L runs from -inf at lo to +inf at hi and is increasing in between.
  double best = 0.5 * (lo + hi);
  double best_abs = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double v = ln_l_ry(y, r, mid);
    if (std::isnan(v)) throw std::runtime_error("alpha_y: L evaluation failed");
    if (std::fabs(v) < best_abs) {
      best_abs = std::fabs(v);
      best = mid;
    }
    if (v == 0.0) break;
    (v < 0.0 ? lo : hi) = mid;
  }
  return best;
}

double CenterData::omega_ratio() const {
  return 2.0 * std::numbers::pi * g_center / (det_a * std::sqrt(hessian.determinant()));
}

CenterData center_data(double y) {
  require_y(y);
  const double p = big_p(y);
  const double a = 4.0 * y * y / (p * p);
  CenterData c;
  c.y = y;
  c.g_center = 4.0 / (std::numbers::pi * p);
  c.hessian << a, -a, -a, a + 4.0;
  c.det_a = 2.0 / y;
  return c;
}

HessianCheck hessian_fd_check(double y, double step) {
  require_y(y);
  const double r0 = 0.5;
  const double a0 = 0.5;
  const double h = step;
  auto f = [&](double r, double a) { return h_y_eval(y, r, a); };
  const double f00 = f(r0, a0);
  HessianCheck out;
  out.fd(0, 0) = (f(r0 + h, a0) - 2.0 * f00 + f(r0 - h, a0)) / (h * h);
  out.fd(1, 1) = (f(r0, a0 + h) - 2.0 * f00 + f(r0, a0 - h)) / (h * h);
  // Mixed partial in both nesting orders.
  const double dr_up = (f(r0 + h, a0 + h) - f(r0 - h, a0 + h)) / (2.0 * h);
  const double dr_dn = (f(r0 + h, a0 - h) - f(r0 - h, a0 - h)) / (2.0 * h);
  const double da_rt = (f(r0 + h, a0 + h) - f(r0 + h, a0 - h)) / (2.0 * h);
  const double da_lf = (f(r0 - h, a0 + h) - f(r0 - h, a0 - h)) / (2.0 * h);
  out.fd(0, 1) = (dr_up - dr_dn) / (2.0 * h);
  out.fd(1, 0) = (da_rt - da_lf) / (2.0 * h);
  out.closed_form = center_data(y).hessian;
  out.asymmetry = std::fabs(out.fd(0, 1) - out.fd(1, 0));
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double dev = std::fabs(out.fd(r, c) - out.closed_form(r, c)) / std::fabs(out.closed_form(r, c));
      out.max_rel_deviation = std::max(out.max_rel_deviation, dev);
    }
  }
  const Eigen::Matrix2d sym = 0.5 * (out.fd + out.fd.transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(sym);
  out.fd_positive_definite = eig.eigenvalues().minCoeff() > 0.0;
  return out;
}

Eigen::Vector2d h_y_gradient_fd(double y, double step) {
  require_y(y);
  auto f = [&](double r, double a) { return h_y_eval(y, r, a); };
  return {(f(0.5 + step, 0.5) - f(0.5 - step, 0.5)) / (2.0 * step),
          (f(0.5, 0.5 + step) - f(0.5, 0.5 - step)) / (2.0 * step)};
}

namespace {

struct GridMin {
  double value = std::numeric_limits<double>::infinity();
  double r = 0.0;
  double a = 0.0;
  std::int64_t count = 0;
};

// Uniform scan of [1/3, 1) x [0, 1] skipping the open ball of radius^2 r2 around the centre.
GridMin scan_h_y(double y, double r2, int grid_per_axis, unsigned threads) {
  auto in_ball = [&](double r, double a) { return (r - 0.5) * (r - 0.5) + (a - 0.5) * (a - 0.5) < r2; };
  const auto rows = static_cast<std::size_t>(grid_per_axis);
  std::vector<GridMin> row_min(rows);
  detail::parallel_for(rows, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const double r = 1.0 / 3.0 + (2.0 / 3.0) * static_cast<double>(k) / grid_per_axis;
      GridMin& best = row_min[k];
      for (int l = 0; l <= grid_per_axis; ++l) {
        const double a = static_cast<double>(l) / grid_per_axis;
        if (in_ball(r, a)) continue;
        ++best.count;
        const double v = h_y_eval(y, r, a);
        if (v < best.value) best = {v, r, a, best.count};
      }
    }
  });
  GridMin out;
  for (const auto& rm : row_min) {
    out.count += rm.count;
    if (rm.value < out.value) out = {rm.value, rm.r, rm.a, out.count};
  }
  return out;
}

}  // namespace

HyMinimum h_y_minimum(double y, int grid_per_axis, unsigned threads) {
  require_y(y);
  if (grid_per_axis < 2) throw std::invalid_argument("h_y_minimum: grid too small");
  const GridMin coarse = scan_h_y(y, -1.0, grid_per_axis, threads);
  // For fixed r the minimum over alpha sits on the curve alpha_y(r), so the
  // refinement is one-dimensional: golden section in r around the grid argmin.
  const double step = (2.0 / 3.0) / grid_per_axis;
  double lo = std::max(1.0 / 3.0, coarse.r - step);
  double hi = std::min(1.0 - 1e-9, coarse.r + step);
  auto on_curve = [&](double r) { return h_y_eval(y, r, alpha_y(y, r)); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = on_curve(x1);
  double f2 = on_curve(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = on_curve(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = on_curve(x2);
    }
  }
  HyMinimum out;
  out.r = f1 <= f2 ? x1 : x2;
  out.alpha = alpha_y(y, out.r);
  out.value = h_y_eval(y, out.r, out.alpha);
  if (coarse.value < out.value) out = {coarse.r, coarse.a, coarse.value};
  return out;
}

PositivityCertificate positivity_certificate(double y, double excluded_radius, int grid_per_axis, int curve_points,
                                             unsigned threads) {
  require_y(y);
  if (!(excluded_radius > 0.0)) throw std::invalid_argument("positivity_certificate: radius must be positive");
  if (grid_per_axis < 2 || curve_points < 2) throw std::invalid_argument("positivity_certificate: grid too small");
  const double r2 = excluded_radius * excluded_radius;
  auto in_ball = [&](double r, double a) { return (r - 0.5) * (r - 0.5) + (a - 0.5) * (a - 0.5) < r2; };
  const GridMin grid = scan_h_y(y, r2, grid_per_axis, threads);
  PositivityCertificate out;
  out.grid_min = grid.value;
  out.grid_argmin = {grid.r, grid.a};
  out.grid_points = grid.count;

  out.curve_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < curve_points; ++k) {
    const double r = 1.0 / 3.0 + (2.0 / 3.0) * static_cast<double>(k) / curve_points;
    const double a = alpha_y(y, r);
    if (in_ball(r, a)) continue;
    const double v = h_y_eval(y, r, a);
    if (v < out.curve_min) {
      out.curve_min = v;
      out.curve_argmin_r = r;
    }
  }
  out.min = std::min(out.grid_min, out.curve_min);
  return out;
}

std::vector<CurvePoint> alpha_curve(double y, int points, double r_max) {
  require_y(y);
  if (points < 2) throw std::invalid_argument("alpha_curve: need at least 2 points");
  if (!(r_max > 1.0 / 3.0 && r_max < 1.0)) throw std::invalid_argument("alpha_curve: r_max must lie in (1/3, 1)");
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double r = 1.0 / 3.0 + (r_max - 1.0 / 3.0) * static_cast<double>(k) / (points - 1);
    const double a = alpha_y(y, r);
    out.push_back({r, a, h_y_eval(y, r, a)});
  }
  return out;
}

void write_alpha_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
  const auto old_precision = out.precision(17);
  out << "r,alpha_y,h_on_curve\n";
  for (const auto& p : curve) out << p.r << ',' << p.alpha << ',' << p.h << '\n';
  out.precision(old_precision);
}

std::int64_t m_for(double c, std::int64_t n) {
  if (!(c > 2.0 / 3.0 && c < 1.0)) {
    throw std::domain_error("c = " + std::to_string(c) + " outside the regime (2/3, 1)");
  }
  return static_cast<std::int64_t>(std::llround(c * static_cast<double>(n)));
}

LogScalar grid_sum(const StirlingTable& table, const XorLattice& g, bool include_r1, unsigned threads) {
  g.validate();
  if (table.p_max() < 3 * g.m) throw std::out_of_range("grid_sum: Stirling table does not reach p = 3m");
  const double base = ln_summand_base(g);
  const double ln_s_total = table.ln_value(3 * g.m, g.n);
  const std::int64_t j0 = include_r1 ? 0 : 1;
  const auto rows = static_cast<std::size_t>(g.m - j0 + 1);
  std::vector<LogScalar> row_sums(rows);
  detail::parallel_for(rows, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<LogScalar> terms;
    for (std::size_t k = begin; k < end; ++k) {
      const std::int64_t j = j0 + static_cast<std::int64_t>(k);
      const auto [lo, hi] = nonzero_i_range(g, j);
      terms.clear();
      const double row_weight = static_cast<double>(j) * kLn3 + ln_binomial(g.m, j);
      for (std::int64_t i = lo; i <= hi; ++i) {
        const double ratio = table.ln_value(3 * g.m - 2 * j, i) - ln_s_total;
        terms.push_back(LogScalar::from_log(base + (ratio + (row_weight + table.ln_value(2 * j, g.n - i)))));
      }
      row_sums[k] = pairwise_sum(terms);
    }
  });
  return pairwise_sum(row_sums);
}

SumLimitResult sum_limit_experiment(double c, const std::vector<std::int64_t>& n_list, unsigned threads) {
  SumLimitResult result;
  result.c = c;
  std::vector<XorLattice> grids;
  std::int64_t p_max = 0;
  for (const std::int64_t n : n_list) {
    if (n < 1) throw std::invalid_argument("sum_limit_experiment: n must be positive");
    const XorLattice g{m_for(c, n), n};
    if (!(2 * g.n < 3 * g.m && g.m < g.n)) {
      result.skipped_n.push_back(n);
      continue;
    }
    grids.push_back(g);
    p_max = std::max(p_max, 3 * g.m);
  }
  if (grids.empty()) return result;
  const StirlingTable table = StirlingTable::build(p_max, StirlingMode::log_space);
  for (const auto& g : grids) {
    const double nn = static_cast<double>(g.n);
    SumLimitRow row;
    row.n = g.n;
    row.m = g.m;
    const LogScalar total = grid_sum(table, g, true, threads);
    row.normalized_sum = (total / LogScalar::from_real(nn)).to_real();
    row.corner_term = (summand_log(table, g, 0, g.n) / LogScalar::from_real(nn)).to_real();
    row.err_vs_1 = std::fabs(row.normalized_sum - 1.0);
    result.rows.push_back(row);
  }
  return result;
}

void write_sum_limit_csv(std::ostream& out, const SumLimitResult& result) {
  const auto old_precision = out.precision(17);
  out << "n,m,normalized_sum,corner_term,err_vs_1\n";
  for (const auto& r : result.rows) {
    out << r.n << ',' << r.m << ',' << r.normalized_sum << ',' << r.corner_term << ',' << r.err_vs_1 << '\n';
  }
  out.precision(old_precision);
}

EnvelopeDominance envelope_dominance(const StirlingTable& table, const XorLattice& g,
                                     const EnvelopeConstants& constants) {
  g.validate();
  const double y = g.y();
  const double nn = static_cast<double>(g.n);
  EnvelopeDominance out;
  out.bound = constants.stirling_over_simple.max * constants.stirling_over_simple.max *
              constants.binomial_over_envelope.max * constants.binomial_over_envelope.max /
              (constants.stirling_over_simple.min * constants.binomial_over_envelope.min);
  out.min_ratio = std::numeric_limits<double>::infinity();
  for (std::int64_t j = 1; j <= g.m; ++j) {
    for (std::int64_t i = 0; i <= g.n; ++i) {
      const LogScalar s = summand_log(table, g, j, i);
      if (s.is_zero()) continue;
      ++out.points;
      const double gv = g_mn(g, j, i);
      if (gv == 0.0) {
        out.max_ratio = std::numeric_limits<double>::infinity();
        continue;
      }
      const double ln_env = std::log(gv) - nn * h_y_eval(y, g.r_at(j), g.alpha_at(i));
      const double ratio = std::exp(s.log_mag() - ln_env);
      out.max_ratio = std::max(out.max_ratio, ratio);
      out.min_ratio = std::min(out.min_ratio, ratio);
    }
  }
  out.dominated = out.max_ratio <= out.bound;
  return out;
}

double local_asymptotic_error(const StirlingTable& table, const XorLattice& g, double radius) {
  g.validate();
  const double y = g.y();
  const double nn = static_cast<double>(g.n);
  double worst = 0.0;
  for (std::int64_t j = 1; j <= g.m; ++j) {
    const double r = g.r_at(j);
    if (std::fabs(r - 0.5) >= radius) continue;
    for (std::int64_t i = 0; i <= g.n; ++i) {
      const double a = g.alpha_at(i);
      if ((r - 0.5) * (r - 0.5) + (a - 0.5) * (a - 0.5) >= radius * radius) continue;
      if (trapezoid_contains(g, j, i) != Membership::interior) continue;
      const double ln_env = std::log(g_mn(g, j, i)) - nn * h_y_eval(y, r, a);
      worst = std::max(worst, std::fabs(std::expm1(summand_log(table, g, j, i).log_mag() - ln_env)));
    }
  }
  return worst;
}

SummandFamily xor_family(const StirlingTable& table, const XorLattice& grid) {
  grid.validate();
  const double y = grid.y();
  const CenterData center = center_data(y);
  SummandFamily f;
  f.eval_s = [&table, grid](const Eigen::VectorXd& x) {
    const auto [j, i] = grid.index_of(x[0], x[1]);
    return summand_log(table, grid, j, i);
  };
  f.eval_g = [grid](const Eigen::VectorXd& x) {
    const auto [j, i] = grid.index_of(x[0], x[1]);
    return g_mn(grid, j, i);
  };
  f.eval_h = [grid, y](const Eigen::VectorXd& x) {
    const auto [j, i] = grid.index_of(x[0], x[1]);
    return h_y_eval(y, grid.r_at(j), grid.alpha_at(i));
  };
  f.x0 = Eigen::Vector2d(0.5, 0.5);
  f.h_at_x0 = 0.0;
  f.g_at_x0 = center.g_center;
  f.hessian_at_x0 = center.hessian;
  f.a_limit = Eigen::Vector2d(center.det_a, 1.0).asDiagonal();
  return f;
}

}  // namespace dlaplace
