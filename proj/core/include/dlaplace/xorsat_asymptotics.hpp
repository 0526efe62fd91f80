#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dlaplace/laplace.hpp"
#include "dlaplace/lattice.hpp"
#include "dlaplace/log_scalar.hpp"
#include "dlaplace/stirling.hpp"

namespace dlaplace {

/// The (r, alpha) grid for an m x n 3XOR system. Points are indexed by
///   j = (3/2)(1-r)m in [0, m]  and  i = alpha n in [0, n],
/// so r = 1 - 2j/(3m). The two Stirling arguments are then
///   (3m - 2j, i) and (2j, n - i).
struct XorLattice {
  std::int64_t m = 1;
  std::int64_t n = 1;

  /// Throws std::domain_error unless m, n >= 1 and 2 < 3m/n < 3.
  void validate() const;
  [[nodiscard]] double y() const noexcept { return 3.0 * static_cast<double>(m) / static_cast<double>(n); }
  [[nodiscard]] double r_at(std::int64_t j) const noexcept {
    return 1.0 - 2.0 * static_cast<double>(j) / (3.0 * static_cast<double>(m));
  }
  [[nodiscard]] double alpha_at(std::int64_t i) const noexcept {
    return static_cast<double>(i) / static_cast<double>(n);
  }
  /// Nearest (j, i) for a real point; throws std::invalid_argument if the point is off the grid.
  [[nodiscard]] std::pair<std::int64_t, std::int64_t> index_of(double r, double alpha) const;

  /// (1/n) diag(2n/(3m), 1) Z^2 + (1, 0).
  [[nodiscard]] Lattice lattice() const;
  /// [1/3, 1] x [0, 1], with r = 1 dropped unless include_r1.
  [[nodiscard]] Region region(bool include_r1) const;
};

enum class Membership { exterior, boundary, interior };

/// Position relative to T_y = {1 - (1-r)y/2 <= alpha <= ry/2} inside [1/3,1] x [0,1].
/// Edges r = 1/3, r = 1 and alpha = 1 count as boundary.
[[nodiscard]] Membership trapezoid_contains(double y, double r, double alpha);

/// Same classification on the grid, decided in integer arithmetic (y = 3m/n).
[[nodiscard]] Membership trapezoid_contains(const XorLattice& grid, std::int64_t j, std::int64_t i);

/// ln-space S_{m,n} at grid index (j, i). Exactly zero where a Stirling factor vanishes.
/// The table must reach p = 3m.
[[nodiscard]] LogScalar summand_log(const StirlingTable& table, const XorLattice& grid, std::int64_t j,
                                    std::int64_t i);
/// Real-coordinate form; rejects points off the grid.
[[nodiscard]] LogScalar summand_log(const StirlingTable& table, std::int64_t m, std::int64_t n, double r,
                                    double alpha);

/// Envelope prefactor built from g^S and g^B. j = 0 (r = 1) is rejected.
[[nodiscard]] double g_mn(const XorLattice& grid, std::int64_t j, std::int64_t i);

/// Closed form sqrt(r) P(y) / (pi alpha (1-alpha) sqrt(3r-1) P(ry/alpha) P((1-r)y/(1-alpha)))
/// on the interior of T_y.
[[nodiscard]] double g_y(double y, double r, double alpha);

/// Rate function h_y. Returns 1 off T_y, and NaN at the corner (1, 1) where
/// h_y has no limit; see h_y_is_singular.
[[nodiscard]] double h_y_eval(double y, double r, double alpha);
[[nodiscard]] bool h_y_is_singular(double r, double alpha) noexcept;

/// ln L_{r,y}(alpha) = ln[alpha A((1-r)y/(1-alpha)) / ((1-alpha) A(ry/alpha))].
[[nodiscard]] double ln_l_ry(double y, double r, double alpha);

/// Admissible alpha interval (1 - (1-r)y/2, min(ry/2, 1)) for fixed r.
[[nodiscard]] std::pair<double, double> alpha_bracket(double y, double r);

/// Root of L_{r,y}(alpha) = 1 by bisection. y in (2,3), r in [1/3, 1).
[[nodiscard]] double alpha_y(double y, double r);

struct CenterData {
  double y = 0.0;
  double g_center = 0.0;  // 4 / (pi P(y))
  Eigen::Matrix2d hessian;
  double det_a = 0.0;  // 2/y
  /// 2 pi g / (det_a sqrt(det H)); identically 1.
  [[nodiscard]] double omega_ratio() const;
};

[[nodiscard]] CenterData center_data(double y);

struct HessianCheck {
  Eigen::Matrix2d fd;
  Eigen::Matrix2d closed_form;
  double max_rel_deviation = 0.0;
  double asymmetry = 0.0;  // |H12 - H21| of the FD matrix
  bool fd_positive_definite = false;
};

[[nodiscard]] HessianCheck hessian_fd_check(double y, double step = 1e-4);

/// Central-difference gradient of h_y at (1/2, 1/2).
[[nodiscard]] Eigen::Vector2d h_y_gradient_fd(double y, double step = 1e-6);

struct PositivityCertificate {
  double grid_min = 0.0;
  Eigen::Vector2d grid_argmin = Eigen::Vector2d::Zero();
  double curve_min = 0.0;
  double curve_argmin_r = 0.0;
  double min = 0.0;  // min(grid_min, curve_min)
  std::int64_t grid_points = 0;
};

/// Minimum of h_y over a uniform grid of [1/3, 1) x [0, 1] and over the curve
/// (r, alpha_y(r)), both with the ball of `excluded_radius` around (1/2, 1/2)
/// removed. A numerical certificate, not a proof.
[[nodiscard]] PositivityCertificate positivity_certificate(double y, double excluded_radius = 0.05,
                                                           int grid_per_axis = 400, int curve_points = 2000,
                                                           unsigned threads = 1);

struct HyMinimum {
  double r = 0.0;
  double alpha = 0.0;
  double value = 0.0;
};

/// Global minimum of h_y: grid scan of the full square, then golden-section
/// refinement of r along (r, alpha_y(r)).
[[nodiscard]] HyMinimum h_y_minimum(double y, int grid_per_axis = 400, unsigned threads = 1);

struct CurvePoint {
  double r = 0.0;
  double alpha = 0.0;
  double h = 0.0;
};

/// alpha_y on `points` equally spaced r in [1/3, r_max].
[[nodiscard]] std::vector<CurvePoint> alpha_curve(double y, int points, double r_max = 0.999);
void write_alpha_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);

struct SumLimitRow {
  std::int64_t n = 0;
  std::int64_t m = 0;
  double normalized_sum = 0.0;
  double corner_term = 0.0;  // r = 1 column divided by n
  double err_vs_1 = 0.0;
};

struct SumLimitResult {
  double c = 0.0;
  std::vector<SumLimitRow> rows;
  std::vector<std::int64_t> skipped_n;  // 3m/n outside (2,3)
};

/// m = round(c n). Throws std::domain_error for c outside (2/3, 1).
[[nodiscard]] std::int64_t m_for(double c, std::int64_t n);

/// Sum of S_{m,n} over the grid, optionally including the r = 1 column. Row
/// sums are reduced pairwise in fixed order, so the value does not depend on
/// `threads`.
[[nodiscard]] LogScalar grid_sum(const StirlingTable& table, const XorLattice& grid, bool include_r1,
                                 unsigned threads = 1);

[[nodiscard]] SumLimitResult sum_limit_experiment(double c, const std::vector<std::int64_t>& n_list,
                                                  unsigned threads = 1);
void write_sum_limit_csv(std::ostream& out, const SumLimitResult& result);

struct EnvelopeDominance {
  double max_ratio = 0.0;  // max of S / (g_mn e^{-n h_y}) over r < 1
  double min_ratio = 0.0;  // over points with S > 0
  double bound = 0.0;      // C_S^2 C_B^2 / (c_S c_B) from measured constants
  std::int64_t points = 0;
  bool dominated = false;
};

[[nodiscard]] EnvelopeDominance envelope_dominance(const StirlingTable& table, const XorLattice& grid,
                                                   const EnvelopeConstants& constants);

/// max |S / (g_mn e^{-n h_y}) - 1| over grid points within `radius` of (1/2, 1/2).
[[nodiscard]] double local_asymptotic_error(const StirlingTable& table, const XorLattice& grid, double radius = 0.05);

/// SummandFamily view of the same problem for the generic engine. The family
/// keeps a reference to `table`, which must outlive it.
[[nodiscard]] SummandFamily xor_family(const StirlingTable& table, const XorLattice& grid);

}  // namespace dlaplace
