#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "dlaplace/lattice.hpp"
#include "dlaplace/log_scalar.hpp"

namespace dlaplace {

/// One problem instance of a discrete Laplace sum: the summand S_k, its
/// envelope g_k e^{-n h_k}, and the limit data at the minimizer x0.
/// All callables must be pure; they are invoked concurrently.
struct SummandFamily {
  std::function<LogScalar(const Eigen::VectorXd&)> eval_s;  // optional
  std::function<double(const Eigen::VectorXd&)> eval_g;
  std::function<double(const Eigen::VectorXd&)> eval_h;
  Eigen::VectorXd x0;
  double h_at_x0 = 0.0;
  double g_at_x0 = 1.0;  // limit g(x0)
  Eigen::MatrixXd hessian_at_x0;
  Eigen::MatrixXd a_limit;

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(x0.size()); }
  /// Checks shapes and that the Hessian admits a Cholesky factor.
  void validate() const;
};

enum class SumTerm { s_k, g_exp_h };

struct SumOptions {
  SumTerm use = SumTerm::g_exp_h;
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// Sum over region ∩ lattice of S_k(x) or g_k(x) e^{-n h_k(x)}. Terms are
/// combined in enumeration order by a fixed pairwise tree, so the result is
/// bit-identical for any thread count. Evaluation failures are rethrown as
/// std::runtime_error naming the offending point.
[[nodiscard]] LogScalar discrete_sum(const SummandFamily& family, const Lattice& lattice, const Region& region,
                                     const SumOptions& options = {});

/// n^{-d/2} e^{n h(x0)} times `sum`.
[[nodiscard]] LogScalar normalize_sum(const LogScalar& sum, const SummandFamily& family, std::int64_t n);

/// Omega = (2 pi n)^{d/2} g(x0) e^{-n h(x0)} / (|det A| sqrt(det H)).
/// Throws std::domain_error if H is not positive definite.
[[nodiscard]] LogScalar omega_asymptote(const SummandFamily& family, std::int64_t n);

/// The n-free limit (2 pi)^{d/2} g(x0) / (|det A| sqrt(det H)).
[[nodiscard]] double omega_normalized(const SummandFamily& family);

/// ln det of a symmetric positive definite matrix via Cholesky.
[[nodiscard]] double ln_det_spd(const Eigen::MatrixXd& h);

/// n^{-d/2} sum of exp(-(n/2)(x - x0)^T H (x - x0)) over region ∩ lattice.
[[nodiscard]] double gaussian_lattice_sum(const Eigen::MatrixXd& h_matrix, const Eigen::VectorXd& x0,
                                          const Lattice& lattice, const Region& region);

/// n^{d/2} e^{n h(x0)} ∫_W g e^{-n h} by adaptive Gauss-Kronrod, split at x0.
/// Axis boxes with d <= 2 only. Throws std::runtime_error if the error
/// estimate exceeds `abs_tol`.
[[nodiscard]] double continuous_reference(const SummandFamily& family, const Region& region, std::int64_t n,
                                          double abs_tol = 1e-9);

struct TailSplit {
  LogScalar interior;  // |x - x0| < radius
  LogScalar exterior;
};

/// The g e^{-n h} sum split at the Euclidean ball around x0, both parts normalized.
[[nodiscard]] TailSplit tail_decomposition(const SummandFamily& family, const Lattice& lattice, const Region& region,
                                           double radius);

/// Largest radius in r_max, r_max/2, ... (down to r_min) such that
///   (1-eps)/2 q(x) <= h_k(x) - h(x0) <= (1+eps)/2 q(x),  q(x) = (x-x0)^T H (x-x0),
/// holds at every lattice point of the ball. Returns 0 if none does.
[[nodiscard]] double taylor_sandwich_radius(const SummandFamily& family, const Lattice& lattice, const Region& region,
                                            double eps, double r_max, double r_min = 1e-6);

struct ConvergenceRow {
  std::int64_t n = 0;
  double normalized_sum = 0.0;
  double omega_normalized = 0.0;
  double ratio = 0.0;
  double abs_error = 0.0;
};

struct ConvergenceProblem {
  std::function<SummandFamily(std::int64_t n)> family;
  std::function<Lattice(std::int64_t n)> lattice;
  Region region;
  SumTerm use = SumTerm::g_exp_h;
};

[[nodiscard]] std::vector<ConvergenceRow> convergence_study(const ConvergenceProblem& problem,
                                                            const std::vector<std::int64_t>& n_list,
                                                            unsigned threads = 1);

/// Columns n,normalized_sum,omega_normalized,ratio,abs_error.
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

}  // namespace dlaplace
