#include "dlaplace/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "parallel.hpp"

namespace dlaplace {
namespace {

std::string format_point(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

LogScalar envelope_term(const SummandFamily& family, const Eigen::VectorXd& x, double n) {
  const double g = family.eval_g(x);
  if (g == 0.0) return LogScalar::zero();
  const double h = family.eval_h(x);
  if (std::isnan(h) || std::isnan(g) || h == -std::numeric_limits<double>::infinity()) {
    throw std::domain_error("non-finite envelope value");
  }
  return LogScalar::from_real(g) * LogScalar::from_log(-n * h);
}

LogScalar term_at(const SummandFamily& family, const Eigen::VectorXd& x, std::int64_t n, SumTerm use) {
  try {
    if (use == SumTerm::s_k) return family.eval_s(x);
    return envelope_term(family, x, static_cast<double>(n));
  } catch (const std::exception& e) {
    throw std::runtime_error("summand evaluation failed at " + format_point(x) + ": " + e.what());
  }
}

std::vector<LogScalar> evaluate_terms(const SummandFamily& family, const std::vector<Eigen::VectorXd>& points,
                                      std::int64_t n, SumTerm use, unsigned threads) {
  std::vector<LogScalar> terms(points.size());
  detail::parallel_for(points.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) terms[i] = term_at(family, points[i], n, use);
  });
  return terms;
}

void check_family_for_lattice(const SummandFamily& family, const Lattice& lattice, SumTerm use) {
  family.validate();
  if (lattice.dim() != family.dim()) throw std::invalid_argument("lattice and family dimensions differ");
  if (use == SumTerm::s_k && !family.eval_s) throw std::invalid_argument("family has no S_k evaluator");
}

}  // namespace

void SummandFamily::validate() const {
  const auto d = x0.size();
  if (d == 0) throw std::invalid_argument("SummandFamily: empty x0");
  if (!eval_g || !eval_h) throw std::invalid_argument("SummandFamily: missing g or h evaluator");
  if (hessian_at_x0.rows() != d || hessian_at_x0.cols() != d) throw std::invalid_argument("SummandFamily: Hessian shape");
  if (a_limit.rows() != d || a_limit.cols() != d) throw std::invalid_argument("SummandFamily: A shape");
  (void)ln_det_spd(hessian_at_x0);
}

double ln_det_spd(const Eigen::MatrixXd& h) {
  if (!h.isApprox(h.transpose(), 1e-12)) throw std::domain_error("Hessian is not symmetric");
  const Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success) throw std::domain_error("Hessian is not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) acc += std::log(l(i, i));
  return 2.0 * acc;
}

LogScalar discrete_sum(const SummandFamily& family, const Lattice& lattice, const Region& region,
                       const SumOptions& options) {
  check_family_for_lattice(family, lattice, options.use);
  const auto points = lattice_points(lattice, region);
  const auto terms = evaluate_terms(family, points, lattice.n, options.use, options.threads);
  return pairwise_sum(terms);
}

LogScalar normalize_sum(const LogScalar& sum, const SummandFamily& family, std::int64_t n) {
  const double nn = static_cast<double>(n);
  return sum * LogScalar::from_log(-0.5 * family.dim() * std::log(nn) + nn * family.h_at_x0);
}

double omega_normalized(const SummandFamily& family) {
  const int d = family.dim();
  const double det_a = std::fabs(family.a_limit.determinant());
  return std::pow(2.0 * std::numbers::pi, 0.5 * d) * family.g_at_x0 /
         (det_a * std::exp(0.5 * ln_det_spd(family.hessian_at_x0)));
}

LogScalar omega_asymptote(const SummandFamily& family, std::int64_t n) {
  const double ln_det_h = ln_det_spd(family.hessian_at_x0);
  if (family.g_at_x0 == 0.0) return LogScalar::zero();
  const double nn = static_cast<double>(n);
  const double ln_omega = 0.5 * family.dim() * std::log(2.0 * std::numbers::pi * nn) +
                          std::log(std::fabs(family.g_at_x0)) - nn * family.h_at_x0 -
                          std::log(std::fabs(family.a_limit.determinant())) - 0.5 * ln_det_h;
  return LogScalar::from_log(ln_omega, family.g_at_x0 > 0.0 ? 1 : -1);
}

double gaussian_lattice_sum(const Eigen::MatrixXd& h_matrix, const Eigen::VectorXd& x0, const Lattice& lattice,
                            const Region& region) {
  if (!region.contains(x0)) throw std::invalid_argument("gaussian_lattice_sum: x0 outside region");
  if (h_matrix.rows() != x0.size() || h_matrix.cols() != x0.size()) {
    throw std::invalid_argument("gaussian_lattice_sum: H shape");
  }
  const double n = static_cast<double>(lattice.n);
  std::vector<LogScalar> terms;
  for_each_lattice_point(lattice, region, [&](const IntVector&, const Eigen::VectorXd& x) {
    const Eigen::VectorXd dx = x - x0;
    terms.push_back(LogScalar::from_log(-0.5 * n * dx.dot(h_matrix * dx)));
  });
  const LogScalar total = pairwise_sum(terms) * LogScalar::from_log(-0.5 * static_cast<double>(x0.size()) * std::log(n));
  return total.to_real();
}

double continuous_reference(const SummandFamily& family, const Region& region, std::int64_t n, double abs_tol) {
  using boost::math::quadrature::gauss_kronrod;
  family.validate();
  const int d = family.dim();
  if (d > 2) throw std::invalid_argument("continuous_reference: only d <= 2 supported");
  if (!region.is_box()) throw std::invalid_argument("continuous_reference: axis-box regions only");
  if (region.dim() != d) throw std::invalid_argument("continuous_reference: dimension mismatch");

  const double nn = static_cast<double>(n);
  const double scale = std::pow(nn, 0.5 * d);
  constexpr unsigned kMaxDepth = 20;
  constexpr double kRelTol = 1e-12;  // tighter requests pile up round-off in the error estimate

  // ∫_lo^hi split at the minimizer coordinate so the peak sits on a panel edge.
  auto integrate_split = [&](auto&& f, double lo, double hi, double mid, double& err) {
    double total = 0.0;
    err = 0.0;
    const double cut = std::clamp(mid, lo, hi);
    for (const auto& [a, b] : {std::pair{lo, cut}, std::pair{cut, hi}}) {
      if (b <= a) continue;
      double e = 0.0;
      total += gauss_kronrod<double, 61>::integrate(f, a, b, kMaxDepth, kRelTol, &e);
      err += e;
    }
    return total;
  };

  auto weight = [&](const Eigen::VectorXd& x) {
    return family.eval_g(x) * std::exp(-nn * (family.eval_h(x) - family.h_at_x0));
  };

  const auto& lo = region.lower();
  const auto& hi = region.upper();
  double value = 0.0;
  double err = 0.0;
  if (d == 1) {
    Eigen::VectorXd x(1);
    value = integrate_split([&](double t) { x[0] = t; return weight(x); }, lo[0], hi[0], family.x0[0], err);
  } else {
    double worst_inner = 0.0;
    auto inner = [&](double t0) {
      Eigen::VectorXd x(2);
      x[0] = t0;
      double e = 0.0;
      const double v = integrate_split([&](double t1) { x[1] = t1; return weight(x); }, lo[1], hi[1], family.x0[1], e);
      worst_inner = std::max(worst_inner, e);
      return v;
    };
    value = integrate_split(inner, lo[0], hi[0], family.x0[0], err);
    err += (hi[0] - lo[0]) * worst_inner;
  }
  if (!(scale * err <= abs_tol) || !std::isfinite(value)) {
    std::ostringstream os;
    os << "continuous_reference: quadrature did not converge (error estimate " << scale * err << ")";
    throw std::runtime_error(os.str());
  }
  return scale * value;
}

TailSplit tail_decomposition(const SummandFamily& family, const Lattice& lattice, const Region& region,
                             double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("tail_decomposition: radius must be positive");
  check_family_for_lattice(family, lattice, SumTerm::g_exp_h);
  std::vector<LogScalar> inside;
  std::vector<LogScalar> outside;
  for_each_lattice_point(lattice, region, [&](const IntVector&, const Eigen::VectorXd& x) {
    const LogScalar t = term_at(family, x, lattice.n, SumTerm::g_exp_h);
    ((x - family.x0).norm() < radius ? inside : outside).push_back(t);
  });
  return {normalize_sum(pairwise_sum(inside), family, lattice.n),
          normalize_sum(pairwise_sum(outside), family, lattice.n)};
}

double taylor_sandwich_radius(const SummandFamily& family, const Lattice& lattice, const Region& region, double eps,
                              double r_max, double r_min) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("taylor_sandwich_radius: eps must lie in (0, 1)");
  check_family_for_lattice(family, lattice, SumTerm::g_exp_h);
  // Record the worst ratio (h - h0) / (q/2) seen at each distance, then shrink.
  struct Sample {
    double dist;
    double ratio;
  };
  std::vector<Sample> samples;
  for_each_lattice_point(lattice, region, [&](const IntVector&, const Eigen::VectorXd& x) {
    const Eigen::VectorXd dx = x - family.x0;
    const double dist = dx.norm();
    if (dist >= r_max || dist == 0.0) return;
    const double q = dx.dot(family.hessian_at_x0 * dx);
    samples.push_back({dist, (family.eval_h(x) - family.h_at_x0) / (0.5 * q)});
  });
  for (double r = r_max; r >= r_min; r *= 0.5) {
    bool ok = true;
    for (const auto& s : samples) {
      if (s.dist < r && !(s.ratio >= 1.0 - eps && s.ratio <= 1.0 + eps)) {
        ok = false;
        break;
      }
    }
    if (ok) return r;
  }
  return 0.0;
}

std::vector<ConvergenceRow> convergence_study(const ConvergenceProblem& problem,
                                              const std::vector<std::int64_t>& n_list, unsigned threads) {
  std::vector<ConvergenceRow> rows;
  for (const std::int64_t n : n_list) {
    const SummandFamily family = problem.family(n);
    const Lattice lattice = problem.lattice(n);
    const LogScalar sum = discrete_sum(family, lattice, problem.region, {problem.use, threads});
    ConvergenceRow row;
    row.n = n;
    row.normalized_sum = normalize_sum(sum, family, n).to_real();
    row.omega_normalized = omega_normalized(family);
    row.ratio = row.normalized_sum / row.omega_normalized;
    row.abs_error = std::fabs(row.ratio - 1.0);
    rows.push_back(row);
  }
  return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  const auto old_precision = out.precision(17);
  out << "n,normalized_sum,omega_normalized,ratio,abs_error\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.normalized_sum << ',' << r.omega_normalized << ',' << r.ratio << ',' << r.abs_error << '\n';
  }
  out.precision(old_precision);
}

}  // namespace dlaplace
