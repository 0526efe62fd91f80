#include "dlaplace_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "dlaplace/laplace.hpp"
#include "dlaplace/stirling.hpp"
#include "dlaplace/version.hpp"
#include "dlaplace/xorsat_asymptotics.hpp"
#include "dlaplace/xorsat_sim.hpp"

namespace dlaplace::cli {
namespace {

using json = nlohmann::ordered_json;  // keeps column order

const char* pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string version_text() {
  return fmt::format("dlaplace {} (table format {})", kVersion, kTableFormatVersion);
}

// Column-preserving conversion of a module CSV to an array of row objects.
json csv_to_json(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  for (std::istringstream h(line); std::getline(h, line, ',');) header.push_back(line);
  json rows = json::array();
  while (std::getline(in, line)) {
    json row = json::object();
    std::istringstream cells(line);
    std::string cell;
    for (std::size_t k = 0; k < header.size() && std::getline(cells, cell, ','); ++k) {
      row[header[k]] = json::parse(cell);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_artifact(const RunConfig& cfg, const std::string& body) {
  const std::filesystem::path path(cfg.output_path);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + cfg.output_path);
  f << body;
  if (!f) throw std::runtime_error("write failed for " + cfg.output_path);
}

// Tabular subcommands: the module writes CSV, JSON is derived from it.
void write_table(const RunConfig& cfg, const std::string& csv) {
  write_artifact(cfg, cfg.format == Format::csv ? csv : csv_to_json(csv).dump(2) + "\n");
}

// --- subcommands -----------------------------------------------------------

int run_stirling(const RunConfig& cfg, std::ostream& out) {
  const auto table = StirlingTable::build(cfg.p_max, cfg.exact ? StirlingMode::exact : StirlingMode::log_space);
  std::ostringstream csv;
  table.write_csv(csv);
  write_table(cfg, csv.str());
  const std::int64_t q = cfg.p_max / 3;
  out << fmt::format("stirling: p <= {} ({}), ln S_2({}, {}) = {:.12g}; wrote {}\n", cfg.p_max,
                     cfg.exact ? "exact" : "log-space", cfg.p_max, q, table.ln_value(cfg.p_max, q), cfg.output_path);
  return 0;
}

SummandFamily cos_demo_family() {
  SummandFamily f;
  f.eval_g = [](const Eigen::VectorXd& x) { return std::cos(x[0]); };
  f.eval_h = [](const Eigen::VectorXd& x) { return x[0] * x[0]; };
  f.x0 = Eigen::VectorXd::Zero(1);
  f.hessian_at_x0 = Eigen::MatrixXd::Constant(1, 1, 2.0);
  f.a_limit = Eigen::MatrixXd::Identity(1, 1);
  return f;
}

int run_laplace_demo(const RunConfig& cfg, std::ostream& out) {
  const Region region = Region::open_box(Eigen::VectorXd::Constant(1, -1.0), Eigen::VectorXd::Constant(1, 1.0));
  const ConvergenceProblem problem{[](std::int64_t) { return cos_demo_family(); },
                                   [](std::int64_t n) { return Lattice::unit(n, 1); }, region};
  const auto rows = convergence_study(problem, cfg.n_list, cfg.threads);
  std::ostringstream csv;
  write_convergence_csv(csv, rows);
  write_table(cfg, csv.str());

  const auto& last = rows.back();
  const double err = std::fabs(last.normalized_sum - std::sqrt(std::numbers::pi));
  const double cont = continuous_reference(cos_demo_family(), region, last.n);
  const double rel = std::fabs(cont / last.normalized_sum - 1.0);
  out << fmt::format(
      "laplace-demo: n={} normalized sum {:.8f} vs sqrt(pi), |err| {:.2e} [{} <= 1e-3]; quadrature vs Riemann {:.2e} "
      "[{} <= 1e-3]; wrote {}\n",
      last.n, last.normalized_sum, err, pass_fail(err <= 1e-3), rel, pass_fail(rel <= 1e-3), cfg.output_path);
  return 0;
}

int run_gaussian_sum(const RunConfig& cfg, std::ostream& out) {
  const int d = cfg.dim;
  const Region region = Region::open_box(Eigen::VectorXd::Constant(d, -1.0), Eigen::VectorXd::Constant(d, 1.0));
  const double limit = std::pow(2.0 * std::numbers::pi, 0.5 * d);
  const double tol = d == 1 ? 1e-6 : 1e-5;
  std::ostringstream csv;
  csv.precision(17);
  csv << "n,d,normalized_sum,limit,abs_error\n";
  double last_err = 0.0;
  for (const std::int64_t n : cfg.n_list) {
    const double v = gaussian_lattice_sum(Eigen::MatrixXd::Identity(d, d), Eigen::VectorXd::Zero(d),
                                          Lattice::unit(n, d), region);
    last_err = std::fabs(v - limit);
    csv << n << ',' << d << ',' << v << ',' << limit << ',' << last_err << '\n';
  }
  write_table(cfg, csv.str());
  out << fmt::format("gaussian-sum: d={} n={} |sum - (2 pi)^(d/2)| = {:.3e} [{} < {:.0e}]; wrote {}\n", d,
                     cfg.n_list.back(), last_err, pass_fail(last_err < tol), tol, cfg.output_path);
  return 0;
}

int run_sum_limit(const RunConfig& cfg, std::ostream& out) {
  const auto res = sum_limit_experiment(cfg.c, cfg.n_list, cfg.threads);
  std::ostringstream csv;
  write_sum_limit_csv(csv, res);
  write_table(cfg, csv.str());
  std::string skipped;
  for (const auto n : res.skipped_n) skipped += fmt::format("{}{}", skipped.empty() ? "" : ",", n);
  if (res.rows.empty()) {
    out << fmt::format("sum-limit: c={} no n in the regime (skipped {}); wrote {}\n", cfg.c, skipped, cfg.output_path);
    return 0;
  }
  bool monotone = true;
  for (std::size_t k = 1; k < res.rows.size(); ++k) monotone = monotone && res.rows[k].err_vs_1 <= res.rows[k - 1].err_vs_1;
  const auto& last = res.rows.back();
  out << fmt::format("sum-limit: c={} n={} normalized sum {:.8f}, |err| {:.2e} [{} <= 0.1], non-increasing [{}]{}; wrote {}\n",
                     cfg.c, last.n, last.normalized_sum, last.err_vs_1, pass_fail(last.err_vs_1 <= 0.1),
                     pass_fail(monotone), skipped.empty() ? "" : " skipped n=" + skipped, cfg.output_path);
  return 0;
}

int run_hy_min(const RunConfig& cfg, std::ostream& out) {
  const auto best = h_y_minimum(cfg.y, cfg.grid, cfg.threads);
  const auto cert = positivity_certificate(cfg.y, cfg.radius, cfg.grid, 2000, cfg.threads);
  const double grad = h_y_gradient_fd(cfg.y).norm();
  Eigen::Vector2d cert_at = cert.grid_argmin;
  if (cert.curve_min < cert.grid_min) cert_at = {cert.curve_argmin_r, alpha_y(cfg.y, cert.curve_argmin_r)};

  std::ostringstream csv;
  csv.precision(17);
  csv << "y,r_min,alpha_min,h_min,grad_norm,excluded_radius,certificate_min,certificate_r,certificate_alpha\n";
  csv << cfg.y << ',' << best.r << ',' << best.alpha << ',' << best.value << ',' << grad << ',' << cfg.radius << ','
      << cert.min << ',' << cert_at[0] << ',' << cert_at[1] << '\n';
  if (cfg.format == Format::json) {
    write_artifact(cfg, csv_to_json(csv.str()).at(0).dump(2) + "\n");
  } else {
    write_artifact(cfg, csv.str());
  }
  const bool ok = std::fabs(best.value) <= 1e-12 && grad < 1e-6 && cert.min > 0.0;
  out << fmt::format("hy-min: y={} minimum at ({:.6f}, {:.6f}) value {:.3e}, |grad| {:.2e}, min outside radius {} = {:.6g} [{}]; wrote {}\n",
                     cfg.y, best.r, best.alpha, best.value, grad, cfg.radius, cert.min, pass_fail(ok), cfg.output_path);
  return 0;
}

int run_alpha_curve(const RunConfig& cfg, std::ostream& out) {
  const auto curve = alpha_curve(cfg.y, cfg.points, cfg.r_max);
  std::ostringstream csv;
  write_alpha_curve_csv(csv, curve);
  write_table(cfg, csv.str());
  double residual = 0.0;
  for (const auto& p : curve) residual = std::max(residual, std::fabs(std::expm1(ln_l_ry(cfg.y, p.r, p.alpha))));
  const double gap = std::fabs(curve.back().h - std::numbers::ln2 * (1.0 - cfg.y / 3.0));
  out << fmt::format("alpha-curve: y={} {} points, max |L - 1| {:.2e} [{} <= 1e-11], h at r={} vs ln2(1-y/3) gap {:.2e}; wrote {}\n",
                     cfg.y, curve.size(), residual, pass_fail(residual <= 1e-11), cfg.r_max, gap, cfg.output_path);
  return 0;
}

SimOptions sim_options(const RunConfig& cfg) {
  SimOptions o;
  o.threads = cfg.threads;
  o.model = cfg.without_replacement ? RowModel::without_replacement : RowModel::with_replacement;
  o.bin_width = cfg.bin_width;
  o.z = cfg.z;
  return o;
}

int run_simulate(const RunConfig& cfg, std::ostream& out) {
  const auto est = estimate_solvability(cfg.c, cfg.n, cfg.trials, cfg.seed, sim_options(cfg));
  if (cfg.format == Format::csv) {
    std::ostringstream csv;
    write_trials_csv(csv, est.reports);
    write_artifact(cfg, csv.str());
  } else {
    json bins = json::array();
    for (const auto& b : est.bins) {
      bins.push_back({{"ratio_lo", b.ratio_lo}, {"ratio_hi", b.ratio_hi}, {"count", b.count}, {"solvable_frac", b.solvable_frac()}});
    }
    const json report = {{"c", est.c},           {"n", est.n},
                         {"m", est.m},           {"trials", est.trials},
                         {"p_hat", est.p_hat},   {"wilson_lo", est.wilson.lo},
                         {"wilson_hi", est.wilson.hi}, {"bins", bins}};
    write_artifact(cfg, report.dump(2) + "\n");
  }
  out << fmt::format("simulate: c={} n={} m={} trials={} p_hat={:.4f} Wilson(z={}) [{:.4f}, {:.4f}], empty cores {}; wrote {}\n",
                     est.c, est.n, est.m, est.trials, est.p_hat, cfg.z, est.wilson.lo, est.wilson.hi, est.empty_cores,
                     cfg.output_path);
  return 0;
}

int run_bounds_check(const RunConfig& cfg, std::ostream& out) {
  const auto table = StirlingTable::build(3 * cfg.m, StirlingMode::exact);
  const auto r = bounds_check(cfg.m, cfg.n, cfg.trials, cfg.seed, table, sim_options(cfg), cfg.max_tries);
  const json report = {{"m", r.m},
                       {"n", r.n},
                       {"trials", r.trials},
                       {"solvable", r.solvable},
                       {"total_tries", r.total_tries},
                       {"normalized_sum", r.normalized_sum},
                       {"normalized_sum_at_least_one", r.normalized_sum_at_least_one},
                       {"lower_bound", r.lower_bound},
                       {"raw_upper_bound", r.raw_upper_bound},
                       {"upper_bound", r.upper_bound},
                       {"p_hat", r.p_hat},
                       {"wilson_lo", r.wilson.lo},
                       {"wilson_hi", r.wilson.hi},
                       {"compatible", r.compatible}};
  if (cfg.format == Format::json) {
    write_artifact(cfg, report.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv.precision(17);
    std::string header;
    std::string values;
    for (const auto& [key, value] : report.items()) {
      header += (header.empty() ? "" : ",") + key;
      values += (values.empty() ? "" : ",") + value.dump();
    }
    write_artifact(cfg, header + "\n" + values + "\n");
  }
  out << fmt::format("bounds-check: m={} n={} p_hat={:.4f} Wilson(z={}) [{:.4f}, {:.4f}] vs bounds [{:.4f}, {:.4f}] [{}]; wrote {}\n",
                     r.m, r.n, r.p_hat, cfg.z, r.wilson.lo, r.wilson.hi, r.lower_bound, r.upper_bound,
                     pass_fail(r.compatible), cfg.output_path);
  return 0;
}

// --- parsing ---------------------------------------------------------------

CLI::Validator open_interval(double lo, double hi, const std::string& label) {
  return CLI::Validator(
      [=](std::string& s) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(s, v)) return "not a number: " + s;
        if (v > lo && v < hi) return {};
        return "value " + s + " outside " + label;
      },
      label);
}

const CLI::Validator kPositiveList = CLI::Validator(
    [](std::string& s) -> std::string {
      std::int64_t v = 0;
      if (!CLI::detail::lexical_cast(s, v) || v < 1) return "expected a positive integer, got " + s;
      return {};
    },
    "POSITIVE");

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Discrete Laplace method toolkit: Stirling tables, lattice sums and 3-XOR-SAT experiments", "dlaplace"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", version_text());

  std::string format;
  std::string output;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", cfg.seed, "Base seed");
    sub->add_option("--output,-o", output, "Output file (default: $" + std::string(kOutputDirEnv) + "/<subcommand>.<ext>)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* stirling = app.add_subcommand("stirling", "Table of 2-associated Stirling numbers");
  stirling->add_option("--p-max", cfg.p_max, "Largest p")->check(CLI::Range(std::int64_t{0}, std::int64_t{200000}));
  stirling->add_flag("--exact", cfg.exact, "Big-integer table (p <= 5000)");

  auto* demo = app.add_subcommand("laplace-demo", "cos(x) e^{-n x^2} on (-1,1) against sqrt(pi)");
  demo->add_option("--n", cfg.n_list, "Comma-separated sizes")->delimiter(',')->check(kPositiveList);

  auto* gauss = app.add_subcommand("gaussian-sum", "Gaussian lattice sum on (-1,1)^d");
  gauss->add_option("--n", cfg.n_list, "Comma-separated sizes")->delimiter(',')->check(kPositiveList);
  gauss->add_option("--d", cfg.dim, "Dimension")->check(CLI::Range(1, 2));

  auto* sum_limit = app.add_subcommand("sum-limit", "Normalized 3XOR second-moment sum against 1");
  sum_limit->add_option("--c", cfg.c, "m/n ratio")->check(open_interval(2.0 / 3.0, 1.0, "the regime (2/3, 1)"));
  sum_limit->add_option("--n", cfg.n_list, "Comma-separated sizes")->delimiter(',')->check(kPositiveList);

  auto* hy_min = app.add_subcommand("hy-min", "Minimum of h_y and positivity certificate");
  hy_min->add_option("--y", cfg.y, "y = 3c")->check(open_interval(2.0, 3.0, "(2, 3)"));
  hy_min->add_option("--radius", cfg.radius, "Excluded radius around (1/2, 1/2)")->check(open_interval(0.0, 0.5, "(0, 0.5)"));
  hy_min->add_option("--grid", cfg.grid, "Grid points per axis")->check(CLI::Range(2, 20000));

  auto* curve = app.add_subcommand("alpha-curve", "Minimizer curve alpha_y(r)");
  curve->add_option("--y", cfg.y, "y = 3c")->check(open_interval(2.0, 3.0, "(2, 3)"));
  curve->add_option("--points", cfg.points, "Number of r values")->check(CLI::Range(2, 10000000));
  curve->add_option("--r-max", cfg.r_max, "Last r")->check(open_interval(1.0 / 3.0, 1.0, "(1/3, 1)"));

  auto* sim = app.add_subcommand("simulate", "Monte Carlo solvability of random 3XOR systems");
  sim->add_option("--c", cfg.c, "m/n ratio")->check(open_interval(0.0, 10.0, "(0, 10)"));
  sim->add_option("--n", cfg.n, "Variables")->check(CLI::Range(std::int64_t{1}, std::int64_t{10000000}));
  sim->add_option("--trials", cfg.trials, "Trials")->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}));
  sim->add_option("--bin-width", cfg.bin_width, "core_ratio bin width")->check(open_interval(0.0, 10.0, "(0, 10)"));
  sim->add_flag("--without-replacement", cfg.without_replacement, "Rows use three distinct columns");
  sim->add_option("--z", cfg.z, "Wilson z")->check(open_interval(0.0, 100.0, "(0, 100)"));

  auto* bounds = app.add_subcommand("bounds-check", "Exact probability bounds against rejection-sampled 2-cores");
  bounds->add_option("--m", cfg.m, "Equations")->check(CLI::Range(std::int64_t{1}, std::int64_t{1000}));
  std::int64_t bounds_n = 20;
  std::int64_t bounds_trials = 500;
  bounds->add_option("--n", bounds_n, "Variables")->check(CLI::Range(std::int64_t{1}, std::int64_t{1000}));
  bounds->add_option("--trials", bounds_trials, "Rejection-sampled cores")->check(CLI::Range(std::int64_t{1}, std::int64_t{10000000}));
  bounds->add_option("--max-tries", cfg.max_tries, "Tries per sample")->check(CLI::Range(std::int64_t{1}, std::int64_t{1000000000}));
  bounds->add_flag("--without-replacement", cfg.without_replacement, "Rows use three distinct columns");
  bounds->add_option("--z", cfg.z, "Wilson z")->check(open_interval(0.0, 100.0, "(0, 100)"));

  for (auto* sub : {stirling, demo, gauss, sum_limit, hy_min, curve, sim, bounds}) common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cfg.action = Action::help;
    cfg.text = app.help();
    return cfg;
  } catch (const CLI::CallForAllHelp&) {
    cfg.action = Action::help;
    cfg.text = app.help("", CLI::AppFormatMode::All);
    return cfg;
  } catch (const CLI::CallForVersion&) {
    cfg.action = Action::version;
    cfg.text = version_text();
    return cfg;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    throw ConfigError(msg);
  }

  const auto selected = app.get_subcommands();
  if (selected.empty()) throw ConfigError("no subcommand given; run with --help for the list");
  const CLI::App* sub = selected.front();
  cfg.subcommand = sub->get_name();
  // JSON by default only where the report is nested.
  if (format.empty()) format = cfg.subcommand == "simulate" || cfg.subcommand == "bounds-check" ? "json" : "csv";
  cfg.format = format == "json" ? Format::json : Format::csv;
  if (cfg.subcommand == "bounds-check") {
    cfg.n = bounds_n;
    cfg.trials = bounds_trials;
  }
  if (cfg.n_list.empty()) {
    if (cfg.subcommand == "laplace-demo") cfg.n_list = {100, 1000, 10000};
    if (cfg.subcommand == "gaussian-sum") cfg.n_list = {500};
    if (cfg.subcommand == "sum-limit") cfg.n_list = {400, 800, 1600};
  }

  if (cfg.subcommand == "bounds-check") {
    if (!(2 * cfg.n < 3 * cfg.m && cfg.m < cfg.n)) {
      throw ConfigError(fmt::format("--m/--n: need 2n < 3m and m < n, got m={} n={}", cfg.m, cfg.n));
    }
    if (estimated_2core_acceptance(cfg.m, cfg.n) < 1e-6) {
      throw ConfigError(fmt::format("--m/--n: 2-core acceptance for m={} n={} is below 1e-6", cfg.m, cfg.n));
    }
  }
  if (cfg.subcommand == "stirling" && cfg.exact && cfg.p_max > kExactStirlingLimit) {
    throw ConfigError(fmt::format("--p-max: exact tables are limited to p <= {}", kExactStirlingLimit));
  }
  if (cfg.n_list.empty() && (cfg.subcommand == "laplace-demo" || cfg.subcommand == "gaussian-sum" || cfg.subcommand == "sum-limit")) {
    throw ConfigError("--n: at least one size is required");
  }

  if (output.empty()) {
    const char* dir = std::getenv(kOutputDirEnv);
    const std::filesystem::path base = dir && *dir ? dir : ".";
    output = (base / (cfg.subcommand + (cfg.format == Format::json ? ".json" : ".csv"))).string();
  }
  cfg.output_path = output;
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.action) {
    case Action::help:
    case Action::version:
      out << cfg.text << '\n';
      return 0;
    case Action::run:
      break;
  }
  if (cfg.subcommand == "stirling") return run_stirling(cfg, out);
  if (cfg.subcommand == "laplace-demo") return run_laplace_demo(cfg, out);
  if (cfg.subcommand == "gaussian-sum") return run_gaussian_sum(cfg, out);
  if (cfg.subcommand == "sum-limit") return run_sum_limit(cfg, out);
  if (cfg.subcommand == "hy-min") return run_hy_min(cfg, out);
  if (cfg.subcommand == "alpha-curve") return run_alpha_curve(cfg, out);
  if (cfg.subcommand == "simulate") return run_simulate(cfg, out);
  if (cfg.subcommand == "bounds-check") return run_bounds_check(cfg, out);
  throw ConfigError("unknown subcommand " + cfg.subcommand);
}

}  // namespace dlaplace::cli
