#include "dlaplace/xorsat_sim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "dlaplace/special_functions.hpp"
#include "parallel.hpp"

namespace dlaplace {
namespace {

// Uniform integer in [0, bound) by rejection of the short top range.
// Written out because std::uniform_int_distribution differs across
// standard libraries and we want the same instances everywhere.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace

void Xor3Instance::validate() const {
  if (m < 0 || n < 0) throw std::invalid_argument("Xor3Instance: negative size");
  if (static_cast<std::int64_t>(rows.size()) != m || static_cast<std::int64_t>(rhs.size()) != m) {
    throw std::invalid_argument("Xor3Instance: rows/rhs length differs from m");
  }
  for (const auto& row : rows) {
    for (const auto c : row) {
      if (c < 0 || c >= n) throw std::invalid_argument("Xor3Instance: column index out of range");
    }
  }
  for (const auto b : rhs) {
    if (b > 1) throw std::invalid_argument("Xor3Instance: rhs entries must be bits");
  }
}

std::vector<std::int64_t> Xor3Instance::column_degrees() const {
  std::vector<std::int64_t> deg(static_cast<std::size_t>(n), 0);
  for (const auto& row : rows) {
    for (const auto c : row) ++deg[static_cast<std::size_t>(c)];
  }
  return deg;
}

bool Xor3Instance::is_2core() const {
  const auto deg = column_degrees();
  return std::all_of(deg.begin(), deg.end(), [](std::int64_t d) { return d >= 2; });
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t counter) noexcept {
  return mix64(mix64(base_seed) ^ mix64(counter + 0x632be59bd9b4e019ULL));
}

Xor3Instance sample_instance(std::int64_t m, std::int64_t n, std::uint64_t seed, RowModel model) {
  if (m < 1 || n < 1) throw std::invalid_argument("sample_instance: m and n must be positive");
  if (model == RowModel::without_replacement && n < 3) {
    throw std::invalid_argument("sample_instance: without replacement needs n >= 3");
  }
  std::mt19937_64 rng(seed);
  Xor3Instance inst;
  inst.m = m;
  inst.n = n;
  inst.rows.resize(static_cast<std::size_t>(m));
  inst.rhs.resize(static_cast<std::size_t>(m));
  const auto bound = static_cast<std::uint64_t>(n);
  for (std::int64_t k = 0; k < m; ++k) {
    auto& row = inst.rows[static_cast<std::size_t>(k)];
    for (int t = 0; t < 3; ++t) {
      std::int32_t c = 0;
      do {
        c = static_cast<std::int32_t>(bounded(rng, bound));
      } while (model == RowModel::without_replacement && std::find(row.begin(), row.begin() + t, c) != row.begin() + t);
      row[static_cast<std::size_t>(t)] = c;
    }
    std::sort(row.begin(), row.end());
    inst.rhs[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(rng() >> 63);
  }
  return inst;
}

CoreResult peel_2core(const Xor3Instance& instance, std::optional<std::uint64_t> order_seed) {
  instance.validate();
  const auto n = static_cast<std::size_t>(instance.n);
  const auto m = static_cast<std::size_t>(instance.m);

  std::vector<std::vector<std::int64_t>> incident(n);
  for (std::size_t k = 0; k < m; ++k) {
    for (const auto c : instance.rows[k]) incident[static_cast<std::size_t>(c)].push_back(static_cast<std::int64_t>(k));
  }
  std::vector<std::int64_t> deg(n);
  for (std::size_t c = 0; c < n; ++c) deg[c] = static_cast<std::int64_t>(incident[c].size());
  std::vector<bool> row_alive(m, true);

  std::vector<std::int64_t> pending;
  for (std::size_t c = 0; c < n; ++c) {
    if (deg[c] == 1) pending.push_back(static_cast<std::int64_t>(c));
  }
  std::mt19937_64 order_rng(order_seed.value_or(0));

  while (!pending.empty()) {
    std::size_t pick = pending.size() - 1;
    if (order_seed) pick = static_cast<std::size_t>(bounded(order_rng, pending.size()));
    const auto c = static_cast<std::size_t>(pending[pick]);
    pending[pick] = pending.back();
    pending.pop_back();
    if (deg[c] != 1) continue;
    std::int64_t row = -1;
    for (const auto k : incident[c]) {
      if (row_alive[static_cast<std::size_t>(k)]) {
        row = k;
        break;
      }
    }
    row_alive[static_cast<std::size_t>(row)] = false;
    for (const auto c2 : instance.rows[static_cast<std::size_t>(row)]) {
      if (--deg[static_cast<std::size_t>(c2)] == 1) pending.push_back(c2);
    }
  }

  CoreResult out;
  std::vector<std::int32_t> new_index(n, -1);
  for (std::size_t c = 0; c < n; ++c) {
    if (deg[c] >= 2) {
      new_index[c] = static_cast<std::int32_t>(out.kept_cols.size());
      out.kept_cols.push_back(static_cast<std::int64_t>(c));
    }
  }
  out.core.n = static_cast<std::int64_t>(out.kept_cols.size());
  for (std::size_t k = 0; k < m; ++k) {
    if (!row_alive[k]) continue;
    out.kept_rows.push_back(static_cast<std::int64_t>(k));
    std::array<std::int32_t, 3> row{};
    for (int t = 0; t < 3; ++t) row[static_cast<std::size_t>(t)] = new_index[static_cast<std::size_t>(instance.rows[k][static_cast<std::size_t>(t)])];
    out.core.rows.push_back(row);
    out.core.rhs.push_back(instance.rhs[k]);
  }
  out.core.m = static_cast<std::int64_t>(out.kept_rows.size());
  out.removed_vars = instance.n - out.core.n;
  out.removed_rows = instance.m - out.core.m;
  out.ratio_defined = out.core.n > 0;
  out.core_ratio = out.ratio_defined ? static_cast<double>(out.core.m) / static_cast<double>(out.core.n) : 0.0;
  return out;
}

Gf2Solution gf2_solve(const Xor3Instance& instance) {
  instance.validate();
  const auto n = static_cast<std::size_t>(instance.n);
  const auto m = static_cast<std::size_t>(instance.m);
  const std::size_t words = (n + 1 + 63) / 64;  // bit n holds the right-hand side
  std::vector<std::uint64_t> mat(m * words, 0);
  auto flip = [&](std::size_t r, std::size_t bit) { mat[r * words + bit / 64] ^= std::uint64_t{1} << (bit % 64); };
  auto test = [&](std::size_t r, std::size_t bit) { return (mat[r * words + bit / 64] >> (bit % 64)) & 1U; };
  for (std::size_t r = 0; r < m; ++r) {
    for (const auto c : instance.rows[r]) flip(r, static_cast<std::size_t>(c));
    if (instance.rhs[r]) flip(r, n);
  }

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && !test(piv, col)) ++piv;
    if (piv == m) continue;
    if (piv != rank) std::swap_ranges(mat.begin() + piv * words, mat.begin() + (piv + 1) * words, mat.begin() + rank * words);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || !test(r, col)) continue;
      for (std::size_t w = 0; w < words; ++w) mat[r * words + w] ^= mat[rank * words + w];
    }
    pivot_col.push_back(col);
    ++rank;
  }

  Gf2Solution out;
  out.rank = static_cast<std::int64_t>(rank);
  for (std::size_t r = rank; r < m; ++r) {
    if (test(r, n)) return out;  // 0 = 1
  }
  out.solvable = true;
  std::vector<std::uint8_t> z(n, 0);
  for (std::size_t k = 0; k < rank; ++k) z[pivot_col[k]] = static_cast<std::uint8_t>(test(k, n));
  out.witness = std::move(z);
  return out;
}

bool satisfies(const Xor3Instance& instance, const std::vector<std::uint8_t>& z) {
  if (static_cast<std::int64_t>(z.size()) != instance.n) return false;
  for (std::size_t k = 0; k < instance.rows.size(); ++k) {
    std::uint8_t acc = 0;
    for (const auto c : instance.rows[k]) acc ^= z[static_cast<std::size_t>(c)] & 1U;
    if (acc != instance.rhs[k]) return false;
  }
  return true;
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (successes < 0 || successes > trials) throw std::invalid_argument("wilson_interval: need 0 <= successes <= trials");
  if (!(z > 0.0)) throw std::invalid_argument("wilson_interval: z must be positive");
  if (trials == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  // The bounds are exactly 0 and 1 at the extremes; rounding would miss that.
  return {successes == 0 ? 0.0 : std::max(0.0, center - half), successes == trials ? 1.0 : std::min(1.0, center + half)};
}

std::vector<RatioBin> bin_by_core_ratio(const std::vector<TrialReport>& reports, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("bin_by_core_ratio: width must be positive");
  std::vector<std::pair<std::int64_t, RatioBin>> bins;
  for (const auto& r : reports) {
    if (r.core_empty) continue;
    const auto k = static_cast<std::int64_t>(std::floor(r.core_ratio / width));
    auto it = std::find_if(bins.begin(), bins.end(), [k](const auto& b) { return b.first == k; });
    if (it == bins.end()) {
      RatioBin b;
      b.ratio_lo = static_cast<double>(k) * width;
      b.ratio_hi = static_cast<double>(k + 1) * width;
      bins.emplace_back(k, b);
      it = bins.end() - 1;
    }
    ++it->second.count;
    if (r.solvable) ++it->second.solvable;
  }
  std::sort(bins.begin(), bins.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<RatioBin> out;
  out.reserve(bins.size());
  for (auto& b : bins) out.push_back(b.second);
  return out;
}

SolvabilityEstimate estimate_solvability(double c, std::int64_t n, std::int64_t trials, std::uint64_t base_seed,
                                         const SimOptions& options) {
  if (trials < 1) throw std::invalid_argument("estimate_solvability: trials must be >= 1");
  if (n < 1 || !(c > 0.0)) throw std::invalid_argument("estimate_solvability: need n >= 1 and c > 0");
  const auto m = static_cast<std::int64_t>(std::llround(c * static_cast<double>(n)));
  if (m < 1) throw std::invalid_argument("estimate_solvability: round(c n) must be positive");

  SolvabilityEstimate est;
  est.c = c;
  est.n = n;
  est.m = m;
  est.trials = trials;
  est.reports.resize(static_cast<std::size_t>(trials));
  detail::parallel_for(est.reports.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      TrialReport& rep = est.reports[k];
      rep.index = static_cast<std::int64_t>(k);
      rep.c = c;
      rep.n = n;
      rep.m = m;
      rep.seed = derive_seed(base_seed, k);
      const Xor3Instance inst = sample_instance(m, n, rep.seed, options.model);
      const CoreResult core = peel_2core(inst);
      const Gf2Solution sol = gf2_solve(core.core);
      rep.solvable = sol.solvable;
      rep.core_empty = !core.ratio_defined;
      rep.core_ratio = core.core_ratio;
      rep.core_m = core.core.m;
      rep.core_n = core.core.n;
      rep.elimination_rank = sol.rank;
    }
  });
  for (const auto& r : est.reports) {
    if (r.solvable) ++est.solvable;
    if (r.core_empty) ++est.empty_cores;
  }
  est.p_hat = static_cast<double>(est.solvable) / static_cast<double>(trials);
  est.wilson = wilson_interval(est.solvable, trials, options.z);
  est.bins = bin_by_core_ratio(est.reports, options.bin_width);
  return est;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialReport>& reports) {
  const auto old_precision = out.precision(17);
  out << "index,c,n,m,seed,solvable,core_empty,core_m,core_n,core_ratio,elimination_rank\n";
  for (const auto& r : reports) {
    out << r.index << ',' << r.c << ',' << r.n << ',' << r.m << ',' << r.seed << ',' << (r.solvable ? 1 : 0) << ','
        << (r.core_empty ? 1 : 0) << ',' << r.core_m << ',' << r.core_n << ',';
    if (!r.core_empty) out << r.core_ratio;  // blank when undefined
    out << ',' << r.elimination_rank << '\n';
  }
  out.precision(old_precision);
}

double estimated_2core_acceptance(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw std::invalid_argument("estimated_2core_acceptance: m and n must be positive");
  const double lambda = 3.0 * static_cast<double>(m) / static_cast<double>(n);
  const double p_column = -std::expm1(-lambda) - lambda * std::exp(-lambda);
  return std::exp(static_cast<double>(n) * std::log(p_column));
}

double exact_2core_acceptance(const StirlingTable& table, std::int64_t m, std::int64_t n) {
  const double ln_count = ln_factorial(n) + table.ln_value(3 * m, n);
  return std::exp(ln_count - 3.0 * static_cast<double>(m) * std::log(static_cast<double>(n)));
}

RejectionSample rejection_sample_2core(std::int64_t m, std::int64_t n, std::uint64_t seed, std::int64_t max_tries,
                                       RowModel model) {
  const double acceptance = estimated_2core_acceptance(m, n);
  if (acceptance < 1e-6) {
    throw std::runtime_error("rejection_sample_2core: estimated acceptance " + std::to_string(acceptance) +
                             " is below 1e-6 for m = " + std::to_string(m) + ", n = " + std::to_string(n));
  }
  for (std::int64_t t = 0; t < max_tries; ++t) {
    Xor3Instance inst = sample_instance(m, n, derive_seed(seed, static_cast<std::uint64_t>(t)), model);
    if (inst.is_2core()) return {std::move(inst), t + 1};
  }
  throw std::runtime_error("rejection_sample_2core: no 2-core within " + std::to_string(max_tries) + " tries");
}

double ExactFraction::to_double() const { return std::exp(ln_bigint(num) - ln_bigint(den)); }

ExactFraction exact_normalized_sum(const StirlingTable& table, std::int64_t m, std::int64_t n) {
  if (table.mode() != StirlingMode::exact) throw std::invalid_argument("exact_normalized_sum: exact table required");
  if (table.p_max() < 3 * m) throw std::out_of_range("exact_normalized_sum: table does not reach p = 3m");
  if (!(2 * n < 3 * m && m < n)) throw std::domain_error("exact_normalized_sum: need 2 < 3m/n < 3");
  // (1/n) S_{m,n} = 3^j C(m,j) S_2(3m-2j, i) S_2(2j, n-i) / (2^{n-m} S_2(3m, n)).
  ExactFraction f;
  f.num = 0;
  BigInt pow3 = 1;
  BigInt binom = 1;
  for (std::int64_t j = 0; j <= m; ++j) {
    BigInt row = 0;
    for (std::int64_t i = 0; i <= n; ++i) {
      const BigInt& a = table.exact_value(3 * m - 2 * j, i);
      if (a.is_zero()) continue;
      const BigInt& b = table.exact_value(2 * j, n - i);
      if (b.is_zero()) continue;
      row += a * b;
    }
    f.num += pow3 * binom * row;
    pow3 *= 3;
    binom = binom * (m - j) / (j + 1);
  }
  f.den = (BigInt(1) << static_cast<unsigned>(n - m)) * table.exact_value(3 * m, n);
  return f;
}

BoundsReport bounds_check(std::int64_t m, std::int64_t n, std::int64_t trials, std::uint64_t seed,
                          const StirlingTable& exact_table, const SimOptions& options,
                          std::int64_t max_tries_per_sample) {
  if (trials < 1) throw std::invalid_argument("bounds_check: trials must be >= 1");
  BoundsReport rep;
  rep.m = m;
  rep.n = n;
  rep.trials = trials;
  const ExactFraction sum = exact_normalized_sum(exact_table, m, n);
  rep.normalized_sum = sum.to_double();
  rep.normalized_sum_at_least_one = sum.num >= sum.den;
  rep.lower_bound = std::exp(ln_bigint(sum.den) - ln_bigint(sum.num));
  rep.raw_upper_bound = std::ldexp(1.0, static_cast<int>(n - m));
  rep.upper_bound = std::min(1.0, rep.raw_upper_bound);

  std::vector<std::uint8_t> solved(static_cast<std::size_t>(trials), 0);
  std::vector<std::int64_t> tries(static_cast<std::size_t>(trials), 0);
  detail::parallel_for(solved.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const RejectionSample s = rejection_sample_2core(m, n, derive_seed(seed, k), max_tries_per_sample, options.model);
      solved[k] = gf2_solve(s.instance).solvable ? 1 : 0;
      tries[k] = s.tries;
    }
  });
  for (std::size_t k = 0; k < solved.size(); ++k) {
    rep.solvable += solved[k];
    rep.total_tries += tries[k];
  }
  rep.p_hat = static_cast<double>(rep.solvable) / static_cast<double>(trials);
  rep.wilson = wilson_interval(rep.solvable, trials, options.z);
  rep.compatible = rep.wilson.hi >= rep.lower_bound && rep.wilson.lo <= rep.upper_bound;
  return rep;
}

}  // namespace dlaplace
