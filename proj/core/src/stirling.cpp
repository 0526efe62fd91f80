#include "dlaplace/stirling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "dlaplace/special_functions.hpp"

namespace dlaplace {

double ln_bigint(const BigInt& x) {
  if (x.sign() < 0) throw std::domain_error("ln_bigint: negative argument");
  if (x.is_zero()) return kNegInf;
  const auto top_bit = static_cast<long>(boost::multiprecision::msb(x));
  if (top_bit < 63) return std::log(x.convert_to<double>());
  const long shift = top_bit - 62;
  const BigInt head = x >> shift;
  return std::log(head.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

StirlingTable::StirlingTable(std::int64_t p_max, StirlingMode mode) : p_max_(p_max), mode_(mode) {
  row_offset_.resize(static_cast<std::size_t>(p_max) + 2);
  row_offset_[0] = 0;
  for (std::int64_t p = 0; p <= p_max; ++p) {
    row_offset_[static_cast<std::size_t>(p) + 1] = row_offset_[static_cast<std::size_t>(p)] + static_cast<std::size_t>(p / 2 + 1);
  }
}

StirlingTable StirlingTable::build(std::int64_t p_max, StirlingMode mode, std::int64_t exact_limit) {
  if (p_max < 0) throw std::invalid_argument("StirlingTable: p_max must be nonnegative");
  if (mode == StirlingMode::exact && p_max > exact_limit) {
    throw std::invalid_argument("StirlingTable: exact mode limited to p_max <= " + std::to_string(exact_limit) +
                                ", requested " + std::to_string(p_max));
  }
  StirlingTable t(p_max, mode);
  const std::size_t cells = t.row_offset_.back();

  if (mode == StirlingMode::exact) {
    t.exact_.assign(cells, BigInt(0));
    t.exact_[t.index(0, 0)] = 1;
    for (std::int64_t p = 2; p <= p_max; ++p) {
      for (std::int64_t q = 1; 2 * q <= p; ++q) {
        BigInt v = BigInt(p - 1) * t.exact_[t.index(p - 2, q - 1)];
        if (2 * q <= p - 1) v += BigInt(q) * t.exact_[t.index(p - 1, q)];
        t.exact_[t.index(p, q)] = std::move(v);
      }
    }
    return t;
  }

  t.log_.assign(cells, kNegInf);
  t.log_[t.index(0, 0)] = 0.0;
  for (std::int64_t p = 2; p <= p_max; ++p) {
    const double ln_pm1 = std::log(static_cast<double>(p - 1));
    for (std::int64_t q = 1; 2 * q <= p; ++q) {
      const double diag = ln_pm1 + t.log_[t.index(p - 2, q - 1)];
      const double left =
          2 * q <= p - 1 ? std::log(static_cast<double>(q)) + t.log_[t.index(p - 1, q)] : kNegInf;
      t.log_[t.index(p, q)] = ln_add_exp(left, diag);
    }
  }
  return t;
}

void StirlingTable::check_p(std::int64_t p) const {
  if (p < 0 || p > p_max_) {
    throw std::out_of_range("StirlingTable: p = " + std::to_string(p) + " outside [0, " + std::to_string(p_max_) + "]");
  }
}

double StirlingTable::ln_value(std::int64_t p, std::int64_t q) const {
  check_p(p);
  if (q < 0 || 2 * q > p) return kNegInf;
  if (mode_ == StirlingMode::exact) return ln_bigint(exact_[index(p, q)]);
  return log_[index(p, q)];
}

LogScalar StirlingTable::log_value(std::int64_t p, std::int64_t q) const {
  return LogScalar::from_log(ln_value(p, q));
}

const BigInt& StirlingTable::exact_value(std::int64_t p, std::int64_t q) const {
  if (mode_ != StirlingMode::exact) throw std::logic_error("StirlingTable: exact_value on a log-space table");
  check_p(p);
  static const BigInt kZero{0};
  if (q < 0 || 2 * q > p) return kZero;
  return exact_[index(p, q)];
}

void StirlingTable::write_csv(std::ostream& out) const {
  out << "p,q,ln_S2\n";
  const auto old_precision = out.precision(17);
  for (std::int64_t p = 0; p <= p_max_; ++p) {
    for (std::int64_t q = 0; 2 * q <= p; ++q) {
      const double v = ln_value(p, q);
      if (v == kNegInf) continue;
      out << p << ',' << q << ',' << v << '\n';
    }
  }
  out.precision(old_precision);
}

namespace {

struct PartitionCounter {
  int p;
  int q;
  std::vector<int> block_sizes;
  int singletons = 0;
  std::uint64_t count = 0;

  void place(int element) {
    const int blocks = static_cast<int>(block_sizes.size());
    const int remaining = p - element;
    // Every singleton needs one more element, every missing block two.
    if (singletons + 2 * (q - blocks) > remaining) return;
    if (remaining == 0) {
      if (blocks == q && singletons == 0) ++count;
      return;
    }
    for (int b = 0; b < blocks; ++b) {
      const int before = block_sizes[b]++;
      if (before == 1) --singletons;
      place(element + 1);
      if (before == 1) ++singletons;
      --block_sizes[b];
    }
    if (blocks < q) {
      block_sizes.push_back(1);
      ++singletons;
      place(element + 1);
      --singletons;
      block_sizes.pop_back();
    }
  }
};

}  // namespace

std::uint64_t brute_force_s2(int p, int q) {
  if (p < 0 || q < 0) throw std::domain_error("brute_force_s2: negative argument");
  if (p > kBruteForceMaxP) {
    throw std::domain_error("brute_force_s2: p = " + std::to_string(p) + " exceeds enumeration limit " +
                            std::to_string(kBruteForceMaxP));
  }
  PartitionCounter counter{p, q, {}, 0, 0};
  counter.block_sizes.reserve(static_cast<std::size_t>(q));
  counter.place(0);
  return counter.count;
}

LogScalar hennecart_f_log(std::int64_t p, std::int64_t q) {
  if (q < 1 || 2 * q >= p) throw std::domain_error("hennecart_f_log: need 1 <= q < p/2");
  const std::int64_t excess = p - 2 * q;
  const double x = static_cast<double>(excess);
  const double ln_f = ln_factorial(p) + 0.5 * std::log(2.0 * std::numbers::pi * x) - ln_factorial(q) -
                      ln_factorial(excess) + x * (std::log(x) - 1.0) + std::log(g_s(p, q)) -
                      static_cast<double>(q) * h_s(static_cast<double>(p) / static_cast<double>(q));
  return LogScalar::from_log(ln_f);
}

LogScalar simple_form_log(std::int64_t p, std::int64_t q) {
  if (p < 1 || q < 0) throw std::domain_error("simple_form_log: need p >= 1, q >= 0");
  const double g = g_s(p, q);
  if (g == 0.0) return LogScalar::zero();
  const double ln_v = ln_factorial(p) - ln_factorial(q) + std::log(g) -
                      static_cast<double>(q) * h_s(static_cast<double>(p) / static_cast<double>(q));
  return LogScalar::from_log(ln_v);
}

namespace {

void observe(RatioRange& range, double ratio) {
  if (range.count == 0) {
    range.min = range.max = ratio;
  } else {
    range.min = std::min(range.min, ratio);
    range.max = std::max(range.max, ratio);
  }
  ++range.count;
}

}  // namespace

EnvelopeConstants measure_envelope_constants(const StirlingTable& table, std::int64_t p_max,
                                             std::int64_t binomial_q_max) {
  if (p_max > table.p_max()) throw std::out_of_range("measure_envelope_constants: p_max exceeds table");
  EnvelopeConstants out;
  out.p_max = p_max;
  out.binomial_q_max = binomial_q_max;
  for (std::int64_t p = 1; p <= p_max; ++p) {
    for (std::int64_t q = 1; 2 * q <= p; ++q) {
      const double ln_s = table.ln_value(p, q);
      observe(out.stirling_over_simple, std::exp(ln_s - simple_form_log(p, q).log_mag()));
      if (2 * q < p) observe(out.stirling_over_f, std::exp(ln_s - hennecart_f_log(p, q).log_mag()));
    }
  }
  for (std::int64_t q = 1; q <= binomial_q_max; ++q) {
    for (std::int64_t p = 0; p <= q; ++p) {
      const double xi = static_cast<double>(p) / static_cast<double>(q);
      const double ln_env = std::log(g_b(p, q)) - static_cast<double>(q) * h_b(xi);
      observe(out.binomial_over_envelope, std::exp(ln_binomial(q, p) - ln_env));
    }
  }
  return out;
}

double max_log_table_drift(const StirlingTable& log_table, const StirlingTable& exact_table, std::int64_t p_max) {
  if (exact_table.mode() != StirlingMode::exact) throw std::invalid_argument("max_log_table_drift: reference must be exact");
  double worst = 0.0;
  for (std::int64_t p = 0; p <= p_max; ++p) {
    for (std::int64_t q = 0; 2 * q <= p; ++q) {
      const double ref = exact_table.ln_value(p, q);
      const double got = log_table.ln_value(p, q);
      if (ref == kNegInf || got == kNegInf) {
        if (ref != got) return std::numeric_limits<double>::infinity();
        continue;
      }
      worst = std::max(worst, std::fabs(std::expm1(got - ref)));
    }
  }
  return worst;
}

}  // namespace dlaplace
