#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dlaplace/log_scalar.hpp"

namespace dlaplace {

using BigInt = boost::multiprecision::cpp_int;

/// Natural log of a positive big integer; -inf for zero.
[[nodiscard]] double ln_bigint(const BigInt& x);

enum class StirlingMode { exact, log_space };

/// Default memory guard for exact tables.
inline constexpr std::int64_t kExactStirlingLimit = 5000;

/// Dense triangular table of 2-associated Stirling numbers S_2(p, q),
/// 0 <= q <= floor(p/2), built bottom-up from
///   S_2(p, q) = q S_2(p-1, q) + (p-1) S_2(p-2, q-1).
/// Immutable once built and safe to share across threads.
class StirlingTable {
 public:
  [[nodiscard]] static StirlingTable build(std::int64_t p_max, StirlingMode mode,
                                           std::int64_t exact_limit = kExactStirlingLimit);

  [[nodiscard]] std::int64_t p_max() const noexcept { return p_max_; }
  [[nodiscard]] StirlingMode mode() const noexcept { return mode_; }

  /// S_2(p, q) in log space. Zero where the definition forces zero
  /// (q > p/2, or q = 0 < p). Throws std::out_of_range for p outside [0, p_max].
  [[nodiscard]] LogScalar log_value(std::int64_t p, std::int64_t q) const;

  /// Exact entry; exact mode only.
  [[nodiscard]] const BigInt& exact_value(std::int64_t p, std::int64_t q) const;

  /// Raw ln S_2(p, q) (-inf for zero entries) without the LogScalar wrapper.
  [[nodiscard]] double ln_value(std::int64_t p, std::int64_t q) const;

  /// Writes `p,q,ln_S2` rows for every stored cell with S_2 > 0.
  void write_csv(std::ostream& out) const;

 private:
  StirlingTable(std::int64_t p_max, StirlingMode mode);
  [[nodiscard]] std::size_t index(std::int64_t p, std::int64_t q) const noexcept {
    return row_offset_[static_cast<std::size_t>(p)] + static_cast<std::size_t>(q);
  }
  void check_p(std::int64_t p) const;

  std::int64_t p_max_ = 0;
  StirlingMode mode_ = StirlingMode::log_space;
  std::vector<std::size_t> row_offset_;
  std::vector<BigInt> exact_;
  std::vector<double> log_;  // ln S_2, -inf for zero
};

/// Convenience wrapper matching the table accessor.
[[nodiscard]] inline LogScalar stirling_log(const StirlingTable& table, std::int64_t p, std::int64_t q) {
  return table.log_value(p, q);
}

/// Largest p accepted by brute_force_s2.
inline constexpr int kBruteForceMaxP = 14;

/// Counts partitions of {1..p} into q blocks of size >= 2 by explicit
/// enumeration. Independent of the recurrence; used as a test oracle.
[[nodiscard]] std::uint64_t brute_force_s2(int p, int q);

/// ln F(p, q), the closed-form approximation
///   F = p! sqrt(2 pi (p-2q)) / (q! (p-2q)!) ((p-2q)/e)^{p-2q} g^S(p,q) e^{-q h^S(p/q)}
/// valid for 1 <= q < p/2.
[[nodiscard]] LogScalar hennecart_f_log(std::int64_t p, std::int64_t q);

/// (p!/q!) g^S(p,q) e^{-q h^S(p/q)}: the two-sided envelope of S_2(p,q).
/// Exact at q = p/2, zero where g^S vanishes.
[[nodiscard]] LogScalar simple_form_log(std::int64_t p, std::int64_t q);

/// Observed extremes of a ratio over a parameter range.
struct RatioRange {
  double min = 0.0;
  double max = 0.0;
  std::int64_t count = 0;
};

/// Empirical sandwich constants. The existence of each pair is known; the
/// values are measured here, never hard-coded.
struct EnvelopeConstants {
  RatioRange stirling_over_simple;   // c_S, C_S : S_2 / simple_form
  RatioRange stirling_over_f;        // c_F, C_F : S_2 / F
  RatioRange binomial_over_envelope; // c_B, C_B : C(q,p) / (g^B e^{-q h^B})
  std::int64_t p_max = 0;
  std::int64_t binomial_q_max = 0;
};

/// Measures c_S, C_S over 1 <= p <= p_max, c_F, C_F over 1 <= q < p/2 <= p_max/2,
/// and c_B, C_B over 0 <= p <= q <= binomial_q_max. Uses `table` for S_2.
[[nodiscard]] EnvelopeConstants measure_envelope_constants(const StirlingTable& table, std::int64_t p_max,
                                                           std::int64_t binomial_q_max);

/// Largest relative deviation |S_log / S_exact - 1| over all cells with p <= p_max.
[[nodiscard]] double max_log_table_drift(const StirlingTable& log_table, const StirlingTable& exact_table,
                                         std::int64_t p_max);

}  // namespace dlaplace
