#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dlaplace/stirling.hpp"

namespace dlaplace {

/// m x n system over GF(2). Row k lists its three column draws (a multiset;
/// repeated columns give entries 2 or 3 of Gamma). rhs[k] is 0 or 1.
struct Xor3Instance {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::vector<std::array<std::int32_t, 3>> rows;
  std::vector<std::uint8_t> rhs;

  /// Throws std::invalid_argument on out-of-range indices or size mismatch.
  void validate() const;
  /// Column sums of Gamma (multiplicities counted).
  [[nodiscard]] std::vector<std::int64_t> column_degrees() const;
  [[nodiscard]] bool is_2core() const;
};

enum class RowModel {
  with_replacement,    // three independent uniform draws
  without_replacement  // three distinct columns (sensitivity variant)
};

/// splitmix64 finalizer.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;
/// Per-trial seed derived from (base_seed, counter).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t counter) noexcept;

[[nodiscard]] Xor3Instance sample_instance(std::int64_t m, std::int64_t n, std::uint64_t seed,
                                           RowModel model = RowModel::with_replacement);

struct CoreResult {
  Xor3Instance core;
  std::int64_t removed_vars = 0;
  std::int64_t removed_rows = 0;
  double core_ratio = 0.0;  // core.m / core.n
  bool ratio_defined = false;
  std::vector<std::int64_t> kept_rows;  // original row index of each core row
  std::vector<std::int64_t> kept_cols;  // original column index of each core column
};

/// Repeatedly drops columns of degree 0 and columns of degree 1 together with
/// their row. The fixpoint does not depend on the order; `order_seed`
/// shuffles the processing order (used to check exactly that).
[[nodiscard]] CoreResult peel_2core(const Xor3Instance& instance, std::optional<std::uint64_t> order_seed = {});

struct Gf2Solution {
  bool solvable = false;
  std::int64_t rank = 0;
  std::optional<std::vector<std::uint8_t>> witness;
};

/// Gauss-Jordan elimination over GF(2) on bit-packed rows. Coefficients are
/// reduced mod 2, so a doubled column cancels.
[[nodiscard]] Gf2Solution gf2_solve(const Xor3Instance& instance);

/// True if `z` satisfies every row of `instance` mod 2.
[[nodiscard]] bool satisfies(const Xor3Instance& instance, const std::vector<std::uint8_t>& z);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

[[nodiscard]] WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z = 3.0);

struct TrialReport {
  std::int64_t index = 0;
  double c = 0.0;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::uint64_t seed = 0;
  bool solvable = false;
  bool core_empty = false;
  double core_ratio = 0.0;  // meaningful only when !core_empty
  std::int64_t core_m = 0;
  std::int64_t core_n = 0;
  std::int64_t elimination_rank = 0;
};

struct RatioBin {
  double ratio_lo = 0.0;
  double ratio_hi = 0.0;
  std::int64_t count = 0;
  std::int64_t solvable = 0;
  [[nodiscard]] double solvable_frac() const noexcept {
    return count ? static_cast<double>(solvable) / static_cast<double>(count) : 0.0;
  }
};

/// Non-empty bins [k w, (k+1) w) of core_ratio, in increasing order. Empty cores are skipped.
[[nodiscard]] std::vector<RatioBin> bin_by_core_ratio(const std::vector<TrialReport>& reports, double width);

struct SimOptions {
  unsigned threads = 1;
  RowModel model = RowModel::with_replacement;
  double bin_width = 0.05;
  double z = 3.0;
};

struct SolvabilityEstimate {
  double c = 0.0;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t trials = 0;
  std::int64_t solvable = 0;
  std::int64_t empty_cores = 0;
  double p_hat = 0.0;
  WilsonInterval wilson;
  std::vector<RatioBin> bins;
  std::vector<TrialReport> reports;  // sorted by trial index
};

/// Monte Carlo estimate of P(solvable) with m = round(c n). Trial k uses
/// derive_seed(base_seed, k), so results do not depend on the thread count.
[[nodiscard]] SolvabilityEstimate estimate_solvability(double c, std::int64_t n, std::int64_t trials,
                                                       std::uint64_t base_seed, const SimOptions& options = {});

void write_trials_csv(std::ostream& out, const std::vector<TrialReport>& reports);

/// Poisson-approximation estimate of P(random instance is a 2-core).
[[nodiscard]] double estimated_2core_acceptance(std::int64_t m, std::int64_t n);
/// Exact value n! S_2(3m, n) / n^{3m} for the with-replacement model.
[[nodiscard]] double exact_2core_acceptance(const StirlingTable& table, std::int64_t m, std::int64_t n);

struct RejectionSample {
  Xor3Instance instance;
  std::int64_t tries = 0;
};

/// Samples instances from seeds derive_seed(seed, 0), derive_seed(seed, 1), ...
/// until one is a 2-core. Throws std::runtime_error when the estimated
/// acceptance is below 1e-6 or max_tries is exhausted.
[[nodiscard]] RejectionSample rejection_sample_2core(std::int64_t m, std::int64_t n, std::uint64_t seed,
                                                     std::int64_t max_tries, RowModel model = RowModel::with_replacement);

struct BoundsReport {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t trials = 0;
  std::int64_t solvable = 0;
  std::int64_t total_tries = 0;
  double normalized_sum = 0.0;  // (1/n) sum S_{m,n}, exact then rounded
  bool normalized_sum_at_least_one = false;  // decided on integers
  double lower_bound = 0.0;  // 1 / normalized_sum
  double raw_upper_bound = 0.0;  // 2^{n-m}
  double upper_bound = 0.0;  // min(1, 2^{n-m})
  double p_hat = 0.0;
  WilsonInterval wilson;
  bool compatible = false;  // Wilson interval meets [lower, upper]
};

/// Exact finite-size bounds from big-integer arithmetic, against a Monte
/// Carlo estimate over rejection-sampled 2-cores.
[[nodiscard]] BoundsReport bounds_check(std::int64_t m, std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                        const StirlingTable& exact_table, const SimOptions& options = {},
                                        std::int64_t max_tries_per_sample = 10'000'000);

/// (1/n) sum of S_{m,n} over the full grid as an exact fraction num/den.
struct ExactFraction {
  BigInt num;
  BigInt den;
  [[nodiscard]] double to_double() const;
};
[[nodiscard]] ExactFraction exact_normalized_sum(const StirlingTable& exact_table, std::int64_t m, std::int64_t n);

}  // namespace dlaplace
