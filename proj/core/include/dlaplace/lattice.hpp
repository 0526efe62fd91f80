#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace dlaplace {

using IntVector = std::vector<std::int64_t>;

/// Scaled affine grid (1/n) A Z^d + v.
struct Lattice {
  std::int64_t n = 1;
  Eigen::MatrixXd a_matrix;
  Eigen::VectorXd v;

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(v.size()); }

  /// Throws std::invalid_argument if n < 1, shapes disagree, or |det A| <= 1e-12.
  void validate() const;

  [[nodiscard]] Eigen::VectorXd point(const IntVector& z) const;

  [[nodiscard]] static Lattice unit(std::int64_t n, int d);
};

/// Bounded subset of R^d: an axis box (each side open or closed) or an
/// arbitrary membership predicate with an enclosing box.
class Region {
 public:
  using Predicate = std::function<bool(const Eigen::VectorXd&)>;

  [[nodiscard]] static Region closed_box(Eigen::VectorXd lo, Eigen::VectorXd hi);
  [[nodiscard]] static Region open_box(Eigen::VectorXd lo, Eigen::VectorXd hi);
  /// Per-side control: lo_closed[i] / hi_closed[i].
  [[nodiscard]] static Region box(Eigen::VectorXd lo, Eigen::VectorXd hi, std::vector<bool> lo_closed,
                                  std::vector<bool> hi_closed);
  [[nodiscard]] static Region predicate(Eigen::VectorXd box_lo, Eigen::VectorXd box_hi, Predicate member);

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(lo_.size()); }
  [[nodiscard]] bool is_box() const noexcept { return !member_; }
  [[nodiscard]] const Eigen::VectorXd& lower() const noexcept { return lo_; }
  [[nodiscard]] const Eigen::VectorXd& upper() const noexcept { return hi_; }
  [[nodiscard]] bool contains(const Eigen::VectorXd& x) const;

 private:
  Region(Eigen::VectorXd lo, Eigen::VectorXd hi, std::vector<bool> lo_closed, std::vector<bool> hi_closed,
         Predicate member);

  Eigen::VectorXd lo_;
  Eigen::VectorXd hi_;
  std::vector<bool> lo_closed_;
  std::vector<bool> hi_closed_;
  Predicate member_;
};

using LatticeVisitor = std::function<void(const IntVector& z, const Eigen::VectorXd& x)>;

/// Visits region ∩ lattice in lexicographic order of z (first coordinate
/// slowest). Candidate z come from the enclosing box pulled back through A^{-1}
/// with one cell of slack; membership is then tested on the actual point.
void for_each_lattice_point(const Lattice& lattice, const Region& region, const LatticeVisitor& visit);

[[nodiscard]] std::vector<Eigen::VectorXd> lattice_points(const Lattice& lattice, const Region& region);

[[nodiscard]] std::int64_t count_lattice_points(const Lattice& lattice, const Region& region);

}  // namespace dlaplace
