#include "dlaplace/lattice.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dlaplace {

void Lattice::validate() const {
  if (n < 1) throw std::invalid_argument("Lattice: n must be positive");
  const auto d = v.size();
  if (d == 0) throw std::invalid_argument("Lattice: dimension must be positive");
  if (a_matrix.rows() != d || a_matrix.cols() != d) throw std::invalid_argument("Lattice: A must be d x d");
  if (!(std::fabs(a_matrix.determinant()) > 1e-12)) throw std::invalid_argument("Lattice: A is singular");
}

Eigen::VectorXd Lattice::point(const IntVector& z) const {
  Eigen::VectorXd zz(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) zz[static_cast<Eigen::Index>(i)] = static_cast<double>(z[i]);
  return a_matrix * zz / static_cast<double>(n) + v;
}

Lattice Lattice::unit(std::int64_t n, int d) {
  return Lattice{n, Eigen::MatrixXd::Identity(d, d), Eigen::VectorXd::Zero(d)};
}

Region::Region(Eigen::VectorXd lo, Eigen::VectorXd hi, std::vector<bool> lo_closed, std::vector<bool> hi_closed,
               Predicate member)
    : lo_(std::move(lo)),
      hi_(std::move(hi)),
      lo_closed_(std::move(lo_closed)),
      hi_closed_(std::move(hi_closed)),
      member_(std::move(member)) {
  if (lo_.size() != hi_.size() || lo_.size() == 0) throw std::invalid_argument("Region: bad bounds");
  for (Eigen::Index i = 0; i < lo_.size(); ++i) {
    if (!std::isfinite(lo_[i]) || !std::isfinite(hi_[i])) throw std::invalid_argument("Region: unbounded region");
    if (lo_[i] > hi_[i]) throw std::invalid_argument("Region: lower bound exceeds upper bound");
  }
  if (lo_closed_.size() != static_cast<std::size_t>(lo_.size()) ||
      hi_closed_.size() != static_cast<std::size_t>(lo_.size())) {
    throw std::invalid_argument("Region: closure flags have wrong length");
  }
}

Region Region::closed_box(Eigen::VectorXd lo, Eigen::VectorXd hi) {
  const auto d = static_cast<std::size_t>(lo.size());
  return Region(std::move(lo), std::move(hi), std::vector<bool>(d, true), std::vector<bool>(d, true), nullptr);
}

Region Region::open_box(Eigen::VectorXd lo, Eigen::VectorXd hi) {
  const auto d = static_cast<std::size_t>(lo.size());
  return Region(std::move(lo), std::move(hi), std::vector<bool>(d, false), std::vector<bool>(d, false), nullptr);
}

Region Region::box(Eigen::VectorXd lo, Eigen::VectorXd hi, std::vector<bool> lo_closed, std::vector<bool> hi_closed) {
  return Region(std::move(lo), std::move(hi), std::move(lo_closed), std::move(hi_closed), nullptr);
}

Region Region::predicate(Eigen::VectorXd box_lo, Eigen::VectorXd box_hi, Predicate member) {
  if (!member) throw std::invalid_argument("Region: empty predicate");
  const auto d = static_cast<std::size_t>(box_lo.size());
  return Region(std::move(box_lo), std::move(box_hi), std::vector<bool>(d, true), std::vector<bool>(d, true),
                std::move(member));
}

bool Region::contains(const Eigen::VectorXd& x) const {
  if (x.size() != lo_.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (lo_closed_[k] ? x[i] < lo_[i] : x[i] <= lo_[i]) return false;
    if (hi_closed_[k] ? x[i] > hi_[i] : x[i] >= hi_[i]) return false;
  }
  return member_ ? member_(x) : true;
}

void for_each_lattice_point(const Lattice& lattice, const Region& region, const LatticeVisitor& visit) {
  lattice.validate();
  const int d = lattice.dim();
  if (region.dim() != d) throw std::invalid_argument("for_each_lattice_point: dimension mismatch");

  // z = n A^{-1} (x - v); extremes over the box are attained at its corners.
  const Eigen::MatrixXd back = static_cast<double>(lattice.n) * lattice.a_matrix.inverse();
  Eigen::VectorXd zlo = Eigen::VectorXd::Constant(d, std::numeric_limits<double>::infinity());
  Eigen::VectorXd zhi = -zlo;
  Eigen::VectorXd corner(d);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    for (int i = 0; i < d; ++i) corner[i] = (mask >> i) & 1U ? region.upper()[i] : region.lower()[i];
    const Eigen::VectorXd z = back * (corner - lattice.v);
    zlo = zlo.cwiseMin(z);
    zhi = zhi.cwiseMax(z);
  }
  IntVector first(static_cast<std::size_t>(d));
  IntVector last(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    first[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(zlo[i])) - 1;
    last[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::ceil(zhi[i])) + 1;
  }

  IntVector z = first;
  while (true) {
    const Eigen::VectorXd x = lattice.point(z);
    if (region.contains(x)) visit(z, x);
    int i = d - 1;
    while (i >= 0 && z[static_cast<std::size_t>(i)] == last[static_cast<std::size_t>(i)]) {
      z[static_cast<std::size_t>(i)] = first[static_cast<std::size_t>(i)];
      --i;
    }
    if (i < 0) break;
    ++z[static_cast<std::size_t>(i)];
  }
}

std::vector<Eigen::VectorXd> lattice_points(const Lattice& lattice, const Region& region) {
  std::vector<Eigen::VectorXd> out;
  for_each_lattice_point(lattice, region, [&](const IntVector&, const Eigen::VectorXd& x) { out.push_back(x); });
  return out;
}

std::int64_t count_lattice_points(const Lattice& lattice, const Region& region) {
  std::int64_t count = 0;
  for_each_lattice_point(lattice, region, [&](const IntVector&, const Eigen::VectorXd&) { ++count; });
  return count;
}

}  // namespace dlaplace
