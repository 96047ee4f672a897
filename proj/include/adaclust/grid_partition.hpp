#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace adaclust {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

// Axis-aligned box, one closed interval per axis.
using Box = std::vector<Interval>;

double box_volume(const Box& box);

// Multi-index of a cell; each entry is < cells_per_axis.
struct CellIndex {
  std::vector<std::size_t> idx;

  std::size_t dim() const { return idx.size(); }
  bool operator==(const CellIndex&) const = default;
};

// Uniform hypercube partition of a box. The requested width delta is read in
// unit-box coordinates: the unique l with 1/(l+1) < delta <= 1/l is chosen and
// every axis is cut into l+1 equal cells. For the unit box the family then
// satisfies diam <= delta, m <= 2^d delta^-d and mu(cell) >= 2^-d delta^d.
class PartitionSpec {
 public:
  PartitionSpec(Box box, double delta, std::size_t cells_per_axis);

  const Box& box() const { return box_; }
  std::size_t dim() const { return box_.size(); }
  double delta() const { return delta_; }
  std::size_t cells_per_axis() const { return cells_per_axis_; }
  std::size_t level() const { return cells_per_axis_ - 1; }
  std::size_t cell_count() const { return cell_count_; }

  // Side length along one axis in domain units.
  double side(std::size_t axis) const { return sides_[axis]; }
  const std::vector<double>& sides() const { return sides_; }
  // Side length in unit-box coordinates, 1/(l+1).
  double unit_side() const { return 1.0 / static_cast<double>(cells_per_axis_); }
  // Sup-norm diameter of a cell in domain units.
  double diameter() const;
  // Requested width delta expressed in domain units (delta times the widest
  // axis). This is the horizontal resolution the level-set tubes refer to.
  double domain_width() const;

  std::size_t flatten(const CellIndex& index) const;
  CellIndex unflatten(std::size_t id) const;
  // Row-major stride of an axis: the last axis varies fastest.
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }
  Box cell_box(std::size_t id) const;

  bool operator==(const PartitionSpec& other) const;

 private:
  Box box_;
  double delta_;
  std::size_t cells_per_axis_;
  std::size_t cell_count_;
  std::vector<double> sides_;
  std::vector<std::size_t> strides_;
};

using PartitionPtr = std::shared_ptr<const PartitionSpec>;

// Throws InvalidWidth for delta outside (0,1] and InvalidDomain for an empty
// or degenerate box.
PartitionPtr build_partition(Box box, double delta);

// Cells are half-open [lo, hi) except on the upper face of the domain, which
// belongs to the last cell. Throws OutOfDomain.
CellIndex locate(const PartitionSpec& p, std::span<const double> point);
std::size_t locate_id(const PartitionSpec& p, std::span<const double> point);

// Inf-distance between two closed cells under the sup-norm:
// max over axes of side * max(0, |i_a - j_a| - 1).
double cell_distance(const PartitionSpec& p, const CellIndex& i, const CellIndex& j);
double cell_distance(const PartitionSpec& p, std::size_t i, std::size_t j);

double cell_measure(const PartitionSpec& p);

}  // namespace adaclust
