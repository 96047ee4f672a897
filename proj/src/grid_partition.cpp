#include "adaclust/grid_partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "adaclust/error.hpp"

namespace adaclust {

double box_volume(const Box& box) {
  double v = 1.0;
  for (const auto& iv : box) v *= iv.length();
  return v;
}

PartitionSpec::PartitionSpec(Box box, double delta, std::size_t cells_per_axis)
    : box_(std::move(box)), delta_(delta), cells_per_axis_(cells_per_axis) {
  const std::size_t d = box_.size();
  sides_.resize(d);
  strides_.resize(d);
  cell_count_ = 1;
  for (std::size_t a = 0; a < d; ++a) {
    sides_[a] = box_[a].length() / static_cast<double>(cells_per_axis_);
    cell_count_ *= cells_per_axis_;
  }
  std::size_t stride = 1;
  for (std::size_t a = d; a-- > 0;) {
    strides_[a] = stride;
    stride *= cells_per_axis_;
  }
}

double PartitionSpec::diameter() const {
  return *std::max_element(sides_.begin(), sides_.end());
}

double PartitionSpec::domain_width() const {
  double widest = 0.0;
  for (const auto& iv : box_) widest = std::max(widest, iv.length());
  return delta_ * widest;
}

std::size_t PartitionSpec::flatten(const CellIndex& index) const {
  if (index.dim() != dim()) {
    throw Error(ErrorCode::InvalidIndex, "index dimension does not match partition");
  }
  std::size_t id = 0;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (index.idx[a] >= cells_per_axis_) {
      throw Error(ErrorCode::InvalidIndex, "cell index out of range on axis " + std::to_string(a));
    }
    id += index.idx[a] * strides_[a];
  }
  return id;
}

CellIndex PartitionSpec::unflatten(std::size_t id) const {
  if (id >= cell_count_) throw Error(ErrorCode::InvalidIndex, "flat cell id out of range");
  CellIndex out;
  out.idx.resize(dim());
  for (std::size_t a = 0; a < dim(); ++a) out.idx[a] = (id / strides_[a]) % cells_per_axis_;
  return out;
}

Box PartitionSpec::cell_box(std::size_t id) const {
  const CellIndex c = unflatten(id);
  Box out(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    const double lo = box_[a].lo + sides_[a] * static_cast<double>(c.idx[a]);
    const double hi = c.idx[a] + 1 == cells_per_axis_ ? box_[a].hi : lo + sides_[a];
    out[a] = {lo, hi};
  }
  return out;
}

bool PartitionSpec::operator==(const PartitionSpec& other) const {
  return box_ == other.box_ && cells_per_axis_ == other.cells_per_axis_;
}

PartitionPtr build_partition(Box box, double delta) {
  if (!(delta > 0.0) || !(delta <= 1.0)) {
    throw Error(ErrorCode::InvalidWidth, "delta must lie in (0,1], got " + std::to_string(delta));
  }
  if (box.empty()) throw Error(ErrorCode::InvalidDomain, "box has no axes");
  for (const auto& iv : box) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.hi > iv.lo)) {
      throw Error(ErrorCode::InvalidDomain, "degenerate axis interval");
    }
  }
  // Unique l with 1/(l+1) < delta <= 1/l, evaluated in floating point.
  auto l = static_cast<std::size_t>(std::floor(1.0 / delta));
  l = std::max<std::size_t>(l, 1);
  while (l > 1 && delta > 1.0 / static_cast<double>(l)) --l;
  while (1.0 / static_cast<double>(l + 1) >= delta) ++l;
  return std::make_shared<const PartitionSpec>(std::move(box), delta, l + 1);
}

CellIndex locate(const PartitionSpec& p, std::span<const double> point) {
  if (point.size() != p.dim()) {
    throw Error(ErrorCode::OutOfDomain, "point dimension does not match partition");
  }
  CellIndex out;
  out.idx.resize(p.dim());
  const auto m = p.cells_per_axis();
  for (std::size_t a = 0; a < p.dim(); ++a) {
    const auto& iv = p.box()[a];
    const double x = point[a];
    if (!(x >= iv.lo && x <= iv.hi)) {
      throw Error(ErrorCode::OutOfDomain, "point outside the partition box");
    }
    const double u = (x - iv.lo) / iv.length() * static_cast<double>(m);
    auto k = static_cast<std::size_t>(std::floor(u));
    out.idx[a] = std::min(k, m - 1);
  }
  return out;
}

std::size_t locate_id(const PartitionSpec& p, std::span<const double> point) {
  if (point.size() != p.dim()) {
    throw Error(ErrorCode::OutOfDomain, "point dimension does not match partition");
  }
  std::size_t id = 0;
  const auto m = p.cells_per_axis();
  for (std::size_t a = 0; a < p.dim(); ++a) {
    const auto& iv = p.box()[a];
    const double x = point[a];
    if (!(x >= iv.lo && x <= iv.hi)) {
      throw Error(ErrorCode::OutOfDomain, "point outside the partition box");
    }
    const double u = (x - iv.lo) / iv.length() * static_cast<double>(m);
    const auto k = std::min(static_cast<std::size_t>(std::floor(u)), m - 1);
    id += k * p.stride(a);
  }
  return id;
}

namespace {

double axis_gap(double side, std::size_t a, std::size_t b) {
  const std::size_t diff = a > b ? a - b : b - a;
  return diff <= 1 ? 0.0 : side * static_cast<double>(diff - 1);
}

}  // namespace

double cell_distance(const PartitionSpec& p, const CellIndex& i, const CellIndex& j) {
  if (i.dim() != p.dim() || j.dim() != p.dim()) {
    throw Error(ErrorCode::InvalidIndex, "index dimension does not match partition");
  }
  double dist = 0.0;
  for (std::size_t a = 0; a < p.dim(); ++a) {
    if (i.idx[a] >= p.cells_per_axis() || j.idx[a] >= p.cells_per_axis()) {
      throw Error(ErrorCode::InvalidIndex, "cell index out of range");
    }
    dist = std::max(dist, axis_gap(p.side(a), i.idx[a], j.idx[a]));
  }
  return dist;
}

double cell_distance(const PartitionSpec& p, std::size_t i, std::size_t j) {
  if (i >= p.cell_count() || j >= p.cell_count()) {
    throw Error(ErrorCode::InvalidIndex, "flat cell id out of range");
  }
  double dist = 0.0;
  const auto m = p.cells_per_axis();
  for (std::size_t a = 0; a < p.dim(); ++a) {
    const std::size_t ia = (i / p.stride(a)) % m;
    const std::size_t ja = (j / p.stride(a)) % m;
    dist = std::max(dist, axis_gap(p.side(a), ia, ja));
  }
  return dist;
}

double cell_measure(const PartitionSpec& p) {
  double v = 1.0;
  for (double s : p.sides()) v *= s;
  return v;
}

}  // namespace adaclust
