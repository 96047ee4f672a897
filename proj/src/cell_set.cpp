#include "adaclust/cell_set.hpp"

#include <algorithm>

#include "adaclust/error.hpp"

namespace adaclust {

CellSet::CellSet(PartitionPtr partition)
    : partition_(std::move(partition)),
      universe_(partition_ ? partition_->cell_count() : 0),
      words_((universe_ + 63) / 64, 0) {}

CellSet::CellSet(PartitionPtr partition, const std::vector<std::size_t>& ids)
    : CellSet(std::move(partition)) {
  for (auto id : ids) insert(id);
}

CellSet CellSet::full(PartitionPtr partition) {
  CellSet s(std::move(partition));
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  s.trim();
  return s;
}

CellSet CellSet::from_mask(PartitionPtr partition, const std::vector<std::uint8_t>& mask) {
  CellSet s(std::move(partition));
  if (mask.size() != s.universe_) {
    throw Error(ErrorCode::PartitionMismatch, "mask size does not match partition");
  }
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] != 0) s.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  return s;
}

void CellSet::insert(std::size_t id) {
  if (id >= universe_) throw Error(ErrorCode::InvalidIndex, "cell id out of range");
  words_[id >> 6] |= std::uint64_t{1} << (id & 63);
}

void CellSet::erase(std::size_t id) {
  if (id >= universe_) throw Error(ErrorCode::InvalidIndex, "cell id out of range");
  words_[id >> 6] &= ~(std::uint64_t{1} << (id & 63));
}

std::size_t CellSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool CellSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<std::size_t> CellSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for_each([&](std::size_t id) { out.push_back(id); });
  return out;
}

std::vector<std::uint8_t> CellSet::mask() const {
  std::vector<std::uint8_t> out(universe_, 0);
  for_each([&](std::size_t id) { out[id] = 1; });
  return out;
}

std::size_t CellSet::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return (w << 6) + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return universe_;
}

CellSet CellSet::complement() const {
  CellSet out = *this;
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

CellSet CellSet::united(const CellSet& other) const {
  check_compatible(other);
  CellSet out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
  return out;
}

CellSet CellSet::intersected(const CellSet& other) const {
  check_compatible(other);
  CellSet out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
  return out;
}

CellSet CellSet::minus(const CellSet& other) const {
  check_compatible(other);
  CellSet out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= ~other.words_[i];
  return out;
}

bool CellSet::intersects(const CellSet& other) const {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

bool CellSet::is_subset_of(const CellSet& other) const {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool CellSet::same_partition(const CellSet& other) const {
  if (partition_ == other.partition_) return true;
  if (!partition_ || !other.partition_) return false;
  return *partition_ == *other.partition_;
}

bool CellSet::operator==(const CellSet& other) const {
  return same_partition(other) && words_ == other.words_;
}

void CellSet::check_compatible(const CellSet& other) const {
  if (!same_partition(other)) {
    throw Error(ErrorCode::PartitionMismatch, "cell sets live on different partitions");
  }
}

void CellSet::trim() {
  const std::size_t tail = universe_ & 63;
  if (tail != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

}  // namespace adaclust
