#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "adaclust/grid_partition.hpp"

namespace adaclust {

// A union of cells of one partition, stored as a dense bitset over flat ids.
// Set operations require both operands to live on the same partition.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(PartitionPtr partition);
  CellSet(PartitionPtr partition, const std::vector<std::size_t>& ids);

  static CellSet full(PartitionPtr partition);
  // Build from a per-cell byte mask (nonzero = member).
  static CellSet from_mask(PartitionPtr partition, const std::vector<std::uint8_t>& mask);

  const PartitionSpec& partition() const { return *partition_; }
  const PartitionPtr& partition_ptr() const { return partition_; }
  std::size_t universe() const { return universe_; }

  bool contains(std::size_t id) const {
    return id < universe_ && ((words_[id >> 6] >> (id & 63)) & 1u) != 0;
  }
  void insert(std::size_t id);
  void erase(std::size_t id);

  std::size_t size() const;
  bool empty() const;
  std::vector<std::size_t> members() const;
  std::vector<std::uint8_t> mask() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        fn((w << 6) + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

  // Smallest member id; universe() when empty.
  std::size_t first() const;

  CellSet complement() const;
  CellSet united(const CellSet& other) const;
  CellSet intersected(const CellSet& other) const;
  CellSet minus(const CellSet& other) const;
  bool intersects(const CellSet& other) const;
  bool is_subset_of(const CellSet& other) const;
  bool same_partition(const CellSet& other) const;

  bool operator==(const CellSet& other) const;

 private:
  void check_compatible(const CellSet& other) const;
  void trim();

  PartitionPtr partition_;
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace adaclust
