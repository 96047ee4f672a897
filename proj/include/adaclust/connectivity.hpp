#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "adaclust/cell_set.hpp"

namespace adaclust {

// Partition of a cell set into tau-connected components. Components are
// ordered by their smallest member id; labels[k] is the component of the k-th
// member of source in ascending id order.
struct ComponentLabeling {
  CellSet source;
  std::vector<std::size_t> labels;
  std::vector<CellSet> components;

  std::size_t count() const { return components.size(); }
};

// Two member cells are linked when their closed-cell distance is < tau.
// Throws InvalidTau for tau <= 0. An empty set yields zero components.
ComponentLabeling tau_components(const CellSet& set, double tau);

// Components of the union of closed cells (cells touching at a face, edge or
// corner are connected).
ComponentLabeling connected_components(const CellSet& set);

// Minimal distance between distinct topological components; +infinity when
// there is at most one. Throws EmptySet.
double tau_star(const CellSet& set);

// All cells within closed-cell distance <= delta of the set (separable box
// filter, parallel over grid lines).
CellSet dilate(const CellSet& set, double delta);
CellSet erode(const CellSet& set, double delta);
// Direct per-cell references for the two kernels above.
CellSet dilate_serial(const CellSet& set, double delta);
CellSet erode_serial(const CellSet& set, double delta);

struct CrmResult {
  bool comparable = false;
  // For each source component, the index of the target component holding it.
  std::vector<std::size_t> map;
  bool injective = false;
  bool surjective = false;
  bool bijective = false;
};

// Relates two families of disjoint cell sets. Throws NotNested when the
// source union is not contained in the target union.
CrmResult compare_partitions(std::span<const CellSet> src, std::span<const CellSet> dst);

}  // namespace adaclust
