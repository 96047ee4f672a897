#include "adaclust/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "adaclust/error.hpp"

namespace adaclust {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Same expression as cell_distance so that the offset tables agree with it bit
// for bit.
double axis_gap(double side, std::size_t diff) {
  return diff <= 1 ? 0.0 : side * static_cast<double>(diff - 1);
}

bool linked(double dist, double threshold, bool inclusive) {
  return inclusive ? dist <= threshold : dist < threshold;
}

struct Offset {
  std::vector<std::ptrdiff_t> delta;
  std::ptrdiff_t flat = 0;
};

// Offsets in the positive half of the neighbourhood box whose closed-cell
// distance satisfies the link predicate.
std::vector<Offset> link_offsets(const PartitionSpec& p, const std::vector<std::size_t>& radius,
                                 double threshold, bool inclusive) {
  const std::size_t d = p.dim();
  std::vector<Offset> out;
  std::vector<std::ptrdiff_t> cur(d);
  for (std::size_t a = 0; a < d; ++a) cur[a] = -static_cast<std::ptrdiff_t>(radius[a]);
  while (true) {
    // Lexicographically positive offsets only; the symmetric half is implied.
    std::size_t lead = 0;
    while (lead < d && cur[lead] == 0) ++lead;
    if (lead < d && cur[lead] > 0) {
      double dist = 0.0;
      std::ptrdiff_t flat = 0;
      for (std::size_t a = 0; a < d; ++a) {
        dist = std::max(dist, axis_gap(p.side(a), static_cast<std::size_t>(std::abs(cur[a]))));
        flat += cur[a] * static_cast<std::ptrdiff_t>(p.stride(a));
      }
      if (linked(dist, threshold, inclusive)) out.push_back({cur, flat});
    }
    std::size_t a = d;
    while (a > 0) {
      --a;
      if (cur[a] < static_cast<std::ptrdiff_t>(radius[a])) {
        ++cur[a];
        break;
      }
      cur[a] = -static_cast<std::ptrdiff_t>(radius[a]);
      if (a == 0) return out;
    }
    if (d == 0) return out;
  }
}

ComponentLabeling label(const CellSet& set, double threshold, bool inclusive) {
  ComponentLabeling out;
  out.source = set;
  const auto members = set.members();
  if (members.empty()) return out;
  const PartitionSpec& p = set.partition();
  const std::size_t d = p.dim();
  const std::size_t m = p.cells_per_axis();

  std::vector<std::size_t> radius(d);
  double box_cells = 1.0;
  for (std::size_t a = 0; a < d; ++a) {
    const double r = std::ceil(threshold / p.side(a)) + 1.0;
    radius[a] = static_cast<std::size_t>(std::min(r, static_cast<double>(m)));
    box_cells *= 2.0 * static_cast<double>(radius[a]) + 1.0;
  }

  // Union-find over member positions.
  UnionFind uf(members.size());
  if (box_cells / 2.0 > static_cast<double>(members.size())) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (linked(cell_distance(p, members[i], members[j]), threshold, inclusive)) uf.unite(i, j);
      }
    }
  } else {
    std::vector<std::size_t> position(p.cell_count(), kNone);
    for (std::size_t i = 0; i < members.size(); ++i) position[members[i]] = i;
    const auto offsets = link_offsets(p, radius, threshold, inclusive);
    std::vector<std::size_t> coord(d);
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::size_t id = members[i];
      for (std::size_t a = 0; a < d; ++a) coord[a] = (id / p.stride(a)) % m;
      for (const auto& off : offsets) {
        bool inside = true;
        for (std::size_t a = 0; a < d && inside; ++a) {
          const auto c = static_cast<std::ptrdiff_t>(coord[a]) + off.delta[a];
          inside = c >= 0 && c < static_cast<std::ptrdiff_t>(m);
        }
        if (!inside) continue;
        const auto nb = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(id) + off.flat);
        if (position[nb] != kNone) uf.unite(i, position[nb]);
      }
    }
  }

  // Members are visited in ascending id order, so first-seen roots give the
  // smallest-member ordering of components.
  std::vector<std::size_t> root_label(members.size(), kNone);
  out.labels.resize(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::size_t r = uf.find(i);
    if (root_label[r] == kNone) {
      root_label[r] = out.components.size();
      out.components.emplace_back(set.partition_ptr());
    }
    out.labels[i] = root_label[r];
    out.components[root_label[r]].insert(members[i]);
  }
  return out;
}

std::size_t dilation_reach(double side, double delta, std::size_t cells) {
  // Largest k >= 1 with side * (k - 1) <= delta, capped at the grid size.
  auto k = static_cast<std::size_t>(std::floor(delta / side)) + 1;
  k = std::min(k, cells);
  while (k < cells && side * static_cast<double>(k) <= delta) ++k;
  while (k > 1 && side * static_cast<double>(k - 1) > delta) --k;
  return k;
}

void check_delta(double delta) {
  if (!(delta >= 0.0)) throw Error(ErrorCode::InvalidParams, "tube width must be >= 0");
}

}  // namespace

ComponentLabeling tau_components(const CellSet& set, double tau) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidTau, "tau must be positive");
  return label(set, tau, false);
}

ComponentLabeling connected_components(const CellSet& set) {
  if (!set.partition_ptr()) return {};
  // Touching cells are at distance 0; any positive tau below the smallest
  // side separates everything else.
  const auto& sides = set.partition().sides();
  return label(set, *std::min_element(sides.begin(), sides.end()), false);
}

double tau_star(const CellSet& set) {
  if (set.empty()) throw Error(ErrorCode::EmptySet, "tau_star of an empty set");
  const auto base = connected_components(set);
  if (base.count() <= 1) return std::numeric_limits<double>::infinity();

  // Inter-cell distances are multiples of the axis sides; find the smallest
  // candidate at which inclusive linking merges two components.
  const PartitionSpec& p = set.partition();
  std::vector<double> candidates;
  for (std::size_t a = 0; a < p.dim(); ++a) {
    for (std::size_t k = 2; k < p.cells_per_axis(); ++k) candidates.push_back(axis_gap(p.side(a), k));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (label(set, candidates[mid], true).count() < base.count()) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

CellSet dilate(const CellSet& set, double delta) {
  check_delta(delta);
  const PartitionSpec& p = set.partition();
  const std::size_t m = p.cells_per_axis();
  const std::size_t total = p.cell_count();
  std::vector<std::uint8_t> cur = set.mask();
  std::vector<std::uint8_t> next(total, 0);

  for (std::size_t a = 0; a < p.dim(); ++a) {
    const auto reach = dilation_reach(p.side(a), delta, m);
    const std::size_t stride = p.stride(a);
    const std::size_t block = stride * m;
    const auto lines = static_cast<std::ptrdiff_t>(total / m);
#pragma omp parallel for schedule(static) if (total > 65536)
    for (std::ptrdiff_t line = 0; line < lines; ++line) {
      const auto l = static_cast<std::size_t>(line);
      const std::size_t base = (l / stride) * block + (l % stride);
      // Sliding window count of members within reach.
      std::size_t window = 0;
      for (std::size_t i = 0; i < std::min(reach, m); ++i) window += cur[base + i * stride];
      for (std::size_t i = 0; i < m; ++i) {
        if (i + reach < m) window += cur[base + (i + reach) * stride];
        if (i >= reach + 1) window -= cur[base + (i - reach - 1) * stride];
        next[base + i * stride] = window > 0;
      }
    }
    std::swap(cur, next);
  }
  return CellSet::from_mask(set.partition_ptr(), cur);
}

CellSet erode(const CellSet& set, double delta) {
  return dilate(set.complement(), delta).complement();
}

CellSet dilate_serial(const CellSet& set, double delta) {
  check_delta(delta);
  const PartitionSpec& p = set.partition();
  const auto members = set.members();
  CellSet out(set.partition_ptr());
  for (std::size_t j = 0; j < p.cell_count(); ++j) {
    for (auto i : members) {
      if (cell_distance(p, i, j) <= delta) {
        out.insert(j);
        break;
      }
    }
  }
  return out;
}

CellSet erode_serial(const CellSet& set, double delta) {
  return dilate_serial(set.complement(), delta).complement();
}

CrmResult compare_partitions(std::span<const CellSet> src, std::span<const CellSet> dst) {
  CrmResult out;
  if (dst.empty() && !src.empty()) throw Error(ErrorCode::NotNested, "source is not covered by an empty target");
  const CellSet* ref = !dst.empty() ? &dst.front() : nullptr;
  std::vector<std::size_t> owner;
  if (ref != nullptr) owner.assign(ref->universe(), kNone);
  for (std::size_t t = 0; t < dst.size(); ++t) {
    if (!dst[t].same_partition(*ref)) throw Error(ErrorCode::PartitionMismatch, "target sets differ in partition");
    dst[t].for_each([&](std::size_t id) {
      if (owner[id] != kNone) throw Error(ErrorCode::InvalidParams, "target components overlap");
      owner[id] = t;
    });
  }

  std::vector<std::uint8_t> src_seen(ref != nullptr ? ref->universe() : 0, 0);
  out.comparable = true;
  out.map.assign(src.size(), kNone);
  for (std::size_t s = 0; s < src.size(); ++s) {
    if (!src[s].same_partition(*ref)) throw Error(ErrorCode::PartitionMismatch, "source and target partitions differ");
    if (src[s].empty()) throw Error(ErrorCode::InvalidParams, "empty source component");
    std::size_t target = kNone;
    bool single = true;
    src[s].for_each([&](std::size_t id) {
      if (src_seen[id] != 0) throw Error(ErrorCode::InvalidParams, "source components overlap");
      src_seen[id] = 1;
      if (owner[id] == kNone) throw Error(ErrorCode::NotNested, "source cell outside every target component");
      if (target == kNone) {
        target = owner[id];
      } else if (owner[id] != target) {
        single = false;
      }
    });
    if (single) {
      out.map[s] = target;
    } else {
      out.comparable = false;
    }
  }
  if (!out.comparable) {
    out.map.clear();
    return out;
  }
  std::vector<std::size_t> hits(dst.size(), 0);
  for (auto t : out.map) ++hits[t];
  out.injective = std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h <= 1; });
  out.surjective = std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h >= 1; });
  out.bijective = out.injective && out.surjective;
  return out;
}

}  // namespace adaclust
