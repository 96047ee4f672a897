#pragma once

// Independent reference computations used by the tests. None of these call
// into the library's kernels beyond basic accessors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <random>
#include <vector>

#include "adaclust/cell_set.hpp"
#include "adaclust/grid_partition.hpp"

namespace oracle {

using adaclust::CellSet;
using adaclust::PartitionPtr;
using adaclust::PartitionSpec;

inline std::vector<std::size_t> coords(const PartitionSpec& p, std::size_t id) {
  std::vector<std::size_t> c(p.dim());
  for (std::size_t a = p.dim(); a-- > 0;) {
    c[a] = id % p.cells_per_axis();
    id /= p.cells_per_axis();
  }
  return c;
}

// Inf distance between closed cells from their index tuples.
inline double distance(const PartitionSpec& p, std::size_t i, std::size_t j) {
  const auto ci = coords(p, i);
  const auto cj = coords(p, j);
  double best = 0.0;
  for (std::size_t a = 0; a < p.dim(); ++a) {
    const std::size_t diff = ci[a] > cj[a] ? ci[a] - cj[a] : cj[a] - ci[a];
    const double gap = diff <= 1 ? 0.0 : p.side(a) * static_cast<double>(diff - 1);
    best = std::max(best, gap);
  }
  return best;
}

// Components of the graph linking members at distance < tau, each sorted,
// ordered by smallest member.
inline std::vector<std::vector<std::size_t>> bfs_components(const CellSet& set, double tau) {
  std::vector<std::size_t> members;
  for (std::size_t id = 0; id < set.universe(); ++id) {
    if (set.contains(id)) members.push_back(id);
  }
  std::vector<bool> seen(members.size(), false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < members.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      const auto i = q.front();
      q.pop();
      comp.push_back(members[i]);
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (!seen[j] && distance(set.partition(), members[i], members[j]) < tau) {
          seen[j] = true;
          q.push(j);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

// Cells within distance <= delta of some member.
inline std::vector<bool> dilate(const CellSet& set, double delta) {
  const auto& p = set.partition();
  std::vector<bool> out(p.cell_count(), false);
  for (std::size_t j = 0; j < p.cell_count(); ++j) {
    for (std::size_t i = 0; i < p.cell_count() && !out[j]; ++i) {
      if (set.contains(i) && distance(p, i, j) <= delta) out[j] = true;
    }
  }
  return out;
}

inline std::vector<bool> erode(const CellSet& set, double delta) {
  const auto& p = set.partition();
  std::vector<bool> out(p.cell_count(), true);
  for (std::size_t j = 0; j < p.cell_count(); ++j) {
    for (std::size_t i = 0; i < p.cell_count() && out[j]; ++i) {
      if (!set.contains(i) && distance(p, i, j) <= delta) out[j] = false;
    }
  }
  return out;
}

inline std::vector<bool> as_mask(const CellSet& set) {
  std::vector<bool> out(set.universe());
  for (std::size_t i = 0; i < set.universe(); ++i) out[i] = set.contains(i);
  return out;
}

inline CellSet random_set(const PartitionPtr& p, double fill, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(fill);
  CellSet s(p);
  for (std::size_t id = 0; id < p->cell_count(); ++id) {
    if (coin(rng)) s.insert(id);
  }
  return s;
}

// Straight-line transcriptions of the three eps formulas.
inline double eps_general(double vs, double delta, double n, double cp, double d) {
  const double e = vs + std::log(2.0 * cp) - d * std::log(delta);
  return cp * std::sqrt(e / (2.0 * std::pow(delta, 2.0 * d) * n));
}

inline double eps_bounded(double vs, double delta, double n, double cp, double d, double hs) {
  const double e = vs + std::log(2.0 * cp) - d * std::log(delta);
  const double vol = std::pow(delta, d) * n;
  return std::sqrt(2.0 * cp * (1.0 + hs) * e / vol) + 2.0 * cp * e / (3.0 * vol);
}

inline double eps_adaptive(double C, double vs, double delta, double n, double cp, double d, double grid) {
  const double e = vs + std::log(2.0 * cp * grid) - d * std::log(delta);
  const double vol = std::pow(delta, d) * n;
  return C * std::sqrt(cp * e * std::log(std::log(n)) / vol) + 2.0 * cp * e / (3.0 * vol);
}

// Tanh-sinh quadrature on [a, b]; copes with integrable endpoint
// singularities such as |x|^theta for small theta.
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  const double h = 1.0 / 64.0;
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int k = -400; k <= 400; ++k) {
    const double t = k * h;
    const double u = 0.5 * M_PI * std::sinh(t);
    const double x = std::tanh(u);
    const double w = 0.5 * M_PI * std::cosh(t) / (std::cosh(u) * std::cosh(u));
    if (w < 1e-300) continue;
    // Distance to the nearer endpoint, computed without cancellation.
    const double edge = std::exp(-std::abs(u)) / std::cosh(u);
    const double xx = x >= 0.0 ? b - half * edge : a + half * edge;
    if (xx <= a || xx >= b) continue;
    sum += w * f(xx);
  }
  return sum * h * half;
}

}  // namespace oracle
