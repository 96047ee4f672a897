#include "adaclust/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "adaclust/error.hpp"

namespace adaclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1/(e+1) with 1/(inf+1) := 0.
double inv_plus_one(double e) { return std::isinf(e) ? 0.0 : 1.0 / (e + 1.0); }

// Mass of the density on [0, t], t in [0, 3].
double half_mass(const ThetaBetaSpec& s, double t) {
  t = std::clamp(t, 0.0, 3.0);
  const double valley = std::isinf(s.theta) ? 0.0 : s.c / (s.theta + 1.0);
  if (t <= 1.0) {
    const double rise = std::isinf(s.theta) ? 0.0 : s.c * std::pow(t, s.theta + 1.0) / (s.theta + 1.0);
    return s.rho_star * t + rise;
  }
  const double g1 = s.rho_star + valley;
  if (t <= 2.0) return g1 + (s.rho_star + s.c) * (t - 1.0);
  const double g2 = g1 + s.rho_star + s.c;
  const double fall = std::isinf(s.beta)
                          ? 0.0
                          : s.c * (1.0 - std::pow(3.0 - t, s.beta + 1.0)) / (s.beta + 1.0);
  return g2 + s.rho_star * (t - 2.0) + fall;
}

// Inverse of half_mass by bisection inside the piece holding the target.
double invert_half_mass(const ThetaBetaSpec& s, double target) {
  double lo = 0.0;
  double hi = 3.0;
  for (double edge : {1.0, 2.0}) {
    if (target > half_mass(s, edge)) {
      lo = edge;
    } else {
      hi = edge;
      break;
    }
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (half_mass(s, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double draw(const ThetaBetaSpec& s, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  if (u < 0.5) return -invert_half_mass(s, 0.5 - u);
  return invert_half_mass(s, u - 0.5);
}

Box interval_box(double lo, double hi) { return Box{Interval{lo, hi}}; }

double overlap_volume(const Box& a, const Box& b) {
  double v = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double len = std::min(a[k].hi, b[k].hi) - std::max(a[k].lo, b[k].lo);
    if (len <= 0.0) return 0.0;
    v *= len;
  }
  return v;
}

bool closed_meet(const Box& a, const Box& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].lo > b[k].hi || b[k].lo > a[k].hi) return false;
  }
  return true;
}

double region_overlap(const Box& cell, const Region& region) {
  double v = 0.0;
  for (const auto& b : region) v += overlap_volume(cell, b);
  return v;
}

Region strip_of(const Region& base) {
  Region out;
  for (const auto& b : base) out.push_back(Box{b[0], Interval{-1.0, 1.0}});
  return out;
}

double flat_measure_1d(const ThetaBetaSpec& s, double level) {
  if (!(level > 0.0)) return 0.0;
  const double r = level / s.c;
  double m = 0.0;
  if (!std::isinf(s.theta)) m += 2.0 * std::min(1.0, std::pow(r, 1.0 / s.theta));
  if (!std::isinf(s.beta)) m += 2.0 * std::min(1.0, std::pow(r, 1.0 / s.beta));
  if (level > s.c) m += 2.0;
  return m;
}

}  // namespace

double region_volume(const Region& region) {
  double v = 0.0;
  for (const auto& b : region) v += box_volume(b);
  return v;
}

double normalize(double theta, double beta, double rho_star) {
  if (!(rho_star >= 0.0) || !(rho_star < 1.0 / 6.0)) {
    throw Error(ErrorCode::InvalidLevel, "rho* must lie in [0, 1/6)");
  }
  if (!(theta > 0.0) || !(beta > 0.0)) throw Error(ErrorCode::InvalidParams, "theta and beta must be positive");
  return (1.0 - 6.0 * rho_star) / (2.0 * inv_plus_one(theta) + 2.0 + 2.0 * inv_plus_one(beta));
}

ThetaBetaSpec make_theta_beta(double theta, double beta, double rho_star) {
  return {theta, beta, rho_star, normalize(theta, beta, rho_star)};
}

Box sampling_box(std::size_t dim) {
  if (dim == 1) return interval_box(-3.0, 3.0);
  if (dim == 2) return Box{Interval{-3.0, 3.0}, Interval{-1.0, 1.0}};
  throw Error(ErrorCode::InvalidParams, "synthetic distributions exist for dim 1 and 2");
}

double density(const ThetaBetaSpec& s, double x) {
  const double t = std::abs(x);
  if (t > 3.0) return 0.0;
  double shape = 0.0;
  if (t <= 1.0) {
    shape = std::isinf(s.theta) ? (t == 1.0 ? 1.0 : 0.0) : std::pow(t, s.theta);
  } else if (t <= 2.0) {
    shape = 1.0;
  } else {
    shape = std::isinf(s.beta) ? 0.0 : std::pow(3.0 - t, s.beta);
  }
  return s.rho_star + s.c * shape;
}

double density2d(const Strip2DSpec& s, double x, double y) {
  if (std::abs(y) > 1.0) return 0.0;
  return 0.5 * density(s.base, x);
}

double cdf(const ThetaBetaSpec& s, double x) {
  if (x <= -3.0) return 0.0;
  if (x >= 3.0) return 1.0;
  return x < 0.0 ? 0.5 - half_mass(s, -x) : 0.5 + half_mass(s, x);
}

Dataset sample(const ThetaBetaSpec& spec, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = draw(spec, rng);
  return Dataset(1, std::move(xs));
}

Dataset sample(const Strip2DSpec& spec, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> xy(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    xy[2 * i] = draw(spec.base, rng);
    xy[2 * i + 1] = 2.0 * uniform01(rng) - 1.0;
  }
  return Dataset(2, std::move(xy));
}

Region level_set_truth(const ThetaBetaSpec& s, double rho) {
  if (rho > s.rho_star_star()) throw Error(ErrorCode::AboveTop, "level above rho**");
  if (rho <= s.rho_star) return {interval_box(-3.0, 3.0)};
  const double r = (rho - s.rho_star) / s.c;
  const double x1 = std::isinf(s.theta) ? 1.0 : std::pow(r, 1.0 / s.theta);
  const double x2 = std::isinf(s.beta) ? 2.0 : 3.0 - std::pow(r, 1.0 / s.beta);
  return {interval_box(-x2, -x1), interval_box(x1, x2)};
}

Region level_set_truth(const Strip2DSpec& s, double rho) {
  return strip_of(level_set_truth(s.base, 2.0 * rho));
}

double tau_star_truth(const ThetaBetaSpec& s, double eps) {
  if (!(eps > 0.0) || eps > s.c) throw Error(ErrorCode::InvalidEps, "eps must lie in (0, rho**-rho*]");
  if (std::isinf(s.theta)) return 2.0 / 3.0;
  return 2.0 / 3.0 * std::pow(eps / s.c, 1.0 / s.theta);
}

double tau_star_truth(const Strip2DSpec& s, double eps) {
  if (!(eps > 0.0) || eps > 0.5 * s.base.c) throw Error(ErrorCode::InvalidEps, "eps must lie in (0, rho**-rho*]");
  return tau_star_truth(s.base, 2.0 * eps);
}

double epsilon_star_truth(const ThetaBetaSpec& s, double eps, double tau) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidTau, "tau must be positive");
  if (tau > 2.0 / 3.0) throw Error(ErrorCode::NoFeasibleEps, "tau exceeds tau*(rho**-rho*)");
  if (std::isinf(s.theta)) return eps;
  const double needed = s.c * std::pow(1.5 * tau, s.theta);
  if (needed > s.c) throw Error(ErrorCode::NoFeasibleEps, "tau exceeds tau*(rho**-rho*)");
  return eps + needed;
}

double epsilon_star_truth(const Strip2DSpec& s, double eps, double tau) {
  return eps + 0.5 * (epsilon_star_truth(s.base, 0.0, tau));
}

double GroundTruth::psi(double delta) const { return 3.0 * c_thick * std::pow(delta, gamma); }

GroundTruth ground_truth(const ThetaBetaSpec& s) {
  GroundTruth g;
  g.dim = 1;
  g.rho_star = s.rho_star;
  g.rho_star_star = s.rho_star_star();
  const double inner = std::isinf(s.theta) ? 1.0 : 0.0;
  const double outer = std::isinf(s.beta) ? 2.0 : 3.0;
  g.clusters = {Region{interval_box(-outer, -inner)}, Region{interval_box(inner, outer)}};
  g.kappa = s.theta;
  g.gamma = 1.0;
  g.alpha = 1.0;
  g.vartheta = kInf;
  if (!std::isinf(s.theta)) g.vartheta = std::min(g.vartheta, 1.0 / s.theta);
  if (!std::isinf(s.beta)) g.vartheta = std::min(g.vartheta, 1.0 / s.beta);
  g.c_sep_lower = std::isinf(s.theta) ? 2.0 / 3.0 : 2.0 / 3.0 * std::pow(s.c, -1.0 / s.theta);
  g.c_sep_upper = g.c_sep_lower;
  // mu{0 < h - rho* < s} <= 4 (s/c)^vartheta for s <= c and equals the total
  // mass of {h > rho*} beyond c.
  const double top = flat_measure_1d(s, kInf);
  g.c_flat = std::isinf(g.vartheta) ? 1.0 / s.c : std::pow(std::max(4.0, top), 1.0 / g.vartheta) / s.c;
  g.c_bound = 4.0;
  g.c_thick = 1.0;
  g.delta_thick = 0.5;
  g.h_sup = s.rho_star_star();
  g.tau_star_fn = [s](double eps) { return tau_star_truth(s, eps); };
  g.flat_measure = [s](double level) { return flat_measure_1d(s, level); };
  return g;
}

GroundTruth ground_truth(const Strip2DSpec& s) {
  GroundTruth g = ground_truth(s.base);
  g.dim = 2;
  g.rho_star *= 0.5;
  g.rho_star_star *= 0.5;
  g.clusters = {strip_of(g.clusters[0]), strip_of(g.clusters[1])};
  // tau*(eps) = base tau*(2 eps): the separation constants pick up 2^(1/kappa).
  if (!std::isinf(s.base.theta)) {
    g.c_sep_lower *= std::pow(2.0, 1.0 / s.base.theta);
    g.c_sep_upper = g.c_sep_lower;
  }
  g.c_flat = std::isinf(g.vartheta) ? 2.0 * g.c_flat : std::pow(2.0, 1.0 + 1.0 / g.vartheta) * g.c_flat;
  g.c_bound = 8.0;
  g.h_sup *= 0.5;
  g.tau_star_fn = [s](double eps) { return tau_star_truth(s, eps); };
  g.flat_measure = [b = s.base](double level) { return 2.0 * flat_measure_1d(b, 2.0 * level); };
  return g;
}

CellSet cells_inside(PartitionPtr partition, const Region& region) {
  CellSet out(partition);
  const double vol = cell_measure(*partition);
  for (std::size_t id = 0; id < partition->cell_count(); ++id) {
    if (region_overlap(partition->cell_box(id), region) >= vol * (1.0 - 1e-12)) out.insert(id);
  }
  return out;
}

CellSet cells_touching(PartitionPtr partition, const Region& region) {
  CellSet out(partition);
  for (std::size_t id = 0; id < partition->cell_count(); ++id) {
    const Box cell = partition->cell_box(id);
    for (const auto& b : region) {
      if (closed_meet(cell, b)) {
        out.insert(id);
        break;
      }
    }
  }
  return out;
}

double sym_diff_measure(const CellSet& estimate, const Region& truth) {
  const PartitionSpec& p = estimate.partition();
  double truth_vol = 0.0;
  for (const auto& b : truth) truth_vol += overlap_volume(b, p.box());
  double shared = 0.0;
  estimate.for_each([&](std::size_t id) { shared += region_overlap(p.cell_box(id), truth); });
  const double est_vol = static_cast<double>(estimate.size()) * cell_measure(p);
  return std::max(0.0, est_vol + truth_vol - 2.0 * shared);
}

ClusterMatch match_clusters(const std::vector<CellSet>& estimates, const std::array<Region, 2>& truths) {
  ClusterMatch out;
  std::vector<std::size_t> order(estimates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return estimates[a].size() > estimates[b].size(); });
  double extra = 0.0;
  if (order.size() > 2) {
    out.extra_charged = true;
    for (std::size_t k = 2; k < order.size(); ++k) {
      const auto& e = estimates[order[k]];
      extra += static_cast<double>(e.size()) * cell_measure(e.partition());
    }
    order.resize(2);
    std::sort(order.begin(), order.end());
  }
  const std::array<double, 2> empty_cost{region_volume(truths[0]), region_volume(truths[1])};

  auto cost = [&](std::optional<std::size_t> e, std::size_t t) {
    return e ? sym_diff_measure(estimates[*e], truths[t]) : empty_cost[t];
  };
  using Pair = std::array<std::optional<std::size_t>, 2>;
  std::vector<Pair> candidates;
  if (order.empty()) {
    candidates.push_back({std::nullopt, std::nullopt});
  } else if (order.size() == 1) {
    candidates.push_back({order[0], std::nullopt});
    candidates.push_back({std::nullopt, order[0]});
  } else {
    candidates.push_back({order[0], order[1]});
    candidates.push_back({order[1], order[0]});
  }
  double best = kInf;
  for (const auto& c : candidates) {
    const std::array<double, 2> per{cost(c[0], 0), cost(c[1], 1)};
    if (per[0] + per[1] < best) {
      best = per[0] + per[1];
      out.assignment = c;
      out.per_truth = per;
    }
  }
  out.total = best + extra;
  return out;
}

ExpectedExponents expected_exponents(const GroundTruth& truth, std::size_t d) {
  ExpectedExponents out;
  const double dd = static_cast<double>(d);
  const double gk = truth.gamma * truth.kappa;
  if (std::isinf(truth.kappa)) {
    out.rho_log_rate = true;
  } else {
    out.rho_rate = gk / (2.0 * gk + dd);
  }
  if (std::isinf(truth.vartheta)) {
    out.cluster_log_rate = true;
    return out;
  }
  const double varrho = std::min(truth.alpha, truth.vartheta * gk);
  out.varrho = varrho;
  out.cluster_rate = truth.vartheta * varrho / (2.0 * varrho + truth.vartheta * dd);
  return out;
}

}  // namespace adaclust
