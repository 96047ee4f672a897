#include "adaclust/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <sstream>

#include "adaclust/connectivity.hpp"
#include "adaclust/histogram.hpp"
#include "adaclust/synthetic.hpp"

namespace adaclust {

namespace {

CellSet random_set(PartitionPtr p, double fill, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(fill);
  CellSet s(p);
  for (std::size_t id = 0; id < p->cell_count(); ++id) {
    if (coin(rng)) s.insert(id);
  }
  return s;
}

PartitionPtr random_partition(std::mt19937_64& rng, std::size_t d, std::size_t max_cells) {
  Box box;
  std::uniform_real_distribution<double> width(0.5, 3.0);
  for (std::size_t a = 0; a < d; ++a) box.push_back({0.0, width(rng)});
  const auto per_axis = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(max_cells), 1.0 / static_cast<double>(d))));
  std::uniform_int_distribution<std::size_t> cells(2, std::max<std::size_t>(per_axis, 2));
  return build_partition(box, 1.0 / static_cast<double>(cells(rng)));
}

// Labels by breadth-first search over the pairwise distance graph.
std::vector<std::vector<std::size_t>> bfs_components(const CellSet& set, double tau) {
  const auto members = set.members();
  std::vector<int> seen(members.size(), 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < members.size(); ++s) {
    if (seen[s] != 0) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const std::size_t i = q.front();
      q.pop();
      comp.push_back(members[i]);
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (seen[j] == 0 && cell_distance(set.partition(), members[i], members[j]) < tau) {
          seen[j] = 1;
          q.push(j);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

CheckResult check_components(std::mt19937_64& rng) {
  CheckResult r{"component oracle", true, ""};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 60 && r.passed; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 3);
    const auto p = random_partition(rng, d, 400);
    const CellSet s = random_set(p, 0.1 + 0.5 * unit(rng), rng);
    const double tau = p->side(0) * (0.05 + 4.0 * unit(rng));
    const auto got = tau_components(s, tau);
    const auto want = bfs_components(s, tau);
    if (got.count() != want.size()) {
      r.passed = false;
    } else {
      for (std::size_t k = 0; k < want.size(); ++k) {
        if (got.components[k].members() != want[k]) r.passed = false;
      }
    }
    if (!r.passed) r.detail = "mismatch in trial " + std::to_string(trial);
  }
  return r;
}

CheckResult check_tubes(std::mt19937_64& rng) {
  CheckResult r{"tube laws", true, ""};
  for (int trial = 0; trial < 60 && r.passed; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 2);
    const auto p = random_partition(rng, d, 900);
    const CellSet a = random_set(p, 0.3, rng);
    const CellSet b = random_set(p, 0.2, rng);
    const double h = p->side(0);
    for (int k = 1; k <= 3 && r.passed; ++k) {
      const double delta = k * h;
      const bool ok = a.is_subset_of(erode(dilate(a, delta), delta)) && dilate(erode(a, delta), delta).is_subset_of(a) &&
                      dilate(a.united(b), delta) == dilate(a, delta).united(dilate(b, delta)) &&
                      dilate(a, delta) == dilate_serial(a, delta) && erode(a, delta) == erode_serial(a, delta);
      if (!ok) {
        r.passed = false;
        r.detail = "law failed in trial " + std::to_string(trial) + " radius " + std::to_string(k);
      }
    }
  }
  return r;
}

CheckResult check_histograms(std::mt19937_64& rng) {
  CheckResult r{"histogram normalization and antitonicity", true, ""};
  const ThetaBetaSpec spec = make_theta_beta(2.0, 1.0, 0.1);
  for (int trial = 0; trial < 10 && r.passed; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 2);
    const Dataset data = d == 1 ? sample(spec, 2000, rng()) : sample(Strip2DSpec{spec}, 2000, rng());
    const auto p = build_partition(sampling_box(d), 0.02 + 0.2 * static_cast<double>(trial) / 10.0);
    const EmpiricalHistogram h = fit(data, p);
    double mass = 0.0;
    for (double v : h.values) mass += v * cell_measure(*p);
    if (std::abs(mass - 1.0) > 1e-9) {
      r.passed = false;
      r.detail = "mass " + std::to_string(mass);
      break;
    }
    if (h.counts != fit_serial(data, p).counts) {
      r.passed = false;
      r.detail = "parallel and serial counts differ";
      break;
    }
    CellSet prev = level_set(h, 0.0);
    for (int k = 1; k <= 100; ++k) {
      const CellSet next = level_set(h, h.max_value() * k / 100.0);
      if (!next.is_subset_of(prev)) {
        r.passed = false;
        r.detail = "level sets not nested";
        break;
      }
      prev = next;
    }
  }
  return r;
}

CheckResult check_density() {
  CheckResult r{"density normalization", true, ""};
  const double inf = std::numeric_limits<double>::infinity();
  for (double theta : {0.5, 1.0, 2.0, 3.0, inf}) {
    for (double beta : {0.5, 1.0, 2.0, inf}) {
      const ThetaBetaSpec s = make_theta_beta(theta, beta, 0.05);
      // Composite Simpson on each smooth piece.
      double total = 0.0;
      const int steps = 2000;
      for (int piece = -3; piece < 3; ++piece) {
        const double lo = piece;
        const double h = 1.0 / steps;
        double acc = density(s, lo + 1e-15) + density(s, lo + 1.0 - 1e-15);
        for (int i = 1; i < steps; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * density(s, lo + i * h);
        total += acc * h / 3.0;
      }
      if (std::abs(total - 1.0) > 1e-4 || std::abs(cdf(s, 3.0) - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "theta " << theta << " beta " << beta << " integral " << total;
        r.passed = false;
        r.detail = os.str();
      }
    }
  }
  return r;
}

CheckResult check_truth_nesting() {
  CheckResult r{"analytic level sets nested", true, ""};
  for (double theta : {0.5, 2.0, 3.0}) {
    const ThetaBetaSpec s = make_theta_beta(theta, 1.0, 0.1);
    Region prev = level_set_truth(s, 0.0);
    for (int k = 1; k <= 50; ++k) {
      const Region next = level_set_truth(s, s.rho_star_star() * k / 50.0);
      auto covered = [&](const Box& b) {
        for (const auto& q : prev) {
          if (q[0].lo <= b[0].lo && b[0].hi <= q[0].hi) return true;
        }
        return false;
      };
      for (const auto& b : next) {
        if (!covered(b)) r.passed = false;
      }
      prev = next;
    }
    if (!r.passed) r.detail = "theta " + std::to_string(theta);
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_selfcheck(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;
  auto guarded = [&](auto&& fn, const char* name) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };
  guarded([&] { return check_components(rng); }, "component oracle");
  guarded([&] { return check_tubes(rng); }, "tube laws");
  guarded([&] { return check_histograms(rng); }, "histogram normalization and antitonicity");
  guarded([] { return check_density(); }, "density normalization");
  guarded([] { return check_truth_nesting(); }, "analytic level sets nested");
  return out;
}

}  // namespace adaclust
