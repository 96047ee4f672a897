#include "adaclust/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

namespace adaclust {

void AdaptiveParams::validate() const {
  if (!(C >= 1.0)) throw Error(ErrorCode::InvalidParams, "C must be >= 1");
  if (!(gamma > 0.0) || gamma > 1.0) throw Error(ErrorCode::InvalidParams, "gamma must lie in (0,1]");
  if (varsigma && !(*varsigma >= 1.0)) throw Error(ErrorCode::InvalidParams, "varsigma must be >= 1");
  if (grid_override) {
    if (grid_override->empty()) throw Error(ErrorCode::InvalidParams, "empty width grid");
    for (double d : *grid_override) {
      if (!(d > 0.0) || d > 1.0) throw Error(ErrorCode::InvalidWidth, "grid width outside (0,1]");
    }
  }
}

std::pair<double, double> candidate_interval(std::size_t n, std::size_t d) {
  if (n < 16) throw Error(ErrorCode::SampleTooSmall, "candidate grid needs n >= 16");
  if (d == 0) throw Error(ErrorCode::InvalidDomain, "dimension must be positive");
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  const double lnln = std::log(ln);
  const double inv_d = 1.0 / static_cast<double>(d);
  return {std::pow(ln * lnln * lnln / nn, inv_d), std::pow(1.0 / lnln, inv_d)};
}

std::vector<double> candidate_grid(std::size_t n, std::size_t d) {
  const auto [lo, hi] = candidate_interval(n, d);
  if (lo > hi) throw Error(ErrorCode::DegenerateInterval, "candidate interval is empty");
  if (lo == hi) return {lo};
  const double step = std::pow(static_cast<double>(n), -1.0 / static_cast<double>(d));
  auto gaps = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  gaps = std::clamp<std::size_t>(gaps, 1, n - 1);
  std::vector<double> out(gaps + 1);
  for (std::size_t i = 0; i <= gaps; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(gaps);
  }
  out.back() = hi;
  return out;
}

double tau_for(double delta, std::size_t n, double gamma) {
  if (n <= 15) throw Error(ErrorCode::SampleTooSmall, "ln ln ln n needs n >= 16");
  return std::pow(delta, gamma) * std::log(std::log(std::log(static_cast<double>(n))));
}

AdaptiveOutput select(const Dataset& data, const Box& box, const AdaptiveParams& params) {
  params.validate();
  const std::size_t n = data.size();
  const std::size_t d = box.size();
  if (n < 16) throw Error(ErrorCode::SampleTooSmall, "adaptive selection needs n >= 16");
  if (data.dim() != d) throw Error(ErrorCode::InvalidDomain, "dataset and box dimensions differ");

  const std::vector<double> grid = params.grid_override ? *params.grid_override : candidate_grid(n, d);
  const double varsigma = params.varsigma.value_or(std::log(static_cast<double>(n)));
  const double c_P = partition_constant(d);

  // Widths sharing cells_per_axis share a histogram.
  std::vector<PartitionPtr> parts(grid.size());
  std::map<std::size_t, std::size_t> first_of;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    parts[i] = build_partition(box, grid[i]);
    first_of.emplace(parts[i]->cells_per_axis(), i);
  }
  std::vector<std::size_t> distinct;
  for (const auto& [cpa, idx] : first_of) distinct.push_back(idx);

  std::vector<double> sorted;
  if (d == 1) {
    sorted = data.coords();
    std::sort(sorted.begin(), sorted.end());
  }
  std::vector<std::shared_ptr<const EmpiricalHistogram>> hists(distinct.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(distinct.size()); ++j) {
    const auto& p = parts[distinct[static_cast<std::size_t>(j)]];
    hists[static_cast<std::size_t>(j)] = std::make_shared<const EmpiricalHistogram>(
        d == 1 ? fit_sorted_1d(sorted, p) : fit_serial(data, p));
  }
  std::map<std::size_t, std::shared_ptr<const EmpiricalHistogram>> by_cpa;
  for (std::size_t j = 0; j < distinct.size(); ++j) by_cpa[parts[distinct[j]]->cells_per_axis()] = hists[j];

  AdaptiveOutput out;
  out.per_delta.resize(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(grid.size()); ++si) {
    const auto i = static_cast<std::size_t>(si);
    DeltaRun& run = out.per_delta[i];
    run.delta = grid[i];
    try {
      const auto& hist = by_cpa.at(parts[i]->cells_per_axis());
      run.eps = eps_adaptive(params.C, varsigma, grid[i], n, c_P, d, grid.size());
      run.tau = tau_for(parts[i]->domain_width(), n, params.gamma);
      LevelFamily family = [hist](double rho) { return level_set(*hist, rho); };
      run.output = run_scan(family, default_scan_params(*hist, run.eps, run.tau));
    } catch (const std::exception& e) {
      run.error = e.what();
    }
  }

  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < out.per_delta.size(); ++i) {
    const DeltaRun& r = out.per_delta[i];
    if (!r.succeeded()) continue;
    if (!best) {
      best = i;
      continue;
    }
    const DeltaRun& b = out.per_delta[*best];
    if (r.output.rho_star_hat < b.output.rho_star_hat ||
        (r.output.rho_star_hat == b.output.rho_star_hat && r.delta < b.delta)) {
      best = i;
    }
  }
  if (!best) throw AllCandidatesFailed("no candidate width produced two clusters", std::move(out.per_delta));

  const DeltaRun& sel = out.per_delta[*best];
  out.selected_index = *best;
  out.delta_star = sel.delta;
  out.rho_star = sel.output.rho_star_hat;
  out.eps_sel = sel.eps;
  out.tau_sel = sel.tau;
  out.components = sel.output.components;
  return out;
}

}  // namespace adaclust
