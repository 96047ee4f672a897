#include "adaclust/cluster_scan.hpp"

#include <cmath>
#include <map>
#include <memory>

#include "adaclust/connectivity.hpp"

namespace adaclust {

LevelFamily histogram_family(EmpiricalHistogram hist) {
  auto shared = std::make_shared<const EmpiricalHistogram>(std::move(hist));
  return [shared](double rho) { return level_set(*shared, rho); };
}

void ScanParams::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidParams, "eps must be positive");
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidTau, "tau must be positive");
  if (!(rho_max >= eps)) throw Error(ErrorCode::InvalidParams, "rho_max must be >= eps");
}

ScanParams default_scan_params(const EmpiricalHistogram& hist, double eps, double tau) {
  return {eps, tau, hist.max_value() + 3.0 * eps};
}

std::string_view to_string(ScanStatus status) {
  switch (status) {
    case ScanStatus::TwoClusters: return "TwoClusters";
    case ScanStatus::NoSurvivor: return "NoSurvivor";
    case ScanStatus::SingleCluster: return "SingleCluster";
    case ScanStatus::MultiSplit: return "MultiSplit";
  }
  return "Unknown";
}

namespace {

std::vector<CellSet> survivors_of(const CellSet& level, const CellSet& upper, double tau,
                                  std::size_t* component_count) {
  std::vector<CellSet> out;
  if (level.empty()) {
    if (component_count != nullptr) *component_count = 0;
    return out;
  }
  auto labeling = tau_components(level, tau);
  if (component_count != nullptr) *component_count = labeling.count();
  for (auto& comp : labeling.components) {
    if (comp.intersects(upper)) out.push_back(std::move(comp));
  }
  return out;
}

// Caches family evaluations by the integer multiple k of eps and checks the
// decreasing-family contract against neighbouring cached levels.
class LevelCache {
 public:
  LevelCache(const LevelFamily& family, double eps) : family_(family), eps_(eps) {}

  const CellSet& at(long k) {
    auto it = levels_.find(k);
    if (it != levels_.end()) return it->second;
    CellSet s = family_(static_cast<double>(k) * eps_);
    auto below = levels_.lower_bound(k);
    if (below != levels_.begin()) {
      auto lower = std::prev(below);
      if (!s.is_subset_of(lower->second)) throw Error(ErrorCode::InvalidFamily, "level sets are not decreasing");
    }
    if (below != levels_.end() && !below->second.is_subset_of(s)) {
      throw Error(ErrorCode::InvalidFamily, "level sets are not decreasing");
    }
    return levels_.emplace(k, std::move(s)).first->second;
  }

 private:
  const LevelFamily& family_;
  double eps_;
  std::map<long, CellSet> levels_;
};

ScanStatus classify(std::size_t m) {
  if (m == 0) return ScanStatus::NoSurvivor;
  if (m == 1) return ScanStatus::SingleCluster;
  if (m == 2) return ScanStatus::TwoClusters;
  return ScanStatus::MultiSplit;
}

}  // namespace

std::vector<CellSet> surviving_components(const LevelFamily& family, double rho, double eps, double tau) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidTau, "tau must be positive");
  const CellSet level = family(rho);
  const CellSet upper = family(rho + 2.0 * eps);
  if (!upper.is_subset_of(level)) throw Error(ErrorCode::InvalidFamily, "level sets are not decreasing");
  return survivors_of(level, upper, tau, nullptr);
}

ClusterOutput run_scan(const LevelFamily& family, const ScanParams& params) {
  params.validate();
  ClusterOutput out;
  LevelCache cache(family, params.eps);

  long k = 0;
  std::size_t m = 0;
  while (true) {
    const double rho = static_cast<double>(k) * params.eps;
    if (rho > params.rho_max) {
      throw ScanExhausted("level exceeded rho_max before the scan stopped", std::move(out.trace));
    }
    std::size_t total = 0;
    const auto survivors = survivors_of(cache.at(k), cache.at(k + 2), params.tau, &total);
    m = survivors.size();
    out.trace.push_back({rho, total, m});
    ++k;
    if (m != 1) break;
  }
  k += 2;
  std::size_t total = 0;
  out.components = survivors_of(cache.at(k), cache.at(k + 2), params.tau, &total);
  out.rho_star_hat = static_cast<double>(k) * params.eps;
  out.survivor_count = out.components.size();
  out.status = classify(out.survivor_count);
  out.trace.push_back({out.rho_star_hat, total, out.survivor_count});
  return out;
}

}  // namespace adaclust
