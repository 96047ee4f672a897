#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "adaclust/cell_set.hpp"
#include "adaclust/error.hpp"
#include "adaclust/histogram.hpp"

namespace adaclust {

// A decreasing family rho -> L_rho of cell sets. Any level-set estimator can
// be plugged in; the histogram plug-in is histogram_family().
using LevelFamily = std::function<CellSet(double)>;

LevelFamily histogram_family(EmpiricalHistogram hist);

struct ScanParams {
  double eps = 0.0;
  double tau = 0.0;
  // Safety ceiling for the scanned level.
  double rho_max = 0.0;

  void validate() const;
};

// rho_max defaults to the largest histogram value plus 3 eps.
ScanParams default_scan_params(const EmpiricalHistogram& hist, double eps, double tau);

enum class ScanStatus {
  TwoClusters,
  NoSurvivor,
  // The loop stopped on a split but only one component survived the final
  // re-identification two steps higher.
  SingleCluster,
  MultiSplit,
};

std::string_view to_string(ScanStatus status);

struct ScanLevel {
  double rho = 0.0;
  std::size_t components = 0;  // tau-components of L_rho
  std::size_t survivors = 0;   // those meeting L_{rho + 2 eps}
};

struct ClusterOutput {
  double rho_star_hat = 0.0;
  std::vector<CellSet> components;
  ScanStatus status = ScanStatus::NoSurvivor;
  // Number of surviving components at the returned level (M).
  std::size_t survivor_count = 0;
  std::vector<ScanLevel> trace;
};

class ScanExhausted : public Error {
 public:
  ScanExhausted(const std::string& what, std::vector<ScanLevel> trace)
      : Error(ErrorCode::ScanExhausted, what), trace_(std::move(trace)) {}
  const std::vector<ScanLevel>& trace() const { return trace_; }

 private:
  std::vector<ScanLevel> trace_;
};

// tau-connected components of family(rho) that meet family(rho + 2 eps),
// ordered by smallest member id.
std::vector<CellSet> surviving_components(const LevelFamily& family, double rho, double eps, double tau);

// Level scan: starting at rho = 0, step by eps while exactly one component
// survives; on exit move up 2 eps, re-identify the survivors and return them
// together with the level. Levels are evaluated as integer multiples of eps.
// Throws ScanExhausted when rho passes rho_max inside the loop and
// InvalidFamily when the family is found not to be decreasing.
ClusterOutput run_scan(const LevelFamily& family, const ScanParams& params);

}  // namespace adaclust
