#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "adaclust/cluster_scan.hpp"
#include "adaclust/error.hpp"
#include "adaclust/grid_partition.hpp"
#include "adaclust/histogram.hpp"

namespace adaclust {

struct AdaptiveParams {
  double C = 1.0;
  double gamma = 1.0;
  // Defaults to ln n when unset.
  std::optional<double> varsigma;
  // Explicit candidate widths (unit-box units); duplicates are kept.
  std::optional<std::vector<double>> grid_override;

  void validate() const;
};

struct DeltaRun {
  double delta = 0.0;
  double eps = 0.0;
  double tau = 0.0;
  ClusterOutput output;
  // Set when the scan threw; output is then empty.
  std::optional<std::string> error;

  bool succeeded() const { return !error && output.status == ScanStatus::TwoClusters; }
};

struct AdaptiveOutput {
  std::vector<DeltaRun> per_delta;
  std::size_t selected_index = 0;
  double delta_star = 0.0;
  double rho_star = 0.0;
  double eps_sel = 0.0;
  double tau_sel = 0.0;
  std::vector<CellSet> components;
};

class AllCandidatesFailed : public Error {
 public:
  AllCandidatesFailed(const std::string& what, std::vector<DeltaRun> per_delta)
      : Error(ErrorCode::AllCandidatesFailed, what), per_delta_(std::move(per_delta)) {}
  const std::vector<DeltaRun>& per_delta() const { return per_delta_; }

 private:
  std::vector<DeltaRun> per_delta_;
};

// Lower and upper end of the candidate interval
//   [(ln n (ln ln n)^2 / n)^(1/d), (1 / ln ln n)^(1/d)].
std::pair<double, double> candidate_interval(std::size_t n, std::size_t d);

// Arithmetic grid over candidate_interval with both endpoints and step at most
// n^(-1/d), coarsened to n points if needed. Throws SampleTooSmall for n < 16
// and DegenerateInterval when the interval is empty.
std::vector<double> candidate_grid(std::size_t n, std::size_t d);

// delta^gamma ln ln ln n. Throws SampleTooSmall for n <= 15.
double tau_for(double delta, std::size_t n, double gamma);

// Runs the level scan for every candidate width and keeps the TwoClusters run
// with the smallest returned level, ties going to the smaller width. delta
// sets the partition in unit-box units; tau is evaluated on the width in
// domain units. Throws AllCandidatesFailed when no run yields two clusters.
AdaptiveOutput select(const Dataset& data, const Box& box, const AdaptiveParams& params);

}  // namespace adaclust
