#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "adaclust/cell_set.hpp"
#include "adaclust/grid_partition.hpp"
#include "adaclust/histogram.hpp"

namespace adaclust {

// Finite union of pairwise disjoint axis-aligned boxes.
using Region = std::vector<Box>;

double region_volume(const Region& region);

// Two-cluster benchmark density on [-3,3]:
//   rho* + c (1_[0,1](|x|) |x|^theta + 1_[1,2](|x|) + 1_[2,3](|x|) (3-|x|)^beta).
// theta and beta may be +infinity; the corresponding pieces then vanish off a
// null set.
struct ThetaBetaSpec {
  double theta = 2.0;
  double beta = 1.0;
  double rho_star = 0.0;
  double c = 0.0;

  double rho_star_star() const { return rho_star + c; }
};

// Throws InvalidLevel unless rho* in [0, 1/6), InvalidParams for non-positive
// exponents.
double normalize(double theta, double beta, double rho_star);
ThetaBetaSpec make_theta_beta(double theta, double beta, double rho_star);

// 2-D strip: the 1-D density in x times the uniform density on y in [-1,1].
struct Strip2DSpec {
  ThetaBetaSpec base;
};

Box sampling_box(std::size_t dim);

double density(const ThetaBetaSpec& spec, double x);
double density2d(const Strip2DSpec& spec, double x, double y);
double cdf(const ThetaBetaSpec& spec, double x);

// n i.i.d. draws by inverse-CDF with per-piece bisection; deterministic in
// seed.
Dataset sample(const ThetaBetaSpec& spec, std::size_t n, std::uint64_t seed);
Dataset sample(const Strip2DSpec& spec, std::size_t n, std::uint64_t seed);

// Closed-form M_rho. Throws AboveTop for rho > rho**.
Region level_set_truth(const ThetaBetaSpec& spec, double rho);
Region level_set_truth(const Strip2DSpec& spec, double rho);

// One third of the gap between the two components of M_{rho*+eps}.
// Throws InvalidEps for eps outside (0, rho**-rho*].
double tau_star_truth(const ThetaBetaSpec& spec, double eps);
double tau_star_truth(const Strip2DSpec& spec, double eps);

// eps + inf{eps' in (0, rho**-rho*] : tau*(eps') >= tau}. Throws
// NoFeasibleEps when the set is empty.
double epsilon_star_truth(const ThetaBetaSpec& spec, double eps, double tau);
double epsilon_star_truth(const Strip2DSpec& spec, double eps, double tau);

struct GroundTruth {
  std::size_t dim = 1;
  double rho_star = 0.0;
  double rho_star_star = 0.0;
  std::array<Region, 2> clusters;
  double kappa = 0.0;     // separation exponent (exact)
  double gamma = 1.0;     // thickness order
  double vartheta = 0.0;  // flatness exponent
  double alpha = 1.0;     // boundary smoothness
  double c_sep_lower = 0.0;
  double c_sep_upper = 0.0;
  double c_flat = 0.0;
  double c_bound = 4.0;
  double c_thick = 1.0;
  double delta_thick = 0.5;  // domain units
  double h_sup = 0.0;
  std::function<double(double)> tau_star_fn;

  // psi(delta) = 3 c_thick delta^gamma, delta in domain units.
  double psi(double delta) const;
  // s -> mu{0 < h - rho* < s}, closed form.
  std::function<double(double)> flat_measure;
};

GroundTruth ground_truth(const ThetaBetaSpec& spec);
GroundTruth ground_truth(const Strip2DSpec& spec);

// Cells whose closed box lies inside the region, and cells whose closed box
// meets it.
CellSet cells_inside(PartitionPtr partition, const Region& region);
CellSet cells_touching(PartitionPtr partition, const Region& region);

// Lebesgue measure of estimate symmetric-difference truth.
double sym_diff_measure(const CellSet& estimate, const Region& truth);

struct ClusterMatch {
  // assignment[t] = index into the estimates paired with truth t, if any.
  std::array<std::optional<std::size_t>, 2> assignment;
  std::array<double, 2> per_truth{};
  double total = 0.0;
  // More than two estimates: all but the two largest were charged in full.
  bool extra_charged = false;
};

ClusterMatch match_clusters(const std::vector<CellSet>& estimates, const std::array<Region, 2>& truths);

struct ExpectedExponents {
  std::optional<double> rho_rate;
  std::optional<double> cluster_rate;
  std::optional<double> varrho;
  // Set when kappa or vartheta is infinite and the polynomial exponent is
  // replaced by a logarithmic rate.
  bool rho_log_rate = false;
  bool cluster_log_rate = false;
};

ExpectedExponents expected_exponents(const GroundTruth& truth, std::size_t d);

}  // namespace adaclust
