#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "adaclust/adaptive.hpp"
#include "adaclust/synthetic.hpp"

namespace adaclust {

enum class RunMode { Single, Adaptive, Rates, Selftest };
enum class RateMode { Oracle, Adaptive };

// Constants in front of the oracle sequences
//   eps_n = k_eps (ln n ln ln n / n)^(g k / (2 g k + d))
//   delta_n = k_delta (ln n / n)^(1 / (2 g k + d))
//   tau_n = k_tau eps_n^(1 / k)
struct OracleConstants {
  double k_eps = 0.08;
  double k_delta = 0.1;
  double k_tau = 1.0;
};

struct ExperimentConfig {
  RunMode mode = RunMode::Single;
  double theta = 2.0;
  double beta = 1.0;
  double rho_star = 0.1;
  std::size_t dim = 1;
  std::size_t n = 16384;
  std::vector<std::size_t> n_grid;
  std::size_t reps = 1;
  std::uint64_t seed = 20240611;
  double C = 1.0;
  double gamma = 1.0;
  std::optional<double> varsigma;
  std::optional<double> delta;
  std::optional<double> eps;
  std::optional<double> tau;
  RateMode rate_mode = RateMode::Oracle;
  OracleConstants oracle;
  std::string out;
  std::string format = "json";

  // Throws InvalidConfig.
  void validate() const;
};

// Geometric grid of sample sizes from "a:b:steps" (a < b, steps >= 2).
std::vector<std::size_t> parse_n_grid(const std::string& text);

// Keys mirror the command-line flags (theta, beta, rho_star, dim, n, n_grid,
// reps, seed, C, gamma, varsigma, delta, eps, tau, mode, out, format,
// k_eps, k_delta, k_tau); "mode" is the rate mode. Each key present in j
// overwrites its field. Unknown keys throw InvalidConfig.
void apply_config_json(ExperimentConfig& config, const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

std::string_view to_string(RunMode mode);
std::string_view to_string(RateMode mode);

// The synthetic distribution selected by theta, beta, rho_star and dim.
struct Problem {
  std::size_t dim = 1;
  ThetaBetaSpec spec;
  GroundTruth truth;
  Box box;

  Dataset draw(std::size_t n, std::uint64_t seed) const;
};

Problem make_problem(const ExperimentConfig& config);

struct SingleResult {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double delta = 0.0;         // unit-box units
  double delta_domain = 0.0;  // domain units
  double eps = 0.0;
  double tau = 0.0;
  double psi = 0.0;
  std::optional<std::string> error;
  std::optional<ScanStatus> status;
  double rho_star_hat = 0.0;
  double rho_err = 0.0;
  std::vector<std::vector<std::size_t>> components;
  std::vector<ScanLevel> trace;
  double symdiff = 0.0;
  std::array<double, 2> symdiff_per_truth{};
  std::optional<double> eps_star;
  // tau <= psi(delta): the run proceeds but the thickness hypothesis fails.
  bool tau_below_psi = false;
  bool tau_meets_two_psi = false;
  bool delta_within_thick = false;
  bool eps_below_excess = false;  // eps < rho_star_hat - rho*
  bool lower_bound_ok = false;    // rho_star_hat >= rho* + 2 eps
  std::optional<bool> upper_bound_ok;  // rho_star_hat <= rho* + eps* + 5 eps
  double wall_ms = 0.0;
};

struct AdaptiveResult {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::pair<double, double> interval{};
  std::optional<std::string> error;
  std::vector<DeltaRun> per_delta;
  std::optional<AdaptiveOutput> output;
  double rho_err = 0.0;
  double symdiff = 0.0;
  bool delta_in_interval = false;
  bool eps_below_excess = false;
  // rho_star equals the minimum level over the TwoClusters runs.
  bool min_rule_holds = false;
  double wall_ms = 0.0;
};

struct RateRow {
  std::size_t n = 0;
  std::size_t rep = 0;
  double rho_err = 0.0;
  std::string status;
  double symdiff = 0.0;
  double delta = 0.0;
  double eps = 0.0;
  double tau = 0.0;
  double wall_ms = 0.0;
};

struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
  std::size_t points = 0;
};

struct MedianPoint {
  std::size_t n = 0;
  std::size_t used = 0;
  std::optional<double> rho_err;
  std::optional<double> symdiff;
  double positive_fraction = 0.0;
};

struct RateReport {
  RateMode mode = RateMode::Oracle;
  std::vector<RateRow> rows;
  std::vector<MedianPoint> medians;
  std::optional<SlopeFit> rho_fit;
  std::optional<SlopeFit> symdiff_fit;
  std::optional<std::string> rho_fit_error;
  std::optional<std::string> symdiff_fit_error;
  ExpectedExponents expected;
};

// Parameters for one oracle-mode run at sample size n.
struct OracleParams {
  double delta = 0.0;
  double eps = 0.0;
  double tau = 0.0;
};
OracleParams oracle_params(const GroundTruth& truth, std::size_t d, std::size_t n, const OracleConstants& k);

SingleResult run_single(const ExperimentConfig& config);
AdaptiveResult run_adaptive(const ExperimentConfig& config);
RateReport run_rates(const ExperimentConfig& config);

// OLS of ln value on ln n over pairs with positive value. Throws
// FitUnderdetermined with fewer than two usable points.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

nlohmann::json to_json(const SingleResult& r);
nlohmann::json to_json(const AdaptiveResult& r);
nlohmann::json to_json(const RateReport& r);
// Header n,rep,rho_err,status,symdiff,delta,eps,tau,wall_ms.
std::string rate_rows_csv(const std::vector<RateRow>& rows);

}  // namespace adaclust
