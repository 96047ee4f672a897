// Command-line driver for single runs, adaptive runs, rate experiments and the
// built-in property suite.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "adaclust/experiments.hpp"
#include "adaclust/selfcheck.hpp"

namespace {

using adaclust::ExperimentConfig;

constexpr int kConfigError = 1;
constexpr int kSelftestFailed = 2;

struct Flags {
  std::string config_path;
  std::optional<std::string> theta;
  std::optional<std::string> beta;
  std::optional<double> rho_star;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> n;
  std::optional<std::string> n_grid;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<double> C;
  std::optional<double> gamma;
  std::optional<double> varsigma;
  std::optional<double> delta;
  std::optional<double> eps;
  std::optional<double> tau;
  std::optional<std::string> mode;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<double> k_eps;
  std::optional<double> k_delta;
  std::optional<double> k_tau;
};

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || pos == 0) throw adaclust::Error(adaclust::ErrorCode::InvalidConfig, "bad exponent " + text);
  return v;
}

ExperimentConfig build_config(const Flags& f, adaclust::RunMode mode) {
  ExperimentConfig c = f.config_path.empty() ? ExperimentConfig{} : adaclust::load_config_file(f.config_path);
  c.mode = mode;
  if (f.theta) c.theta = parse_exponent(*f.theta);
  if (f.beta) c.beta = parse_exponent(*f.beta);
  if (f.rho_star) c.rho_star = *f.rho_star;
  if (f.dim) c.dim = *f.dim;
  if (f.n) c.n = *f.n;
  if (f.n_grid) c.n_grid = adaclust::parse_n_grid(*f.n_grid);
  if (f.reps) c.reps = *f.reps;
  if (f.seed) c.seed = *f.seed;
  if (f.C) c.C = *f.C;
  if (f.gamma) c.gamma = *f.gamma;
  if (f.varsigma) c.varsigma = *f.varsigma;
  if (f.delta) c.delta = *f.delta;
  if (f.eps) c.eps = *f.eps;
  if (f.tau) c.tau = *f.tau;
  if (f.mode) c.rate_mode = *f.mode == "adaptive" ? adaclust::RateMode::Adaptive : adaclust::RateMode::Oracle;
  if (f.out) c.out = *f.out;
  if (f.format) c.format = *f.format;
  if (f.k_eps) c.oracle.k_eps = *f.k_eps;
  if (f.k_delta) c.oracle.k_delta = *f.k_delta;
  if (f.k_tau) c.oracle.k_tau = *f.k_tau;
  c.validate();
  if (mode != adaclust::RunMode::Rates && c.format != "json") {
    throw adaclust::Error(adaclust::ErrorCode::InvalidConfig, "csv output is only available for rates");
  }
  return c;
}

void emit(const ExperimentConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(c.out);
  if (!file) throw adaclust::Error(adaclust::ErrorCode::InvalidConfig, "cannot write " + c.out);
  file << text;
}

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config_path, "JSON config file; flags override its keys");
  app.add_option("--theta", f.theta, "inner exponent theta (number or inf)");
  app.add_option("--beta", f.beta, "outer exponent beta (number or inf)");
  app.add_option("--rho-star", f.rho_star, "split level rho* in [0, 1/6)");
  app.add_option("--dim", f.dim, "dimension")->check(CLI::IsMember({1, 2}));
  app.add_option("--n", f.n, "sample size");
  app.add_option("--n-grid", f.n_grid, "geometric sample-size grid a:b:steps");
  app.add_option("--reps", f.reps, "replications per sample size");
  app.add_option("--seed", f.seed, "base seed; replication r uses seed + r");
  app.add_option("--C", f.C, "adaptive eps constant (>= 1)");
  app.add_option("--gamma", f.gamma, "thickness order in (0,1]");
  app.add_option("--varsigma", f.varsigma, "confidence parameter (>= 1)");
  app.add_option("--delta", f.delta, "cell width override in (0,1] (single only)");
  app.add_option("--eps", f.eps, "eps override (single only)");
  app.add_option("--tau", f.tau, "tau override (single only)");
  app.add_option("--mode", f.mode, "rate mode")->check(CLI::IsMember({"oracle", "adaptive"}));
  app.add_option("--out", f.out, "output path (default stdout)");
  app.add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--k-eps", f.k_eps, "oracle eps constant");
  app.add_option("--k-delta", f.k_delta, "oracle delta constant");
  app.add_option("--k-tau", f.k_tau, "oracle tau constant");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density-based two-cluster estimation with histogram level sets"};
  app.require_subcommand(1);
  Flags flags;
  auto* single = app.add_subcommand("single", "one run with oracle or manual parameters");
  auto* adaptive = app.add_subcommand("adaptive", "one run with data-driven width selection");
  auto* rates = app.add_subcommand("rates", "Monte-Carlo convergence-rate experiment");
  auto* selftest = app.add_subcommand("selftest", "run the randomized property suite");
  for (auto* sub : {single, adaptive, rates, selftest}) add_flags(*sub, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (selftest->parsed()) {
      const ExperimentConfig c = build_config(flags, adaclust::RunMode::Selftest);
      bool ok = true;
      for (const auto& check : adaclust::run_selfcheck(c.seed)) {
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.name;
        if (!check.detail.empty()) std::cout << ": " << check.detail;
        std::cout << '\n';
        ok = ok && check.passed;
      }
      return ok ? 0 : kSelftestFailed;
    }
    if (single->parsed()) {
      const ExperimentConfig c = build_config(flags, adaclust::RunMode::Single);
      emit(c, adaclust::to_json(adaclust::run_single(c)).dump(2) + "\n");
    } else if (adaptive->parsed()) {
      const ExperimentConfig c = build_config(flags, adaclust::RunMode::Adaptive);
      emit(c, adaclust::to_json(adaclust::run_adaptive(c)).dump(2) + "\n");
    } else if (rates->parsed()) {
      const ExperimentConfig c = build_config(flags, adaclust::RunMode::Rates);
      const adaclust::RateReport report = adaclust::run_rates(c);
      if (c.format == "csv") {
        emit(c, adaclust::rate_rows_csv(report.rows));
        const auto j = adaclust::to_json(report);
        std::cerr << "fit " << j["fit"].dump() << "\nexpected " << j["expected_slopes"].dump() << '\n';
      } else {
        emit(c, adaclust::to_json(report).dump(2) + "\n");
      }
    }
  } catch (const adaclust::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return 0;
}
