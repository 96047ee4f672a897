#include "adaclust/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "adaclust/cluster_scan.hpp"
#include "adaclust/histogram.hpp"

namespace adaclust {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

double parse_exponent(const json& v, const char* key) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return std::numeric_limits<double>::infinity();
    config_error(std::string(key) + ": expected a number or \"inf\"");
  }
  if (!v.is_number()) config_error(std::string(key) + ": expected a number");
  return v.get<double>();
}

template <typename T>
T get_as(const json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    config_error(std::string("bad value for ") + key);
  }
}

std::size_t get_count(const json& v, const char* key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) config_error(std::string(key) + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<std::vector<std::size_t>> member_lists(const std::vector<CellSet>& comps) {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(comps.size());
  for (const auto& c : comps) out.push_back(c.members());
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  return k % 2 == 1 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json exponent_json(double x) { return std::isinf(x) ? json("inf") : json(x); }

json trace_json(const std::vector<ScanLevel>& trace) {
  json out = json::array();
  for (const auto& lv : trace) out.push_back({{"rho", lv.rho}, {"components", lv.components}, {"survivors", lv.survivors}});
  return out;
}

json delta_run_json(const DeltaRun& r) {
  json j{{"delta", r.delta}, {"eps", r.eps}, {"tau", r.tau}};
  if (r.error) {
    j["error"] = *r.error;
  } else {
    j["status"] = std::string(to_string(r.output.status));
    j["rho_star_hat"] = r.output.rho_star_hat;
    j["survivor_count"] = r.output.survivor_count;
  }
  return j;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Single: return "single";
    case RunMode::Adaptive: return "adaptive";
    case RunMode::Rates: return "rates";
    case RunMode::Selftest: return "selftest";
  }
  return "unknown";
}

std::string_view to_string(RateMode mode) { return mode == RateMode::Oracle ? "oracle" : "adaptive"; }

void ExperimentConfig::validate() const {
  if (!(theta > 0.0) || !(beta > 0.0)) config_error("theta and beta must be positive");
  if (!(rho_star >= 0.0) || !(rho_star < 1.0 / 6.0)) config_error("rho_star must lie in [0, 1/6)");
  if (dim != 1 && dim != 2) config_error("dim must be 1 or 2");
  if (n < 1) config_error("n must be >= 1");
  if (reps < 1) config_error("reps must be >= 1");
  if (!(C >= 1.0)) config_error("C must be >= 1");
  if (!(gamma > 0.0) || gamma > 1.0) config_error("gamma must lie in (0,1]");
  if (varsigma && !(*varsigma >= 1.0)) config_error("varsigma must be >= 1");
  if (mode != RunMode::Single && (delta || eps || tau)) config_error("delta, eps and tau overrides are only allowed in single mode");
  if (delta && (!(*delta > 0.0) || *delta > 1.0)) config_error("delta must lie in (0,1]");
  if (eps && !(*eps > 0.0)) config_error("eps must be positive");
  if (tau && !(*tau > 0.0)) config_error("tau must be positive");
  if (!(oracle.k_eps > 0.0) || !(oracle.k_delta > 0.0) || !(oracle.k_tau > 0.0)) config_error("oracle constants must be positive");
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) config_error("n_grid must be strictly increasing");
  }
  if (mode == RunMode::Rates && n_grid.size() < 4) config_error("rates needs an n_grid with at least 4 points");
  if (format != "json" && format != "csv") config_error("format must be json or csv");
}

std::vector<std::size_t> parse_n_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) config_error("n_grid must look like a:b:steps");
  unsigned long long a = 0;
  unsigned long long b = 0;
  unsigned long long steps = 0;
  try {
    std::size_t pos = 0;
    a = std::stoull(parts[0], &pos);
    if (pos != parts[0].size()) throw std::invalid_argument("a");
    b = std::stoull(parts[1], &pos);
    if (pos != parts[1].size()) throw std::invalid_argument("b");
    steps = std::stoull(parts[2], &pos);
    if (pos != parts[2].size()) throw std::invalid_argument("steps");
  } catch (const std::exception&) {
    config_error("n_grid must look like a:b:steps with positive integers");
  }
  if (a < 1 || b <= a || steps < 2) config_error("n_grid needs 1 <= a < b and steps >= 2");
  std::vector<std::size_t> out;
  const double ratio = std::log(static_cast<double>(b) / static_cast<double>(a));
  for (unsigned long long i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
    const auto v = static_cast<std::size_t>(std::llround(static_cast<double>(a) * std::exp(ratio * t)));
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  out.back() = b;
  return out;
}

void apply_config_json(ExperimentConfig& c, const json& j) {
  if (!j.is_object()) config_error("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "theta") {
      c.theta = parse_exponent(v, "theta");
    } else if (key == "beta") {
      c.beta = parse_exponent(v, "beta");
    } else if (key == "rho_star") {
      c.rho_star = get_as<double>(v, "rho_star");
    } else if (key == "dim") {
      c.dim = get_count(v, "dim");
    } else if (key == "n") {
      c.n = get_count(v, "n");
    } else if (key == "n_grid") {
      if (v.is_string()) {
        c.n_grid = parse_n_grid(v.get<std::string>());
      } else if (v.is_array()) {
        c.n_grid.clear();
        for (const auto& e : v) c.n_grid.push_back(get_count(e, "n_grid"));
      } else {
        config_error("n_grid must be \"a:b:steps\" or an array");
      }
    } else if (key == "reps") {
      c.reps = get_count(v, "reps");
    } else if (key == "seed") {
      c.seed = get_count(v, "seed");
    } else if (key == "C") {
      c.C = get_as<double>(v, "C");
    } else if (key == "gamma") {
      c.gamma = get_as<double>(v, "gamma");
    } else if (key == "varsigma") {
      c.varsigma = get_as<double>(v, "varsigma");
    } else if (key == "delta") {
      c.delta = get_as<double>(v, "delta");
    } else if (key == "eps") {
      c.eps = get_as<double>(v, "eps");
    } else if (key == "tau") {
      c.tau = get_as<double>(v, "tau");
    } else if (key == "mode") {
      const auto m = get_as<std::string>(v, "mode");
      if (m == "oracle") {
        c.rate_mode = RateMode::Oracle;
      } else if (m == "adaptive") {
        c.rate_mode = RateMode::Adaptive;
      } else {
        config_error("mode must be oracle or adaptive");
      }
    } else if (key == "out") {
      c.out = get_as<std::string>(v, "out");
    } else if (key == "format") {
      c.format = get_as<std::string>(v, "format");
    } else if (key == "k_eps") {
      c.oracle.k_eps = get_as<double>(v, "k_eps");
    } else if (key == "k_delta") {
      c.oracle.k_delta = get_as<double>(v, "k_delta");
    } else if (key == "k_tau") {
      c.oracle.k_tau = get_as<double>(v, "k_tau");
    } else {
      config_error("unknown config key: " + key);
    }
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file " + path);
  ExperimentConfig c;
  try {
    apply_config_json(c, json::parse(in));
  } catch (const json::parse_error& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  return c;
}

Dataset Problem::draw(std::size_t n, std::uint64_t seed) const {
  return dim == 1 ? sample(spec, n, seed) : sample(Strip2DSpec{spec}, n, seed);
}

Problem make_problem(const ExperimentConfig& config) {
  Problem p;
  p.dim = config.dim;
  p.spec = make_theta_beta(config.theta, config.beta, config.rho_star);
  p.truth = config.dim == 1 ? ground_truth(p.spec) : ground_truth(Strip2DSpec{p.spec});
  p.box = sampling_box(config.dim);
  return p;
}

OracleParams oracle_params(const GroundTruth& truth, std::size_t d, std::size_t n, const OracleConstants& k) {
  if (n < 16) throw Error(ErrorCode::SampleTooSmall, "oracle sequences need n >= 16");
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  const double lnln = std::log(ln);
  const double dd = static_cast<double>(d);
  const double gk = truth.gamma * truth.kappa;
  OracleParams out;
  if (std::isinf(gk)) {
    out.eps = k.k_eps * std::sqrt(ln * lnln / nn);
    out.delta = k.k_delta;
    out.tau = k.k_tau;
  } else {
    out.eps = k.k_eps * std::pow(ln * lnln / nn, gk / (2.0 * gk + dd));
    out.delta = k.k_delta * std::pow(ln / nn, 1.0 / (2.0 * gk + dd));
    out.tau = k.k_tau * std::pow(out.eps, 1.0 / truth.kappa);
  }
  out.delta = std::min(out.delta, 1.0);
  return out;
}

namespace {

struct ScanRun {
  double delta_domain = 0.0;
  ClusterOutput output;
  std::optional<std::string> error;
};

ScanRun scan_with(const Dataset& data, const Box& box, double delta, double eps, double tau) {
  ScanRun r;
  const auto partition = build_partition(box, delta);
  r.delta_domain = partition->domain_width();
  try {
    const EmpiricalHistogram hist = fit(data, partition);
    const ScanParams params = default_scan_params(hist, eps, tau);
    r.output = run_scan(histogram_family(hist), params);
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

double excess_eps_star(const Problem& p, double eps, double tau) {
  return p.dim == 1 ? epsilon_star_truth(p.spec, eps, tau) : epsilon_star_truth(Strip2DSpec{p.spec}, eps, tau);
}

}  // namespace

SingleResult run_single(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  const Problem problem = make_problem(config);
  const GroundTruth& truth = problem.truth;
  const std::size_t d = problem.dim;

  SingleResult r;
  r.n = config.n;
  r.seed = config.seed;
  r.delta = config.delta ? *config.delta : oracle_params(truth, d, std::max<std::size_t>(config.n, 16), config.oracle).delta;
  r.delta_domain = build_partition(problem.box, r.delta)->domain_width();
  r.psi = truth.psi(r.delta_domain);
  r.eps = config.eps ? *config.eps
                     : eps_bounded(config.varsigma.value_or(1.0), r.delta, config.n, partition_constant(d), d, truth.h_sup);
  r.tau = config.tau ? *config.tau : 2.0 * r.psi;
  r.tau_below_psi = r.tau <= r.psi;
  r.tau_meets_two_psi = r.tau >= 2.0 * r.psi;
  r.delta_within_thick = r.delta_domain <= truth.delta_thick;
  try {
    r.eps_star = excess_eps_star(problem, r.eps, r.tau);
  } catch (const Error&) {
    r.eps_star.reset();
  }

  const Dataset data = problem.draw(config.n, config.seed);
  ScanRun run = scan_with(data, problem.box, r.delta, r.eps, r.tau);
  if (run.error) {
    r.error = run.error;
    r.rho_star_hat = kNaN;
    r.rho_err = kNaN;
  } else {
    const ClusterOutput& o = run.output;
    r.status = o.status;
    r.rho_star_hat = o.rho_star_hat;
    r.rho_err = o.rho_star_hat - truth.rho_star;
    r.components = member_lists(o.components);
    r.trace = o.trace;
    const ClusterMatch match = match_clusters(o.components, truth.clusters);
    r.symdiff = match.total;
    r.symdiff_per_truth = match.per_truth;
    r.eps_below_excess = r.eps < r.rho_err;
    r.lower_bound_ok = o.rho_star_hat >= truth.rho_star + 2.0 * r.eps;
    if (r.eps_star) r.upper_bound_ok = o.rho_star_hat <= truth.rho_star + *r.eps_star + 5.0 * r.eps;
  }
  r.wall_ms = elapsed_ms(start);
  return r;
}

AdaptiveResult run_adaptive(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  const Problem problem = make_problem(config);
  AdaptiveResult r;
  r.n = config.n;
  r.seed = config.seed;
  r.interval = candidate_interval(config.n, problem.dim);

  AdaptiveParams params;
  params.C = config.C;
  params.gamma = config.gamma;
  params.varsigma = config.varsigma;
  const Dataset data = problem.draw(config.n, config.seed);
  try {
    AdaptiveOutput out = select(data, problem.box, params);
    const double rho_star = problem.truth.rho_star;
    r.rho_err = out.rho_star - rho_star;
    r.symdiff = match_clusters(out.components, problem.truth.clusters).total;
    r.delta_in_interval = out.delta_star >= r.interval.first && out.delta_star <= r.interval.second;
    r.eps_below_excess = out.eps_sel < r.rho_err;
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& run : out.per_delta) {
      if (run.succeeded()) lowest = std::min(lowest, run.output.rho_star_hat);
    }
    r.min_rule_holds = out.rho_star == lowest;
    r.per_delta = std::move(out.per_delta);
    out.per_delta.clear();
    r.output = std::move(out);
  } catch (const AllCandidatesFailed& e) {
    r.error = e.what();
    r.per_delta = e.per_delta();
    r.rho_err = kNaN;
    r.symdiff = kNaN;
  }
  r.wall_ms = elapsed_ms(start);
  return r;
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> logs;
  for (const auto& [n, v] : points) {
    if (n > 0.0 && v > 0.0 && std::isfinite(v)) logs.emplace_back(std::log(n), std::log(v));
  }
  if (logs.size() < 2) throw Error(ErrorCode::FitUnderdetermined, "fewer than two positive points");
  const double k = static_cast<double>(logs.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx <= 0.0) throw Error(ErrorCode::FitUnderdetermined, "all points share the same n");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.points = logs.size();
  if (logs.size() > 2) {
    double ssr = 0.0;
    for (const auto& [x, y] : logs) {
      const double res = y - my - fit.slope * (x - mx);
      ssr += res * res;
    }
    fit.std_error = std::sqrt(ssr / (k - 2.0) / sxx);
  }
  return fit;
}

RateReport run_rates(const ExperimentConfig& config) {
  config.validate();
  if (config.n_grid.size() < 4) config_error("rates needs an n_grid with at least 4 points");
  const Problem problem = make_problem(config);
  const GroundTruth& truth = problem.truth;
  const std::size_t d = problem.dim;

  RateReport report;
  report.mode = config.rate_mode;
  report.expected = expected_exponents(truth, d);
  const std::size_t reps = config.reps;
  const std::size_t total = config.n_grid.size() * reps;
  report.rows.resize(total);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(total); ++si) {
    const auto idx = static_cast<std::size_t>(si);
    const auto start = std::chrono::steady_clock::now();
    RateRow& row = report.rows[idx];
    row.n = config.n_grid[idx / reps];
    row.rep = idx % reps;
    const Dataset data = problem.draw(row.n, config.seed + row.rep);
    std::vector<CellSet> comps;
    bool ok = false;
    if (config.rate_mode == RateMode::Oracle) {
      try {
        const OracleParams op = oracle_params(truth, d, row.n, config.oracle);
        row.delta = op.delta;
        row.eps = op.eps;
        row.tau = op.tau;
        ScanRun run = scan_with(data, problem.box, op.delta, op.eps, op.tau);
        if (run.error) {
          row.status = run.error->substr(0, run.error->find(':'));
        } else {
          row.status = std::string(to_string(run.output.status));
          row.rho_err = run.output.rho_star_hat - truth.rho_star;
          comps = std::move(run.output.components);
          ok = true;
        }
      } catch (const Error& e) {
        row.status = std::string(to_string(e.code()));
      }
    } else {
      AdaptiveParams params;
      params.C = config.C;
      params.gamma = config.gamma;
      params.varsigma = config.varsigma;
      try {
        AdaptiveOutput out = select(data, problem.box, params);
        row.status = std::string(to_string(ScanStatus::TwoClusters));
        row.delta = out.delta_star;
        row.eps = out.eps_sel;
        row.tau = out.tau_sel;
        row.rho_err = out.rho_star - truth.rho_star;
        comps = std::move(out.components);
        ok = true;
      } catch (const Error& e) {
        row.status = std::string(to_string(e.code()));
      }
    }
    if (ok) {
      row.symdiff = match_clusters(comps, truth.clusters).total;
    } else {
      row.rho_err = kNaN;
      row.symdiff = kNaN;
    }
    row.wall_ms = elapsed_ms(start);
  }

  std::vector<std::pair<double, double>> rho_pts;
  std::vector<std::pair<double, double>> sym_pts;
  const std::string two = std::string(to_string(ScanStatus::TwoClusters));
  for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
    MedianPoint mp;
    mp.n = config.n_grid[g];
    std::vector<double> rho_vals;
    std::vector<double> sym_vals;
    std::size_t positive = 0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const RateRow& row = report.rows[g * reps + rep];
      if (row.rho_err > 0.0) ++positive;
      if (row.status != two) continue;
      ++mp.used;
      if (row.rho_err > 0.0) rho_vals.push_back(row.rho_err);
      if (row.symdiff > 0.0) sym_vals.push_back(row.symdiff);
    }
    mp.positive_fraction = static_cast<double>(positive) / static_cast<double>(reps);
    if (!rho_vals.empty()) {
      mp.rho_err = median(rho_vals);
      rho_pts.emplace_back(static_cast<double>(mp.n), *mp.rho_err);
    }
    if (!sym_vals.empty()) {
      mp.symdiff = median(sym_vals);
      sym_pts.emplace_back(static_cast<double>(mp.n), *mp.symdiff);
    }
    report.medians.push_back(mp);
  }
  try {
    report.rho_fit = fit_slope(rho_pts);
  } catch (const Error& e) {
    report.rho_fit_error = e.what();
  }
  try {
    report.symdiff_fit = fit_slope(sym_pts);
  } catch (const Error& e) {
    report.symdiff_fit_error = e.what();
  }
  return report;
}

json to_json(const SingleResult& r) {
  json j{{"n", r.n},
         {"seed", r.seed},
         {"delta", r.delta},
         {"delta_domain", r.delta_domain},
         {"eps", r.eps},
         {"tau", r.tau},
         {"psi", r.psi},
         {"rho_star_hat", number_or_null(r.rho_star_hat)},
         {"rho_err", number_or_null(r.rho_err)},
         {"components", r.components},
         {"trace", trace_json(r.trace)},
         {"symdiff", r.symdiff},
         {"symdiff_per_truth", r.symdiff_per_truth},
         {"eps_star", r.eps_star ? json(*r.eps_star) : json(nullptr)},
         {"flags",
          {{"tau_below_psi", r.tau_below_psi},
           {"tau_meets_two_psi", r.tau_meets_two_psi},
           {"delta_within_thick", r.delta_within_thick},
           {"eps_below_excess", r.eps_below_excess},
           {"lower_bound_ok", r.lower_bound_ok},
           {"upper_bound_ok", r.upper_bound_ok ? json(*r.upper_bound_ok) : json(nullptr)}}},
         {"wall_ms", r.wall_ms}};
  j["status"] = r.status ? json(std::string(to_string(*r.status))) : json(nullptr);
  if (r.error) j["error"] = *r.error;
  return j;
}

json to_json(const AdaptiveResult& r) {
  json per = json::array();
  for (const auto& run : r.per_delta) per.push_back(delta_run_json(run));
  json j{{"n", r.n},
         {"seed", r.seed},
         {"interval", {r.interval.first, r.interval.second}},
         {"grid_size", r.per_delta.size()},
         {"per_delta", per},
         {"wall_ms", r.wall_ms}};
  if (r.error) {
    j["error"] = *r.error;
    j["status"] = std::string(to_string(ErrorCode::AllCandidatesFailed));
    return j;
  }
  const AdaptiveOutput& o = *r.output;
  j["status"] = std::string(to_string(ScanStatus::TwoClusters));
  j["selected_index"] = o.selected_index;
  j["delta_star"] = o.delta_star;
  j["rho_star_hat"] = o.rho_star;
  j["eps_sel"] = o.eps_sel;
  j["tau_sel"] = o.tau_sel;
  j["components"] = member_lists(o.components);
  j["rho_err"] = r.rho_err;
  j["symdiff"] = r.symdiff;
  j["flags"] = {{"delta_in_interval", r.delta_in_interval},
                {"eps_below_excess", r.eps_below_excess},
                {"min_rule_holds", r.min_rule_holds}};
  return j;
}

json to_json(const RateReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"rep", row.rep},
                    {"rho_err", number_or_null(row.rho_err)},
                    {"status", row.status},
                    {"symdiff", number_or_null(row.symdiff)},
                    {"delta", row.delta},
                    {"eps", row.eps},
                    {"tau", row.tau},
                    {"wall_ms", row.wall_ms}});
  }
  json medians = json::array();
  for (const auto& m : r.medians) {
    medians.push_back({{"n", m.n},
                       {"used", m.used},
                       {"rho_err", m.rho_err ? json(*m.rho_err) : json(nullptr)},
                       {"symdiff", m.symdiff ? json(*m.symdiff) : json(nullptr)},
                       {"positive_fraction", m.positive_fraction}});
  }
  auto fit_json = [](const std::optional<SlopeFit>& f, const std::optional<std::string>& err) {
    if (!f) return json{{"error", err.value_or("")}};
    return json{{"slope", f->slope}, {"std_error", f->std_error}, {"points", f->points}};
  };
  json expected{{"rho_rate", r.expected.rho_rate ? json(-*r.expected.rho_rate) : json(nullptr)},
                {"cluster_rate", r.expected.cluster_rate ? json(-*r.expected.cluster_rate) : json(nullptr)},
                {"varrho", r.expected.varrho ? exponent_json(*r.expected.varrho) : json(nullptr)},
                {"rho_log_rate", r.expected.rho_log_rate},
                {"cluster_log_rate", r.expected.cluster_log_rate}};
  return {{"mode", std::string(to_string(r.mode))},
          {"rows", rows},
          {"medians", medians},
          {"fit", {{"rho_err", fit_json(r.rho_fit, r.rho_fit_error)}, {"symdiff", fit_json(r.symdiff_fit, r.symdiff_fit_error)}}},
          {"expected_slopes", expected}};
}

std::string rate_rows_csv(const std::vector<RateRow>& rows) {
  std::ostringstream os;
  os << "n,rep,rho_err,status,symdiff,delta,eps,tau,wall_ms\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.rep << ',' << format_double(r.rho_err) << ',' << r.status << ',' << format_double(r.symdiff)
       << ',' << format_double(r.delta) << ',' << format_double(r.eps) << ',' << format_double(r.tau) << ','
       << std::fixed << std::setprecision(3) << r.wall_ms << std::defaultfloat << '\n';
  }
  return os.str();
}

}  // namespace adaclust
