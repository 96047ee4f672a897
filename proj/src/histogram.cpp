#include "adaclust/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "adaclust/error.hpp"

namespace adaclust {

Dataset::Dataset(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw Error(ErrorCode::InvalidDomain, "dataset dimension must be positive");
  if (coords_.size() % dim_ != 0) {
    throw Error(ErrorCode::ParseError, "coordinate count is not a multiple of the dimension");
  }
}

Dataset read_dataset(std::istream& in) {
  std::vector<double> coords;
  std::size_t dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::stringstream ss(line);
    std::string field;
    std::size_t k = 0;
    while (std::getline(ss, field, ',')) {
      try {
        std::size_t used = 0;
        coords.push_back(std::stod(field, &used));
        if (field.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad number on line " + std::to_string(lineno));
      }
      ++k;
    }
    if (dim == 0) dim = k;
    if (k != dim) throw Error(ErrorCode::ParseError, "inconsistent dimension on line " + std::to_string(lineno));
  }
  if (dim == 0) throw Error(ErrorCode::EmptyData, "no points in input");
  return Dataset(dim, std::move(coords));
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  out.precision(17);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (a != 0) out << ',';
      out << p[a];
    }
    out << '\n';
  }
}

double EmpiricalHistogram::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

namespace {

void check_inputs(const Dataset& data, const PartitionPtr& partition) {
  if (!partition) throw Error(ErrorCode::InvalidDomain, "null partition");
  if (data.size() == 0) throw Error(ErrorCode::EmptyData, "dataset is empty");
  if (data.dim() != partition->dim()) {
    throw Error(ErrorCode::OutOfDomain, "dataset dimension does not match partition");
  }
}

EmpiricalHistogram finish(PartitionPtr partition, std::vector<std::uint64_t> counts, std::size_t n) {
  EmpiricalHistogram h;
  const double scale = 1.0 / (static_cast<double>(n) * cell_measure(*partition));
  h.values.resize(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) h.values[j] = static_cast<double>(counts[j]) * scale;
  h.partition = std::move(partition);
  h.counts = std::move(counts);
  h.n = n;
  return h;
}

}  // namespace

EmpiricalHistogram fit_serial(const Dataset& data, PartitionPtr partition) {
  check_inputs(data, partition);
  std::vector<std::uint64_t> counts(partition->cell_count(), 0);
  for (std::size_t i = 0; i < data.size(); ++i) ++counts[locate_id(*partition, data.point(i))];
  return finish(std::move(partition), std::move(counts), data.size());
}

EmpiricalHistogram fit(const Dataset& data, PartitionPtr partition) {
  check_inputs(data, partition);
  const std::size_t m = partition->cell_count();
  const auto n = static_cast<std::ptrdiff_t>(data.size());
  const int threads = std::min<int>(omp_get_max_threads(), static_cast<int>(std::max<std::ptrdiff_t>(1, n / 4096)));
  if (threads <= 1) return fit_serial(data, std::move(partition));

  // Per-thread tallies summed in thread order; integer sums make the result
  // independent of the schedule.
  std::vector<std::vector<std::uint64_t>> local(static_cast<std::size_t>(threads),
                                                std::vector<std::uint64_t>(m, 0));
  bool out_of_domain = false;
  const PartitionSpec& p = *partition;
#pragma omp parallel num_threads(threads) reduction(|| : out_of_domain)
  {
    auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        ++mine[locate_id(p, data.point(static_cast<std::size_t>(i)))];
      } catch (const Error&) {
        out_of_domain = true;
      }
    }
  }
  if (out_of_domain) throw Error(ErrorCode::OutOfDomain, "point outside the partition box");
  std::vector<std::uint64_t> counts(m, 0);
  for (const auto& part : local) {
    for (std::size_t j = 0; j < m; ++j) counts[j] += part[j];
  }
  return finish(std::move(partition), std::move(counts), data.size());
}

EmpiricalHistogram fit_sorted_1d(std::span<const double> sorted, PartitionPtr partition) {
  if (!partition) throw Error(ErrorCode::InvalidDomain, "null partition");
  if (partition->dim() != 1) throw Error(ErrorCode::InvalidDomain, "fit_sorted_1d needs a 1-D partition");
  if (sorted.empty()) throw Error(ErrorCode::EmptyData, "dataset is empty");
  const auto& iv = partition->box()[0];
  if (sorted.front() < iv.lo || sorted.back() > iv.hi) {
    throw Error(ErrorCode::OutOfDomain, "point outside the partition box");
  }
  const std::size_t m = partition->cell_count();
  std::vector<std::uint64_t> counts(m, 0);
  // Cell boundaries are found with the same predicate locate uses so that the
  // two binning routes agree exactly.
  auto cell_of = [&](double x) { return locate_id(*partition, std::span<const double>(&x, 1)); };
  auto begin = sorted.begin();
  for (std::size_t j = 0; j < m; ++j) {
    auto end = std::partition_point(begin, sorted.end(), [&](double x) { return cell_of(x) <= j; });
    counts[j] = static_cast<std::uint64_t>(end - begin);
    begin = end;
  }
  return finish(std::move(partition), std::move(counts), sorted.size());
}

CellSet level_set(const EmpiricalHistogram& h, double rho) {
  std::vector<std::uint8_t> mask(h.values.size(), 0);
  const auto m = static_cast<std::ptrdiff_t>(h.values.size());
#pragma omp parallel for schedule(static) if (m > 65536)
  for (std::ptrdiff_t j = 0; j < m; ++j) mask[static_cast<std::size_t>(j)] = h.values[static_cast<std::size_t>(j)] >= rho;
  return CellSet::from_mask(h.partition, mask);
}

void ConfidenceInputs::validate() const {
  if (!(varsigma >= 1.0)) throw Error(ErrorCode::InvalidParams, "varsigma must be >= 1");
  if (!(C >= 1.0)) throw Error(ErrorCode::InvalidParams, "C must be >= 1");
  if (h_sup && !(*h_sup > 0.0)) throw Error(ErrorCode::InvalidSup, "h_sup must be positive");
}

double partition_constant(std::size_t d) { return std::ldexp(1.0, static_cast<int>(d)); }

double confidence_term(double varsigma, double delta, double c_P, std::size_t d) {
  return varsigma + std::log(2.0 * c_P) - static_cast<double>(d) * std::log(delta);
}

double eps_general(double varsigma, double delta, std::size_t n, double c_P, std::size_t d) {
  const double e = confidence_term(varsigma, delta, c_P, d);
  const double dd = static_cast<double>(d);
  return c_P * std::sqrt(e / (2.0 * std::pow(delta, 2.0 * dd) * static_cast<double>(n)));
}

double eps_bounded(double varsigma, double delta, std::size_t n, double c_P, std::size_t d,
                   double h_sup) {
  if (!(h_sup > 0.0)) throw Error(ErrorCode::InvalidSup, "h_sup must be positive");
  const double e = confidence_term(varsigma, delta, c_P, d);
  const double vol = std::pow(delta, static_cast<double>(d)) * static_cast<double>(n);
  return std::sqrt(2.0 * c_P * (1.0 + h_sup) * e / vol) + 2.0 * c_P * e / (3.0 * vol);
}

double eps_adaptive(double C, double varsigma, double delta, std::size_t n, double c_P,
                    std::size_t d, std::size_t grid_size) {
  if (n < 16) throw Error(ErrorCode::SampleTooSmall, "adaptive eps needs n >= 16");
  if (grid_size == 0) throw Error(ErrorCode::InvalidParams, "grid size must be >= 1");
  const double nn = static_cast<double>(n);
  const double e = varsigma + std::log(2.0 * c_P * static_cast<double>(grid_size)) -
                   static_cast<double>(d) * std::log(delta);
  const double vol = std::pow(delta, static_cast<double>(d)) * nn;
  return C * std::sqrt(c_P * e * std::log(std::log(nn)) / vol) + 2.0 * c_P * e / (3.0 * vol);
}

}  // namespace adaclust
