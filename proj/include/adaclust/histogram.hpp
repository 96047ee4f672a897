#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adaclust/cell_set.hpp"
#include "adaclust/grid_partition.hpp"

namespace adaclust {

// n points in R^d stored row-major.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  const std::vector<double>& coords() const { return coords_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

// Plain-text format: one point per line, axis values separated by commas.
// Blank lines and lines starting with '#' are skipped.
Dataset read_dataset(std::istream& in);
Dataset read_dataset_file(const std::string& path);
void write_dataset(std::ostream& out, const Dataset& data);

struct EmpiricalHistogram {
  PartitionPtr partition;
  std::vector<std::uint64_t> counts;
  std::size_t n = 0;
  // count / (n * cell measure)
  std::vector<double> values;

  double max_value() const;
};

EmpiricalHistogram fit(const Dataset& data, PartitionPtr partition);
// Single-threaded reference for fit.
EmpiricalHistogram fit_serial(const Dataset& data, PartitionPtr partition);
// 1-D data already sorted ascending; O(cells * log n).
EmpiricalHistogram fit_sorted_1d(std::span<const double> sorted, PartitionPtr partition);

// Cells with value >= rho.
CellSet level_set(const EmpiricalHistogram& h, double rho);

struct ConfidenceInputs {
  double varsigma = 1.0;
  std::optional<double> h_sup;
  double C = 1.0;

  void validate() const;
};

// c_P = 2^d for cube partitions.
double partition_constant(std::size_t d);

// E = varsigma + ln(2 c_P) - d ln delta
double confidence_term(double varsigma, double delta, double c_P, std::size_t d);

// Smallest admissible eps for an arbitrary distribution (Hoeffding form).
double eps_general(double varsigma, double delta, std::size_t n, double c_P, std::size_t d);
// Smallest admissible eps when the density is bounded by h_sup (Bernstein
// form). Throws InvalidSup for h_sup <= 0.
double eps_bounded(double varsigma, double delta, std::size_t n, double c_P, std::size_t d,
                   double h_sup);
// Data-driven eps used by width selection over a grid of grid_size widths.
// Throws SampleTooSmall for n < 16.
double eps_adaptive(double C, double varsigma, double delta, std::size_t n, double c_P,
                    std::size_t d, std::size_t grid_size);

}  // namespace adaclust
