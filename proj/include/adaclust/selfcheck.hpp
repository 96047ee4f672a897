#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adaclust {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Randomized property suite: tau-components against breadth-first search on
// the pairwise distance graph, tube laws, histogram normalization, level-set
// antitonicity, density normalization and analytic level-set nesting.
std::vector<CheckResult> run_selfcheck(std::uint64_t seed);

}  // namespace adaclust
