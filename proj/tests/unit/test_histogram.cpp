#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "adaclust/histogram.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace adaclust;

namespace {

PartitionPtr unit_partition(double delta, std::size_t d = 1) { return build_partition(Box(d, Interval{0.0, 1.0}), delta); }

Dataset uniform_data(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(n * d);
  for (auto& x : xs) x = u(rng);
  return Dataset(d, xs);
}

}  // namespace

TEST_CASE("fit on a small dataset") {
  const Dataset data(1, {0.1, 0.3, 0.3, 0.9});
  const auto h = fit(data, unit_partition(1.0));
  REQUIRE(h.values.size() == 2);
  CHECK(h.counts == std::vector<std::uint64_t>{3, 1});
  CHECK(h.values[0] == doctest::Approx(1.5));
  CHECK(h.values[1] == doctest::Approx(0.5));
  CHECK(h.max_value() == doctest::Approx(1.5));
}

TEST_CASE("fit with all mass in one point") {
  const Dataset data(1, std::vector<double>(37, 0.62));
  const auto p = unit_partition(0.1);
  const auto h = fit(data, p);
  const auto cell = locate_id(*p, data.point(0));
  for (std::size_t j = 0; j < h.values.size(); ++j) {
    CHECK(h.values[j] == doctest::Approx(j == cell ? 1.0 / cell_measure(*p) : 0.0));
  }
}

TEST_CASE("fit of a large uniform sample is close to one") {
  const auto data = uniform_data(1000000, 1, 5);
  const auto h = fit(data, unit_partition(0.1));
  for (double v : h.values) CHECK(std::abs(v - 1.0) < 0.05);
}

TEST_CASE("fit errors") {
  CHECK(code_of([] { fit(Dataset(1, {}), unit_partition(0.5)); }) == ErrorCode::EmptyData);
  CHECK(code_of([] { fit(Dataset(1, {0.5, 1.5}), unit_partition(0.5)); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([] { fit(Dataset(2, {0.5, 0.5}), unit_partition(0.5)); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("parallel, serial and sorted fits agree") {
  for (std::size_t d = 1; d <= 3; ++d) {
    const auto data = uniform_data(50000, d, 17 + d);
    const auto p = unit_partition(0.07, d);
    const auto a = fit(data, p);
    const auto b = fit_serial(data, p);
    CHECK(a.counts == b.counts);
    CHECK(a.values == b.values);
    if (d == 1) {
      auto sorted = data.coords();
      std::sort(sorted.begin(), sorted.end());
      const auto c = fit_sorted_1d(sorted, p);
      CHECK(c.counts == a.counts);
    }
  }
}

TEST_CASE("histograms are normalized") {
  for (int k = 0; k < 20; ++k) {
    const std::size_t d = 1 + static_cast<std::size_t>(k % 3);
    const auto data = uniform_data(2000 + 100 * static_cast<std::size_t>(k), d, static_cast<std::uint64_t>(k));
    const auto p = unit_partition(0.05 + 0.04 * k, d);
    const auto h = fit(data, p);
    double mass = 0.0;
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < h.values.size(); ++j) {
      mass += h.values[j] * cell_measure(*p);
      total += h.counts[j];
      CHECK(h.values[j] >= 0.0);
    }
    CHECK(total == data.size());
    CHECK(std::abs(mass - 1.0) < 1e-9);
  }
}

TEST_CASE("level_set examples and antitonicity") {
  const auto h = fit(Dataset(1, {0.1, 0.3, 0.3, 0.9}), unit_partition(1.0));
  CHECK(level_set(h, 0.0).size() == 2);
  CHECK(level_set(h, 1.0).members() == std::vector<std::size_t>{0});
  CHECK(level_set(h, 1.6).empty());

  const auto big = fit(uniform_data(3000, 2, 3), unit_partition(0.04, 2));
  CellSet prev = level_set(big, 0.0);
  CHECK(prev.size() == big.values.size());
  for (int k = 1; k <= 100; ++k) {
    const CellSet next = level_set(big, big.max_value() * k / 100.0);
    CHECK(next.is_subset_of(prev));
    prev = next;
  }
}

TEST_CASE("eps_general") {
  // 2 sqrt((1 + ln 4) / 16)
  CHECK(eps_general(1.0, 1.0, 8, 2.0, 1) == doctest::Approx(0.772382).epsilon(1e-5));
  const double a = eps_general(2.0, 0.2, 1000, 2.0, 1);
  CHECK(eps_general(2.0, 0.2, 4000, 2.0, 1) == doctest::Approx(a / 2.0).epsilon(1e-14));
  CHECK(eps_general(2.0, 0.1, 1000, 2.0, 1) > 2.0 * a);
}

TEST_CASE("eps_bounded") {
  // sqrt(2 * 2 * (1 + 1) * E / 8) + 4 E / 24 with E = 1 + ln 4
  CHECK(eps_bounded(1.0, 1.0, 8, 2.0, 1, 1.0) == doctest::Approx(1.544763 + 0.397715).epsilon(1e-5));
  // The sqrt(n)-scaled value approaches the leading constant.
  const double e = 1.0 + std::log(4.0) - std::log(0.1);
  const double limit = std::sqrt(2.0 * 2.0 * 1.5 * e) / std::sqrt(0.1);
  const double big = 1e12;
  CHECK(eps_bounded(1.0, 0.1, static_cast<std::size_t>(big), 2.0, 1, 0.5) * std::sqrt(big) ==
        doctest::Approx(limit).epsilon(1e-5));
  // Doubling h_sup leaves the linear term untouched.
  const double lin = 2.0 * 2.0 * e / (3.0 * 0.1 * 500.0);
  const double r1 = eps_bounded(1.0, 0.1, 500, 2.0, 1, 0.5) - lin;
  const double r2 = eps_bounded(1.0, 0.1, 500, 2.0, 1, 1.0) - lin;
  CHECK(r2 / r1 == doctest::Approx(std::sqrt(2.0 / 1.5)));
  CHECK(code_of([] { eps_bounded(1.0, 0.1, 10, 2.0, 1, 0.0); }) == ErrorCode::InvalidSup);
  CHECK(code_of([] { eps_bounded(1.0, 0.1, 10, 2.0, 1, -1.0); }) == ErrorCode::InvalidSup);
}

TEST_CASE("eps_adaptive") {
  CHECK(eps_adaptive(1.0, 1.0, 1.0, 16, 2.0, 1, 1) == doctest::Approx(0.7505).epsilon(1e-4));
  CHECK(code_of([] { eps_adaptive(1.0, 1.0, 0.5, 15, 2.0, 1, 1); }) == ErrorCode::SampleTooSmall);
  // Multiplying the grid size by e^2 adds 2 to the log term, the same as
  // adding 2 to varsigma.
  const double g = 37.0;
  const double e2 = std::exp(2.0);
  CHECK(eps_adaptive(1.3, 1.0, 0.3, 500, 2.0, 1, static_cast<std::size_t>(g)) ==
        doctest::Approx(oracle::eps_adaptive(1.3, 3.0, 0.3, 500, 2.0, 1, g / e2)).epsilon(1e-12));
}

TEST_CASE("eps_adaptive dominates eps_bounded under the constant condition") {
  for (double C : {1.0, 1.5, 2.0, 3.0}) {
    for (std::size_t n : {16u, 100u, 10000u, 1000000u}) {
      for (double hs : {0.1, 0.5, 1.0, 3.0}) {
        if (C * C * std::log(std::log(static_cast<double>(n))) < 2.0 * (1.0 + hs)) continue;
        for (double delta : {0.01, 0.1, 0.5, 1.0}) {
          for (std::size_t grid : {1u, 10u, 1000u}) {
            CHECK(eps_adaptive(C, 2.0, delta, n, 2.0, 1, grid) >= eps_bounded(2.0, delta, n, 2.0, 1, hs));
          }
        }
      }
    }
  }
}

TEST_CASE("eps formulas against straight-line transcriptions") {
  for (std::size_t d = 1; d <= 3; ++d) {
    const double cp = partition_constant(d);
    for (double delta : {0.05, 0.3, 1.0}) {
      for (std::size_t n : {16u, 1000u, 262144u}) {
        const double dd = static_cast<double>(d);
        const double nn = static_cast<double>(n);
        CHECK(eps_general(3.0, delta, n, cp, d) == doctest::Approx(oracle::eps_general(3.0, delta, nn, cp, dd)).epsilon(1e-12));
        CHECK(eps_bounded(3.0, delta, n, cp, d, 0.2) ==
              doctest::Approx(oracle::eps_bounded(3.0, delta, nn, cp, dd, 0.2)).epsilon(1e-12));
        CHECK(eps_adaptive(2.0, 3.0, delta, n, cp, d, 9) ==
              doctest::Approx(oracle::eps_adaptive(2.0, 3.0, delta, nn, cp, dd, 9.0)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("ConfidenceInputs validation") {
  CHECK_NOTHROW(ConfidenceInputs{}.validate());
  CHECK(code_of([] { ConfidenceInputs{0.5, {}, 1.0}.validate(); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { ConfidenceInputs{1.0, {}, 0.5}.validate(); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { ConfidenceInputs{1.0, 0.0, 1.0}.validate(); }) == ErrorCode::InvalidSup);
}

TEST_CASE("dataset text round trip") {
  const Dataset data(2, {0.1, -2.5, 1.0 / 3.0, 7.0});
  std::stringstream ss;
  write_dataset(ss, data);
  const Dataset back = read_dataset(ss);
  CHECK(back.dim() == 2);
  CHECK(back.coords() == data.coords());

  std::stringstream with_comments("# header\n\n1,2\n3,4\n");
  CHECK(read_dataset(with_comments).size() == 2);
  std::stringstream ragged("1,2\n3\n");
  CHECK(code_of([&] { read_dataset(ragged); }) == ErrorCode::ParseError);
  std::stringstream junk("1,abc\n");
  CHECK(code_of([&] { read_dataset(junk); }) == ErrorCode::ParseError);
  std::stringstream empty("# nothing\n");
  CHECK(code_of([&] { read_dataset(empty); }) == ErrorCode::EmptyData);
}
