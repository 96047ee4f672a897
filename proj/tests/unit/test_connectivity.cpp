#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "adaclust/connectivity.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace adaclust;

namespace {

// [0, 1] with ten cells of side 0.1.
PartitionPtr tenths() { return build_partition(Box{Interval{0.0, 1.0}}, 0.11); }

double min_side(const PartitionSpec& p) {
  double s = p.side(0);
  for (std::size_t a = 1; a < p.dim(); ++a) s = std::min(s, p.side(a));
  return s;
}

std::vector<std::vector<std::size_t>> member_lists(const ComponentLabeling& l) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& c : l.components) out.push_back(c.members());
  return out;
}

PartitionPtr random_partition(std::mt19937_64& rng, std::size_t d) {
  const std::size_t max_per_axis = d == 1 ? 400 : d == 2 ? 22 : 7;
  std::uniform_int_distribution<std::size_t> cells(2, max_per_axis);
  std::uniform_real_distribution<double> width(0.5, 4.0);
  Box box;
  for (std::size_t a = 0; a < d; ++a) box.push_back({-1.0, -1.0 + width(rng)});
  return build_partition(box, 1.0 / static_cast<double>(cells(rng)));
}

}  // namespace

TEST_CASE("tau_components examples") {
  const auto p = tenths();
  const CellSet s(p, {0, 1, 5});
  CHECK(member_lists(tau_components(s, 0.15)) == std::vector<std::vector<std::size_t>>{{0, 1}, {5}});
  CHECK(tau_components(s, 5.0).count() == 1);
  CHECK(tau_components(CellSet(p, {7}), 0.01).components[0].members() == std::vector<std::size_t>{7});
  CHECK(tau_components(CellSet(p), 0.3).count() == 0);
  // Strict link: a gap of exactly tau separates.
  CHECK(tau_components(s, 0.3).count() == 2);
  CHECK(tau_components(s, 0.30000001).count() == 1);
  CHECK(code_of([&] { tau_components(s, 0.0); }) == ErrorCode::InvalidTau);
  CHECK(code_of([&] { tau_components(s, -1.0); }) == ErrorCode::InvalidTau);
}

TEST_CASE("tau_components matches breadth-first search") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 3);
    const auto p = random_partition(rng, d);
    const CellSet s = oracle::random_set(p, 0.05 + 0.6 * u(rng), rng);
    const double tau = p->side(0) * 6.0 * u(rng) + 1e-9;
    const auto got = tau_components(s, tau);
    CHECK(member_lists(got) == oracle::bfs_components(s, tau));
    // Labels agree with components and the union is the source.
    CellSet uni(p);
    const auto members = s.members();
    for (std::size_t i = 0; i < members.size(); ++i) CHECK(got.components[got.labels[i]].contains(members[i]));
    for (const auto& c : got.components) uni = uni.united(c);
    CHECK(uni == s);
  }
}

TEST_CASE("components are separated by at least tau and internally chained") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = random_partition(rng, 2);
    const CellSet s = oracle::random_set(p, 0.2, rng);
    const double tau = 1.7 * p->side(0);
    const auto l = tau_components(s, tau);
    for (std::size_t a = 0; a < l.count(); ++a) {
      for (std::size_t b = a + 1; b < l.count(); ++b) {
        double best = std::numeric_limits<double>::infinity();
        l.components[a].for_each([&](std::size_t i) {
          l.components[b].for_each([&](std::size_t j) { best = std::min(best, oracle::distance(*p, i, j)); });
        });
        CHECK(best >= tau);
      }
      CHECK(oracle::bfs_components(l.components[a], tau).size() == 1);
    }
  }
}

TEST_CASE("connected_components examples") {
  const auto p = tenths();
  CHECK(connected_components(CellSet(p, {1, 2, 3, 5, 6})).count() == 2);
  CHECK(connected_components(CellSet::full(p)).count() == 1);
  const auto q = build_partition(Box(2, Interval{0.0, 1.0}), 1.0 / 6.0);
  CellSet board(q);
  for (std::size_t id = 0; id < q->cell_count(); ++id) {
    const auto c = oracle::coords(*q, id);
    if ((c[0] + c[1]) % 2 == 0) board.insert(id);
  }
  CHECK(connected_components(board).count() == 1);
}

TEST_CASE("connected_components equals tau_components for tau up to the side") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_partition(rng, 1 + static_cast<std::size_t>(trial % 2));
    const CellSet s = oracle::random_set(p, 0.4, rng);
    const auto base = member_lists(connected_components(s));
    for (double f : {0.01, 0.5, 1.0}) CHECK(member_lists(tau_components(s, f * min_side(*p))) == base);
  }
}

TEST_CASE("tau_star examples") {
  const auto p = tenths();
  CHECK(std::isinf(tau_star(CellSet(p, {2, 3, 4}))));
  CHECK(tau_star(CellSet(p, {0, 1, 5})) == doctest::Approx(0.3));
  // Gaps of three and two missing cells.
  CHECK(tau_star(CellSet(p, {0, 4, 7})) == doctest::Approx(0.2));
  CHECK(code_of([&] { tau_star(CellSet(p)); }) == ErrorCode::EmptySet);
}

TEST_CASE("tau_star is the component threshold") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = random_partition(rng, 1 + static_cast<std::size_t>(trial % 2));
    const CellSet s = oracle::random_set(p, 0.15, rng);
    if (s.empty()) continue;
    const auto base = connected_components(s);
    const double ts = tau_star(s);
    if (base.count() <= 1) {
      CHECK(std::isinf(ts));
      continue;
    }
    // Brute-force minimum over component pairs.
    double brute = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < base.count(); ++a) {
      for (std::size_t b = a + 1; b < base.count(); ++b) {
        base.components[a].for_each([&](std::size_t i) {
          base.components[b].for_each([&](std::size_t j) { brute = std::min(brute, oracle::distance(*p, i, j)); });
        });
      }
    }
    CHECK(ts == doctest::Approx(brute).epsilon(1e-12));
    CHECK(tau_components(s, ts).count() == base.count());
    CHECK(tau_components(s, ts * (1 + 1e-9)).count() < base.count());
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("dilate examples") {
  const auto q = build_partition(Box(2, Interval{0.0, 1.0}), 0.2);
  const std::size_t center = q->flatten(CellIndex{{2, 2}});
  const CellSet one(q, {center});
  CHECK(dilate(one, 0.5 * q->side(0)).size() == 9);
  CHECK(dilate(one, 0.0).size() == 9);
  CHECK(dilate(one, 10.0).size() == q->cell_count());
  const auto p = tenths();
  CHECK(dilate(CellSet(p, {4}), 0.1).members() == std::vector<std::size_t>{2, 3, 4, 5, 6});
  CHECK(code_of([&] { dilate(one, -0.1); }) == ErrorCode::InvalidParams);
}

TEST_CASE("erode examples") {
  const auto p = tenths();
  CHECK(erode(CellSet::full(p), 0.3) == CellSet::full(p));
  CHECK(erode(CellSet(p, {2, 3, 4, 5, 6, 7}), 0.1).members() == std::vector<std::size_t>{4, 5});
}

TEST_CASE("dilate and erode match the definition") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 3);
    const auto p = random_partition(rng, d);
    const CellSet s = oracle::random_set(p, 0.1 + 0.7 * u(rng), rng);
    const double delta = p->side(0) * 4.0 * u(rng);
    const CellSet up = dilate(s, delta);
    const CellSet down = erode(s, delta);
    CHECK(oracle::as_mask(up) == oracle::dilate(s, delta));
    CHECK(oracle::as_mask(down) == oracle::erode(s, delta));
    CHECK(up == dilate_serial(s, delta));
    CHECK(down == erode_serial(s, delta));
    CHECK(down.is_subset_of(s));
    CHECK(s.is_subset_of(up));
  }
}

TEST_CASE("tube operators are monotone") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_partition(rng, 2);
    const CellSet a = oracle::random_set(p, 0.3, rng);
    const CellSet b = a.united(oracle::random_set(p, 0.1, rng));
    const double h = p->side(0);
    for (int k = 0; k < 4; ++k) {
      CHECK(dilate(a, k * h).is_subset_of(dilate(a, (k + 1) * h)));
      CHECK(erode(a, (k + 1) * h).is_subset_of(erode(a, k * h)));
      CHECK(dilate(a, k * h).is_subset_of(dilate(b, k * h)));
      CHECK(erode(a, k * h).is_subset_of(erode(b, k * h)));
    }
  }
}

TEST_CASE("compare_partitions examples") {
  const auto p = tenths();
  const std::vector<CellSet> dst{CellSet(p, {0, 1, 2, 3}), CellSet(p, {6, 7, 8})};
  const auto same = compare_partitions(dst, dst);
  CHECK(same.comparable);
  CHECK(same.bijective);
  CHECK(same.map == std::vector<std::size_t>{0, 1});

  const std::vector<CellSet> finer{CellSet(p, {0, 1}), CellSet(p, {3}), CellSet(p, {7})};
  const auto f = compare_partitions(finer, dst);
  CHECK(f.comparable);
  CHECK_FALSE(f.injective);
  CHECK(f.surjective);
  CHECK(f.map == std::vector<std::size_t>{0, 0, 1});

  const std::vector<CellSet> straddle{CellSet(p, {3, 6})};
  const auto s = compare_partitions(straddle, dst);
  CHECK_FALSE(s.comparable);
  CHECK(s.map.empty());

  const std::vector<CellSet> outside{CellSet(p, {4})};
  CHECK(code_of([&] { compare_partitions(outside, dst); }) == ErrorCode::NotNested);
  const std::vector<CellSet> overlapping{CellSet(p, {0, 1}), CellSet(p, {1, 2})};
  CHECK(code_of([&] { compare_partitions(overlapping, dst); }) == ErrorCode::InvalidParams);
  const std::vector<CellSet> other{CellSet(build_partition(Box{Interval{0.0, 1.0}}, 0.3), {0})};
  CHECK(code_of([&] { compare_partitions(other, dst); }) == ErrorCode::PartitionMismatch);
}
