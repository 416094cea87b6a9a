#include <doctest.h>

#include <cmath>
#include <set>

#include "scaledim/distance_index.hpp"
#include "scaledim/errors.hpp"
#include "scaledim/projection.hpp"
#include "scaledim/rng.hpp"
#include "test_oracles.hpp"

using namespace scaledim;

namespace {

constexpr double kPi = 3.14159265358979323846;

PointCloud random_cloud(std::size_t n, std::size_t d, std::uint64_t seed,
                        double spread = 1.0) {
  Rng rng(seed);
  PointCloud cloud(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) cloud(i, j) = spread * rng.normal();
  }
  return cloud;
}

std::vector<std::uint32_t> selected_ids(const NeighborSelection& sel) {
  std::vector<std::uint32_t> ids;
  for (const auto& e : sel.neighbors) ids.push_back(e.id);
  return ids;
}

}  // namespace

TEST_CASE("distance index on three collinear points") {
  auto cloud = PointCloud::from_rows({{0, 0}, {1, 0}, {3, 0}});
  DistanceIndex index = build_distance_index(cloud);
  CHECK(index.s_min() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(index.s_max() == doctest::Approx(3.0).epsilon(1e-15));
  auto row0 = index.row(0);
  REQUIRE(row0.size() == 2);
  CHECK(row0[0].dist == doctest::Approx(1.0));
  CHECK(row0[0].id == 1);
  CHECK(row0[1].dist == doctest::Approx(3.0));
  CHECK(row0[1].id == 2);
}

TEST_CASE("coincident points land in the duplicate registry") {
  auto cloud =
      PointCloud::from_rows({{0, 0}, {2, 0}, {2, 0}, {5, 1}});
  DistanceIndex index = build_distance_index(cloud);
  REQUIRE(index.duplicate_pairs().size() == 1);
  CHECK(index.duplicate_pairs()[0].first == 1);
  CHECK(index.duplicate_pairs()[0].second == 2);
  CHECK(index.zero_count(1) == 1);
  CHECK(index.zero_count(2) == 1);
  CHECK(index.zero_count(0) == 0);
  CHECK(index.s_min() == doctest::Approx(2.0));  // zeros excluded
}

TEST_CASE("all-identical cloud is a degenerate input") {
  auto cloud = PointCloud::from_rows({{1, 1}, {1, 1}, {1, 1}});
  CHECK_THROWS_AS(build_distance_index(cloud), DegenerateInputError);
}

TEST_CASE("stored distances match brute-force recomputation") {
  PointCloud cloud = random_cloud(50, 3, 2024);
  DistanceIndex index = build_distance_index(cloud);
  Rng rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    auto i = static_cast<std::uint32_t>(rng.raw() % 50);
    auto row = index.row(i);
    auto pos = static_cast<std::size_t>(rng.raw() % row.size());
    double expected = oracle::distance(cloud, i, row[pos].id);
    CHECK(std::fabs(row[pos].dist - expected) < 1e-12);
  }
}

TEST_CASE("sphere neighbors pick points closest to the sphere") {
  auto cloud = PointCloud::from_rows({{0, 0}, {1, 0}, {3, 0}});
  DistanceIndex index = build_distance_index(cloud);
  NeighborSelection sel = sphere_neighbors(index, 0, 1.5, 2);
  REQUIRE(sel.neighbors.size() == 2);
  CHECK(sel.neighbors[0].id == 1);  // |1.5-1| = 0.5
  CHECK(sel.neighbors[1].id == 2);  // |1.5-3| = 1.5
}

TEST_CASE("selection below s_min matches selection at s_min") {
  PointCloud cloud = random_cloud(40, 2, 5);
  DistanceIndex index = build_distance_index(cloud);
  for (std::uint32_t center = 0; center < 40; ++center) {
    auto at_min = selected_ids(sphere_neighbors(index, center, index.s_min(), 5));
    auto below = selected_ids(
        sphere_neighbors(index, center, index.s_min() / 3.0, 5));
    CHECK(at_min == below);
  }
}

TEST_CASE("selection is constant beyond s_max") {
  PointCloud cloud = random_cloud(30, 3, 6);
  DistanceIndex index = build_distance_index(cloud);
  for (std::uint32_t center = 0; center < 30; center += 7) {
    auto at_max = selected_ids(sphere_neighbors(index, center, index.s_max(), 6));
    auto beyond = selected_ids(
        sphere_neighbors(index, center, index.s_max() * 4.0, 6));
    CHECK(at_max == beyond);
  }
}

TEST_CASE("random queries match the exhaustive-sort oracle exactly") {
  PointCloud cloud = random_cloud(100, 2, 99);
  DistanceIndex index = build_distance_index(cloud);
  Rng rng(100);
  for (int rep = 0; rep < 10; ++rep) {
    auto center = static_cast<std::uint32_t>(rng.raw() % 100);
    double s = rng.uniform_range(index.s_min() * 0.5, index.s_max() * 1.2);
    std::size_t count = 1 + rng.raw() % 20;
    auto got = selected_ids(sphere_neighbors(index, center, s, count));
    auto want = oracle::sphere_neighbors_exhaustive(cloud, center, s, count);
    CHECK(got == want);
  }
}

TEST_CASE("ties prefer the smaller distance, then the smaller id") {
  // center 0; distances: 1 (id 1), 3 (id 2), 3 (id 3)
  auto cloud =
      PointCloud::from_rows({{0, 0}, {1, 0}, {3, 0}, {0, 3}});
  DistanceIndex index = build_distance_index(cloud);
  // s = 2: |2-1| = 1 = |2-3|; smaller distance wins, then id 2 before id 3
  auto ids = selected_ids(sphere_neighbors(index, 0, 2.0, 3));
  CHECK(ids == std::vector<std::uint32_t>{1, 2, 3});
}

TEST_CASE("requesting too many neighbors fails") {
  auto cloud = PointCloud::from_rows({{0, 0}, {1, 0}, {3, 0}});
  DistanceIndex index = build_distance_index(cloud);
  CHECK_THROWS_AS(sphere_neighbors(index, 0, 1.0, 3), InsufficientPointsError);
  CHECK_NOTHROW(sphere_neighbors(index, 0, 1.0, 2));
}

TEST_CASE("angle: collinear, orthogonal and 3-d reference configurations") {
  auto cloud = PointCloud::from_rows({{0, 0}, {1, 0}, {2, 0}, {0, 1}});
  std::vector<std::uint32_t> base{1};
  CHECK(angle(cloud, 0, base, 2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(angle(cloud, 0, base, 3) == doctest::Approx(kPi / 2).epsilon(1e-12));

  auto cloud3 = PointCloud::from_rows(
      {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, std::sqrt(2.0)}});
  std::vector<std::uint32_t> base3{1, 2};
  CHECK(angle(cloud3, 0, base3, 3) == doctest::Approx(kPi / 4).epsilon(1e-12));
}

TEST_CASE("angle matches the classical Gram-Schmidt oracle") {
  Rng rng(31337);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t d = 5;
    const std::size_t k = 3;
    PointCloud cloud = random_cloud(k + 2, d, rng.raw());
    std::vector<std::uint32_t> base;
    std::vector<std::vector<double>> base_vecs;
    for (std::uint32_t b = 1; b <= k; ++b) {
      base.push_back(b);
      std::vector<double> vec(d);
      for (std::size_t j = 0; j < d; ++j) vec[j] = cloud(b, j) - cloud(0, j);
      base_vecs.push_back(vec);
    }
    std::vector<double> v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = cloud(k + 1, j) - cloud(0, j);
    double got = angle(cloud, 0, base, static_cast<std::uint32_t>(k + 1));
    double want = oracle::angle_classical_gs(base_vecs, v);
    CHECK(std::fabs(got - want) < 1e-9);
  }
}

TEST_CASE("angle handles rank-deficient bases by projecting onto the span") {
  // both base points on the x-axis: span is 1-d
  auto cloud = PointCloud::from_rows(
      {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 0, 5}});
  std::vector<std::uint32_t> base{1, 2};
  CHECK(angle(cloud, 0, base, 3) == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("degenerate angle requests throw") {
  auto cloud = PointCloud::from_rows({{0, 0}, {1, 0}, {0, 0}, {2, 2}});
  std::vector<std::uint32_t> base{1};
  CHECK_THROWS_AS(angle(cloud, 0, base, 0), DegenerateAngleError);
  CHECK_THROWS_AS(angle(cloud, 0, base, 2), DegenerateAngleError);
  std::vector<std::uint32_t> zero_base{2};
  CHECK_THROWS_AS(angle(cloud, 0, zero_base, 3), DegenerateAngleError);
  std::vector<std::uint32_t> dup_base{1, 1};
  CHECK_THROWS_AS(angle(cloud, 0, dup_base, 3), ParameterError);
}

TEST_CASE("angle stays in [0, pi/2] and is invariant to rigid motion") {
  Rng rng(4242);
  PointCloud cloud = random_cloud(12, 4, 17);
  auto rot = oracle::random_rotation(4, 555);
  std::vector<double> shift{0.3, -1.2, 2.5, 0.01};
  PointCloud moved = oracle::transform(cloud, rot, shift);
  PointCloud scaled = oracle::transform(
      cloud, oracle::random_rotation(4, 556), {0, 0, 0, 0}, 7.25);

  for (int rep = 0; rep < 50; ++rep) {
    std::uint32_t center = rng.raw() % 12;
    std::set<std::uint32_t> picked;
    while (picked.size() < 3) {
      auto c = static_cast<std::uint32_t>(rng.raw() % 12);
      if (c != center) picked.insert(c);
    }
    std::vector<std::uint32_t> ids(picked.begin(), picked.end());
    std::vector<std::uint32_t> base{ids[0], ids[1]};
    std::uint32_t apex = ids[2];

    double theta = angle(cloud, center, base, apex);
    CHECK(theta >= 0.0);
    CHECK(theta <= kPi / 2);
    CHECK(std::fabs(theta - angle(moved, center, base, apex)) < 1e-9);
    CHECK(std::fabs(theta - angle(scaled, center, base, apex)) < 1e-9);
  }
}

TEST_CASE("sphere selection commutes with rigid motion and scaling") {
  PointCloud cloud = random_cloud(60, 3, 2718);
  DistanceIndex index = build_distance_index(cloud);
  auto rot = oracle::random_rotation(3, 4);
  PointCloud moved = oracle::transform(cloud, rot, {1.0, -2.0, 0.5});
  DistanceIndex moved_index = build_distance_index(moved);
  const double c = 3.75;
  PointCloud scaled(60, 3);
  for (std::size_t i = 0; i < 60; ++i) {
    for (std::size_t j = 0; j < 3; ++j) scaled(i, j) = c * cloud(i, j);
  }
  DistanceIndex scaled_index = build_distance_index(scaled);

  Rng rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    auto center = static_cast<std::uint32_t>(rng.raw() % 60);
    double s = rng.uniform_range(index.s_min(), index.s_max());
    auto ids = selected_ids(sphere_neighbors(index, center, s, 6));
    CHECK(ids == selected_ids(sphere_neighbors(moved_index, center, s, 6)));
    CHECK(ids ==
          selected_ids(sphere_neighbors(scaled_index, center, c * s, 6)));
  }
}

TEST_CASE("permuting point order permutes ids but not the angle multiset") {
  PointCloud cloud = random_cloud(15, 3, 91);
  // reverse-order permutation
  PointCloud permuted(15, 3);
  for (std::size_t i = 0; i < 15; ++i) {
    for (std::size_t j = 0; j < 3; ++j) permuted(i, j) = cloud(14 - i, j);
  }
  DistanceIndex index = build_distance_index(cloud);
  DistanceIndex pindex = build_distance_index(permuted);

  auto collect = [](const PointCloud& cl, const DistanceIndex& idx) {
    std::vector<double> thetas;
    for (std::uint32_t i = 0; i < cl.n(); ++i) {
      auto sel = sphere_neighbors(idx, i, idx.s_min(), 2);
      std::vector<std::uint32_t> base{sel.neighbors[0].id};
      thetas.push_back(angle(cl, i, base, sel.neighbors[1].id));
    }
    std::sort(thetas.begin(), thetas.end());
    return thetas;
  };

  auto a = collect(cloud, index);
  auto b = collect(permuted, pindex);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}
