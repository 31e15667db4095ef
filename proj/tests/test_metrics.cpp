#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rss/metrics.hpp"
#include "rss/samplers.hpp"

using namespace rss;

namespace {

PointSet points_2d(std::initializer_list<std::pair<double, double>> pts) {
  PointSet p;
  p.dim = 2;
  for (const auto& [x, y] : pts) {
    p.data.push_back(x);
    p.data.push_back(y);
  }
  return p;
}

}  // namespace

TEST_CASE("voronoi volumes of a symmetric pair") {
  const PointSet pts = points_2d({{0.25, 0.5}, {0.75, 0.5}});
  RandomStream stream(1);
  const VoronoiEstimate est = voronoi_volumes(pts, 100000, stream);
  CHECK(est.cell_volumes[0] == doctest::Approx(0.5).epsilon(0.02));
  CHECK(est.cell_volumes[1] == doctest::Approx(0.5).epsilon(0.02));
  CHECK(est.v_metric < 0.05);
  CHECK(est.cell_volumes[0] + est.cell_volumes[1] == 1.0);  // exact counts
  CHECK(!est.degenerate);
}

TEST_CASE("single point is degenerate") {
  PointSet one;
  one.dim = 2;
  one.data = {0.3, 0.9};
  RandomStream stream(2);
  const VoronoiEstimate est = voronoi_volumes(one, 10000, stream);
  CHECK(est.degenerate);
  CHECK(est.cell_volumes == std::vector<double>{1.0});
  CHECK(est.v_metric == 0.0);
  CHECK_THROWS_AS(voronoi_volumes(one, 100, stream), std::invalid_argument);
}

TEST_CASE("duplicate points resolve to the lowest index") {
  const PointSet dup = points_2d({{0.5, 0.5}, {0.5, 0.5}});
  RandomStream stream(3);
  const VoronoiEstimate est = voronoi_volumes(dup, 10000, stream);
  CHECK(est.cell_volumes[0] == 1.0);
  CHECK(est.cell_volumes[1] == 0.0);
}

TEST_CASE("kd-tree and brute force agree exactly") {
  for (int dim = 2; dim <= 5; ++dim) {
    RandomStream gen(100 + dim);
    PointSet pts;
    pts.dim = static_cast<std::size_t>(dim);
    for (int i = 0; i < 50 * dim; ++i) pts.data.push_back(gen.next_unit());

    RandomStream pa(7, 1), pb(7, 1);  // identical probe streams
    const VoronoiEstimate brute =
        voronoi_volumes(pts, 20000, pa, NearestMode::brute_force);
    const VoronoiEstimate tree = voronoi_volumes(pts, 20000, pb, NearestMode::kd_tree);
    REQUIRE(brute.cell_volumes == tree.cell_volumes);
  }
}

TEST_CASE("v-metric is stable under probe doubling") {
  RandomStream gen(9);
  const std::vector<Distribution> unit3(3, Distribution::uniform(0, 1));
  const SampleSet set = lhs(unit3, 256, gen);
  const PointSet pts = PointSet::from_u(set);
  RandomStream p1(10), p2(11);
  const double v1 = voronoi_volumes(pts, 100000, p1).v_metric;
  const double v2 = voronoi_volumes(pts, 200000, p2).v_metric;
  CHECK(std::fabs(v1 - v2) / v1 < 0.05);
}

TEST_CASE("wd2 closed form, periodicity, duplication") {
  PointSet single;
  single.dim = 1;
  single.data = {0.37};
  CHECK(wd2(single) == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-12));
  single.data = {0.91};  // translation invariance in the periodic domain
  CHECK(wd2(single) == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-12));

  RandomStream gen(12);
  PointSet pts;
  pts.dim = 3;
  for (int i = 0; i < 60; ++i) pts.data.push_back(gen.next_unit());
  const double base = wd2(pts);

  PointSet shifted = pts;
  for (std::size_t i = 0; i < shifted.data.size(); i += 3)
    shifted.data[i] = std::fmod(shifted.data[i] + 0.4, 1.0);
  CHECK(wd2(shifted) == doctest::Approx(base).epsilon(1e-12));

  PointSet doubled = pts;
  doubled.data.insert(doubled.data.end(), pts.data.begin(), pts.data.end());
  CHECK(wd2(doubled) == doctest::Approx(base).epsilon(1e-12));

  CHECK_THROWS_AS(wd2(PointSet{}), std::invalid_argument);
}

TEST_CASE("correlation stats") {
  const PointSet anti = points_2d({{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}});
  const CorrelationStats s = correlation_stats(anti);
  CHECK(s.pairwise[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(s.max_abs_rho == doctest::Approx(1.0).epsilon(1e-12));

  const PointSet ortho = points_2d({{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}});
  CHECK(correlation_stats(ortho).max_abs_rho == doctest::Approx(0.0).epsilon(1e-12));

  const PointSet flat = points_2d({{0.5, 0.1}, {0.5, 0.7}, {0.5, 0.9}});
  CHECK_THROWS_AS(correlation_stats(flat), std::invalid_argument);
}

TEST_CASE("symmetric eigenvalues on known matrices") {
  // [[2,1],[1,2]] -> {1,3}
  const auto two = symmetric_eigenvalues({2, 1, 1, 2}, 2);
  CHECK(two[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(two[1] == doctest::Approx(3.0).epsilon(1e-12));
  // diag(4,9,25)
  const auto diag = symmetric_eigenvalues({4, 0, 0, 0, 9, 0, 0, 0, 25}, 3);
  CHECK(diag[0] == doctest::Approx(4.0));
  CHECK(diag[1] == doctest::Approx(9.0));
  CHECK(diag[2] == doctest::Approx(25.0));
  // [[2,-1,0],[-1,2,-1],[0,-1,2]] -> 2 - sqrt(2), 2, 2 + sqrt(2)
  const auto tri = symmetric_eigenvalues({2, -1, 0, -1, 2, -1, 0, -1, 2}, 3);
  CHECK(tri[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-10));
  CHECK(tri[1] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(tri[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("condition number of orthogonal designs is one") {
  const PointSet grid =
      points_2d({{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.25}, {0.75, 0.75}, {0.5, 0.5}});
  CHECK(condition_number(grid) == doctest::Approx(1.0).epsilon(1e-10));

  PointSet single;
  single.dim = 1;
  single.data = {0.1, 0.4, 0.9};
  CHECK(condition_number(single) == doctest::Approx(1.0));

  // rank deficiency: identical columns
  PointSet dup;
  dup.dim = 2;
  for (double v : {0.1, 0.3, 0.8, 0.6}) {
    dup.data.push_back(v);
    dup.data.push_back(v);
  }
  CHECK(std::isinf(condition_number(dup)));

  CHECK_THROWS_AS(condition_number(points_2d({{0.1, 0.2}, {0.3, 0.4}})),
                  std::invalid_argument);
}

TEST_CASE("condition number is invariant to row permutation and sign flips") {
  RandomStream gen(31);
  PointSet pts;
  pts.dim = 3;
  for (int i = 0; i < 120; ++i) pts.data.push_back(gen.next_unit());
  const double base = condition_number(pts);

  PointSet permuted = pts;
  // swap first and last rows
  for (std::size_t d = 0; d < 3; ++d)
    std::swap(permuted.data[d], permuted.data[permuted.data.size() - 3 + d]);
  CHECK(condition_number(permuted) == doctest::Approx(base).epsilon(1e-10));

  PointSet flipped = pts;  // u -> 1-u flips the sign of the scaled column
  for (std::size_t i = 1; i < flipped.data.size(); i += 3)
    flipped.data[i] = 1.0 - flipped.data[i];
  CHECK(condition_number(flipped) == doctest::Approx(base).epsilon(1e-10));
}
