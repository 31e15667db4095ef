#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rss/distribution.hpp"
#include "rss/random.hpp"
#include "support/quadrature.hpp"

using rss::Distribution;
namespace rt = rss::testing;

namespace {

std::vector<Distribution> test_distributions() {
  return {Distribution::uniform(0.0, 1.0), Distribution::uniform(-2.0, 5.0),
          Distribution::normal(0.0, 1.0), Distribution::normal(3.0, 0.5),
          Distribution::lognormal(-1.49, 1.27), Distribution::lognormal(0.0, 0.25),
          Distribution::truncated_normal(0.025, 0.01, 0.0,
                                         std::numeric_limits<double>::infinity()),
          Distribution::truncated_normal(0.0, 1.0, -1.0, 2.0)};
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Distribution::uniform(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::normal(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::lognormal(0.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::truncated_normal(0.0, 1.0, 2.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("inverse CDF special points") {
  CHECK(Distribution::uniform(0.0, 1.0).inv_cdf(0.5) == 0.5);
  CHECK(Distribution::normal(0.0, 1.0).inv_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));

  // lognormal median is exp(mu_log); cross-check by bisecting the CDF
  const Distribution ln = Distribution::lognormal(-1.49, 1.27);
  const double median = ln.inv_cdf(0.5);
  CHECK(median == doctest::Approx(std::exp(-1.49)).epsilon(1e-10));
  CHECK(median == doctest::Approx(rt::invert_cdf_bisection(ln, 0.5, 1e-12, 1e3)).epsilon(1e-9));
  CHECK(median == doctest::Approx(0.2254).epsilon(1e-3));
}

TEST_CASE("probability endpoints map to support bounds, clamped when unbounded") {
  const Distribution u = Distribution::uniform(-2.0, 5.0);
  CHECK(u.inv_cdf(0.0) == -2.0);
  CHECK(u.inv_cdf(1.0) == 5.0);

  const Distribution n = Distribution::normal(0.0, 1.0);
  CHECK(std::isfinite(n.inv_cdf(0.0)));
  CHECK(std::isfinite(n.inv_cdf(1.0)));
  CHECK(n.inv_cdf(0.0) < -7.0);

  const Distribution tn = Distribution::truncated_normal(0.0, 1.0, -1.0, 2.0);
  CHECK(tn.inv_cdf(0.0) == -1.0);
  CHECK(tn.inv_cdf(1.0) == 2.0);

  CHECK_THROWS_AS(n.inv_cdf(-0.1), std::domain_error);
  CHECK_THROWS_AS(n.inv_cdf(1.1), std::domain_error);
}

TEST_CASE("round trip cdf(inv_cdf(u)) over the interior") {
  rss::RandomStream stream(101);
  for (const Distribution& d : test_distributions()) {
    for (int i = 0; i < 1000; ++i) {
      const double u = 0.001 + 0.998 * stream.next_unit();
      const double x = d.inv_cdf(u);
      REQUIRE(std::fabs(d.cdf(x) - u) < 1e-9);
      // and the reverse composition at interior points
      REQUIRE(d.inv_cdf(d.cdf(x)) ==
              doctest::Approx(x).epsilon(1e-10).scale(std::fabs(x) + 1.0));
    }
  }
}

TEST_CASE("inverse CDF is monotone") {
  for (const Distribution& d : test_distributions()) {
    double prev = d.inv_cdf(0.0005);
    for (int i = 1; i <= 200; ++i) {
      const double cur = d.inv_cdf(0.0005 + 0.999 * i / 200.0);
      REQUIRE(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("conditional moments: stated cases") {
  const auto um = Distribution::uniform(0.0, 1.0).conditional_moments(0.5, 0.75);
  CHECK(um.mean == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(um.variance == doctest::Approx(0.25 * 0.25 / 12.0).epsilon(1e-12));
  CHECK(um.variance == doctest::Approx(5.208e-3).epsilon(1e-3));

  const auto nm = Distribution::normal(0.0, 1.0).conditional_moments(0.0, 1.0);
  CHECK(nm.mean == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(nm.variance == doctest::Approx(1.0).epsilon(1e-12));

  const auto upper = Distribution::normal(0.0, 1.0).conditional_moments(0.5, 0.816);
  CHECK(upper.variance == doctest::Approx(6.53e-2).epsilon(2e-3));

  CHECK_THROWS_AS(Distribution::normal(0.0, 1.0).conditional_moments(0.7, 0.7),
                  std::domain_error);
  CHECK_THROWS_AS(Distribution::normal(0.0, 1.0).conditional_moments(0.8, 0.2),
                  std::domain_error);
}

TEST_CASE("closed-form conditional moments agree with density quadrature") {
  const std::vector<std::pair<double, double>> intervals = {
      {0.0, 0.5}, {0.5, 1.0}, {0.25, 0.75}, {0.9, 1.0}, {0.0, 0.1}, {0.4426, 0.5}};
  for (const Distribution& d : test_distributions()) {
    for (const auto& [lo, hi] : intervals) {
      const auto closed = d.conditional_moments(lo, hi);
      const auto quad = rt::conditional_moments_quadrature(d, lo, hi);
      REQUIRE(closed.mean ==
              doctest::Approx(quad.mean).epsilon(1e-8).scale(1.0 + std::fabs(quad.mean)));
      REQUIRE(closed.variance ==
              doctest::Approx(quad.variance).epsilon(1e-7).scale(1.0 + quad.variance));
    }
  }
}

TEST_CASE("law of total variance over dyadic partitions") {
  rss::RandomStream stream(55);
  for (const Distribution& d : test_distributions()) {
    // random dyadic partition: recursively halve intervals a few times
    std::vector<std::pair<double, double>> parts = {{0.0, 1.0}};
    for (int split = 0; split < 12; ++split) {
      const auto pick = static_cast<std::size_t>(stream.uniform_int(parts.size()));
      const auto [lo, hi] = parts[pick];
      const double mid = 0.5 * (lo + hi);
      parts[pick] = {lo, mid};
      parts.emplace_back(mid, hi);
    }
    double mixture_mean = 0.0, mixture_second = 0.0;
    for (const auto& [lo, hi] : parts) {
      const double p = hi - lo;
      const auto m = d.conditional_moments(lo, hi);
      mixture_mean += p * m.mean;
      mixture_second += p * (m.variance + m.mean * m.mean);
    }
    const double total = mixture_second - mixture_mean * mixture_mean;
    REQUIRE(total == doctest::Approx(d.variance()).epsilon(1e-8));
    REQUIRE(mixture_mean == doctest::Approx(d.mean()).epsilon(1e-8));
  }
}

TEST_CASE("text form round trips") {
  for (const Distribution& d : test_distributions()) {
    const Distribution back = Distribution::parse(d.to_string());
    CHECK(back == d);
  }
  CHECK(Distribution::parse("TN(0.025,0.01,0,inf)").support_hi() ==
        std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(Distribution::parse("X(1,2)"), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::parse("N(1)"), std::invalid_argument);
}
