#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "rss/random.hpp"
#include "rss/weight.hpp"

using rss::Weight;

TEST_CASE("construction reduces to lowest terms") {
  const Weight w(4, 8);
  CHECK(w.numerator() == 1);
  CHECK(w.denominator() == 2);
  CHECK(w.to_double() == 0.5);
  CHECK(Weight(0, 7) == Weight::zero());
  CHECK_THROWS_AS(Weight(1, 0), std::invalid_argument);
}

TEST_CASE("dyadic queries") {
  CHECK(Weight::dyadic(3, 4).is_dyadic());
  CHECK(Weight::dyadic(3, 4).log2_denominator() == 4);
  CHECK(Weight(1, 3).is_dyadic() == false);
  CHECK_THROWS_AS(Weight(1, 3).log2_denominator(), std::domain_error);
  // reduction can change the exponent
  CHECK(Weight::dyadic(2, 3).log2_denominator() == 2);
}

TEST_CASE("exact arithmetic") {
  const Weight half(1, 2), third(1, 3);
  CHECK(half + third == Weight(5, 6));
  CHECK(half - third == Weight(1, 6));
  CHECK(half * third == Weight(1, 6));
  CHECK(half.half() == Weight(1, 4));
  CHECK(half.over(3) == Weight(1, 6));
  CHECK(half.times(2) == Weight::one());
  CHECK_THROWS_AS(third - half, std::domain_error);
}

TEST_CASE("ordering is exact under cross multiplication") {
  CHECK(Weight(1, 3) < Weight(1, 2));
  CHECK(Weight(2, 4) == Weight(1, 2));
  CHECK(Weight(999999999999999999ULL, 1000000000000000000ULL) < Weight::one());
}

TEST_CASE("overflow is detected, not wrapped") {
  const Weight big(1, 1ULL << 63);
  CHECK_THROWS_AS(big.over(4), rss::weight_overflow);
  const Weight a(1, (1ULL << 62) + 1), b(1, (1ULL << 62) - 1);
  CHECK_THROWS_AS(a + b, rss::weight_overflow);
}

TEST_CASE("random halving refinements keep the total exactly one") {
  rss::RandomStream stream(20240915);
  std::vector<Weight> parts = {Weight::one()};
  for (int step = 0; step < 4000; ++step) {
    const auto pick = static_cast<std::size_t>(stream.uniform_int(parts.size()));
    const Weight h = parts[pick].half();
    parts[pick] = h;
    parts.push_back(h);
    if (step % 200 == 0) {
      Weight total;
      for (const Weight& w : parts) total = total + w;
      REQUIRE(total == Weight::one());
    }
  }
  Weight total;
  for (const Weight& w : parts) total = total + w;
  CHECK(total == Weight::one());
}
