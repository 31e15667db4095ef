#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "rss/random.hpp"

using rss::RandomStream;

TEST_CASE("identical seed and stream id replay identical sequences") {
  RandomStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids diverge") {
  RandomStream a(42, 0), b(42, 1);
  int equal = 0;
  for (int i = 0; i < 1000; ++i)
    if (a.next_u64() == b.next_u64()) ++equal;
  CHECK(equal == 0);
}

TEST_CASE("unit draws live in [0,1)") {
  RandomStream s(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("uniform handles degenerate intervals and keeps replay aligned") {
  RandomStream a(5), b(5);
  CHECK(a.uniform(0.3, 0.3) == 0.3);
  b.next_unit();  // the degenerate call must consume exactly one draw
  CHECK(a.next_u64() == b.next_u64());
  CHECK_THROWS_AS(a.uniform(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("empirical mean of 1e6 unit draws is 0.5 within the 3-sigma CLT band") {
  RandomStream s(777);
  double acc = 0.0;
  constexpr int kDraws = 1000000;
  for (int i = 0; i < kDraws; ++i) acc += s.next_unit();
  CHECK(std::fabs(acc / kDraws - 0.5) < 0.002);
}

TEST_CASE("uniform_int is in range and roughly balanced") {
  RandomStream s(9);
  std::vector<int> counts(10, 0);
  for (int i = 0; i < 100000; ++i) ++counts[static_cast<std::size_t>(s.uniform_int(10))];
  for (int c : counts) CHECK(std::fabs(c - 10000.0) < 500.0);  // ~5 sigma
  CHECK_THROWS_AS(s.uniform_int(0), std::invalid_argument);
}

TEST_CASE("shuffle produces a permutation and is reproducible") {
  RandomStream a(3), b(3);
  std::vector<int> va(50), vb(50);
  std::iota(va.begin(), va.end(), 0);
  std::iota(vb.begin(), vb.end(), 0);
  a.shuffle(va);
  b.shuffle(vb);
  CHECK(va == vb);
  std::vector<int> sorted = va;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("substreams are uncorrelated with the parent") {
  RandomStream root(2026, 5);
  RandomStream sub = root.substream(0);
  RandomStream root2(2026, 5);
  double corr = 0.0;
  constexpr int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i)
    corr += (root2.next_unit() - 0.5) * (sub.next_unit() - 0.5);
  corr /= kDraws / 12.0;  // normalize by Var[U(0,1)]
  CHECK(std::fabs(corr) < 0.05);
}
