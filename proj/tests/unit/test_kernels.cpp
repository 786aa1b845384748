#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "proxkit/kernels.hpp"

using namespace proxkit;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("map_index parallel matches serial bitwise") {
  const std::size_t n = 10007;
  std::vector<double> a(n), b(n);
  auto fn = [](std::size_t i) { return std::sin(0.37 * double(i)) / (1.0 + double(i % 13)); };
  map_index(n, a.data(), fn, Exec::Serial);
  map_index(n, b.data(), fn, Exec::Parallel);
  for (std::size_t i = 0; i < n; ++i) REQUIRE(a[i] == b[i]);
}

TEST_CASE("reduce_min picks the smallest index on ties") {
  std::vector<double> buf{3.0, 1.0, 2.0, 1.0, 5.0};
  for (Exec e : {Exec::Serial, Exec::Parallel}) {
    MinLoc m = reduce_min(buf, e);
    CHECK(m.value == 1.0);
    CHECK(m.index == 1);
  }
}

TEST_CASE("reduce_min ignores inf unless everything is inf") {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> buf{inf, 4.0, inf};
  CHECK(reduce_min(buf).value == 4.0);
  std::vector<double> all{inf, inf};
  CHECK(reduce_min(all).value == inf);
}

TEST_CASE("reduce_pairs deterministic across execution policies") {
  std::mt19937_64 rng(11);
  std::vector<double> va(311), vb(173);
  for (double& v : va) v = std::uniform_real_distribution<>(-1, 1)(rng);
  for (double& v : vb) v = std::uniform_real_distribution<>(-1, 1)(rng);
  auto margin = [&](std::size_t a, std::size_t b) { return va[a] * vb[b] + 0.3; };
  auto viol = [](std::size_t, std::size_t, double m) { return m < 0.0; };
  PairReduction s = reduce_pairs(va.size(), vb.size(), margin, viol, Exec::Serial);
  PairReduction p = reduce_pairs(va.size(), vb.size(), margin, viol, Exec::Parallel);
  CHECK(s.worst == p.worst);
  CHECK(s.a == p.a);
  CHECK(s.b == p.b);
  CHECK(s.violations == p.violations);
  CHECK(s.violations > 0);
}

TEST_CASE("reduce_max_indexed") {
  std::vector<double> v{0.5, -2.0, 7.25, 7.25};
  MinLoc m = reduce_max_indexed(v.size(), [&](std::size_t i) { return v[i]; });
  CHECK(m.value == 7.25);
  CHECK(m.index == 2);
}

TEST_SUITE_END();
