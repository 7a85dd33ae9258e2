#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rata/rng.hpp"

using namespace rata;

TEST_CASE("identical seeds replay the same stream", "[rng]") {
  Rng a(7), b(7);
  for (int i = 0; i < 1000; ++i) CHECK(a.uniform01() == b.uniform01());
}

TEST_CASE("derived stream seeds decorrelate", "[rng]") {
  CHECK(derive_seed(42, kStreamConstellation) != derive_seed(42, kStreamWorkload));
  CHECK(derive_seed(42, kStreamWorkload) != derive_seed(42, kStreamEngine));
  CHECK(derive_seed(42, kStreamWorkload) != derive_seed(43, kStreamWorkload));
}

TEST_CASE("uniform01 stays in the half-open unit interval", "[rng]") {
  Rng rng(11);
  for (int i = 0; i < 100000; ++i) {
    double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform respects its bounds", "[rng]") {
  Rng rng(13);
  for (int i = 0; i < 10000; ++i) {
    double v = rng.uniform(-3.0, 5.5);
    CHECK(v >= -3.0);
    CHECK(v < 5.5);
  }
}

TEST_CASE("exponential draws have the configured mean", "[rng]") {
  Rng rng(17);
  const int n = 200000;
  const double rate = 2.0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = rng.exponential(rate);
    REQUIRE(x >= 0.0);
    sum += x;
  }
  double mean = sum / n;
  // standard error is mean/sqrt(n); allow four of them
  CHECK(std::abs(mean - 0.5) < 4.0 * 0.5 / std::sqrt(double(n)));
}

TEST_CASE("below covers the full range and nothing else", "[rng]") {
  Rng rng(19);
  const std::size_t n = 7;
  std::array<int, 7> seen{};
  for (int i = 0; i < 20000; ++i) {
    std::size_t v = rng.below(n);
    REQUIRE(v < n);
    ++seen[v];
  }
  for (int count : seen) CHECK(count > 0);
}
