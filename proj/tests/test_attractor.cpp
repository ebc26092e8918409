#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "polarforge/attractor.hpp"
#include "polarforge/index.hpp"

using namespace polarforge;

TEST_CASE("fibonacci") {
  CHECK(fib(0) == 0);
  CHECK(fib(1) == 1);
  CHECK(fib(2) == 1);
  CHECK(fib(3) == 2);
  CHECK(fib(10) == 55);
  CHECK(fib(26) == 121393);
  CHECK_THROWS_AS(fib(-1), validation_error);
}

TEST_CASE("attractor set: no-11 strings, fib(n+2) of them, ascending") {
  for (int n = 1; n <= 12; ++n) {
    const auto fam = attractor_set(n);
    CHECK(fam.size() == fib(n + 2));
    CHECK(attractor_count(n) == fib(n + 2));
    CHECK(std::is_sorted(fam.begin(), fam.end()));
    for (const auto& k : fam) CHECK_FALSE(has_adjacent_ones(k));
    // Completeness: count all no-11 values directly.
    std::uint32_t direct = 0;
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << n); ++v) {
      if ((v & (v >> 1)) == 0) ++direct;
    }
    CHECK(direct == fam.size());
  }
  CHECK(attractor_count(16) == 2584);
  CHECK(attractor_count(24) == fib(26));
}

TEST_CASE("below-pi subset: MSB zero, fib(n+1) members") {
  for (int n = 1; n <= 12; ++n) {
    const auto fam = attractor_set_below_pi(n);
    CHECK(fam.size() == fib(n + 1));
    for (const auto& k : fam) {
      CHECK(k.bit(1) == 0);
      CHECK_FALSE(has_adjacent_ones(k));
    }
  }
}

TEST_CASE("rate-one fraction pins (4 decimal places)") {
  const double pins[11] = {0.6719, 0.7344, 0.7852, 0.8262, 0.8594, 0.8862,
                           0.9080, 0.9255, 0.9398, 0.9513, 0.9606};
  for (int n = 6; n <= 16; ++n) {
    CHECK(std::fabs(rate1(n) - pins[n - 6]) < 5e-5);
    const double expect =
        1.0 - static_cast<double>(fib(n + 2)) / static_cast<double>(std::uint64_t{1} << n);
    CHECK(rate1(n) == expect);
  }
}

TEST_CASE("delta formula: closed form equals direct sum equals complement") {
  for (int n = 2; n <= 20; ++n) {
    const DeltaBreakdown d = delta_formula(n);
    CHECK(d.delta == d.delta1 + d.delta2);
    CHECK(d.delta == d.closed_form);
    CHECK(d.delta == d.complement);
    CHECK(d.delta == (std::uint64_t{1} << n) - fib(n + 2));
  }
  CHECK(delta_formula(3).delta == 3);
  CHECK(delta_formula(6).delta == 43);
  CHECK(delta_formula(20).delta == 1030865);
  CHECK(std::fabs(delta_formula(20).ratio - 0.98310947418212891) <= 1e-12);
  CHECK_THROWS_AS(delta_formula(1), validation_error);
}

TEST_CASE("fibonacci series partial sums") {
  // sum_{t>=1} F_t / 2^t = 2; sixty terms still miss it by ~7e-6.
  const double s60 = fibonacci_series_partial(2, 60);
  CHECK(std::fabs(s60 - 1.9999929696175816) <= 1e-12);
  CHECK(std::fabs(s60 - 2.0) > 1e-6);
  CHECK(std::fabs(fibonacci_series_partial(2, 106) - 2.0) <= 1e-9);
  // sum_{t>=1} F_t / 3^t = 0.6 converges much faster.
  CHECK(std::fabs(fibonacci_series_partial(3, 60) - 0.6) <= 1e-9);
  CHECK(fibonacci_series_partial(2, 0) == 0.0);
  CHECK(fibonacci_series_partial(2, 2) == 0.5);  // t=0,1
  CHECK_THROWS_AS(fibonacci_series_partial(1, 10), validation_error);
  CHECK_THROWS_AS(fibonacci_series_partial(2, -1), validation_error);
}

TEST_CASE("bad_set: n=6 below-half-pi census") {
  const AttractorReport rep = bad_set(6, LlrRegime::below_half_pi);
  CHECK(rep.seed_count == 21);
  CHECK(rep.total_count == 36);
  CHECK(std::fabs(rep.rate_seeds - (1.0 - 21.0 / 64.0)) <= 1e-15);
  CHECK(std::fabs(rep.rate_closed - (1.0 - 36.0 / 64.0)) <= 1e-15);

  std::uint64_t by_order[4] = {0, 0, 0, 0};
  for (const auto& e : rep.entries) {
    REQUIRE(e.order >= 0);
    REQUIRE(e.order != 1);  // order 1 alone cannot leave the no-11 family
    REQUIRE(e.order <= 3);
    ++by_order[e.order];
  }
  CHECK(by_order[0] == 21);
  CHECK(by_order[2] == 14);
  CHECK(by_order[3] == 1);
  // The single order-3-only member is the gapped rewrite target 011100.
  for (const auto& e : rep.entries) {
    if (e.order == 3) CHECK(e.index.bits() == "011100");
  }
}

TEST_CASE("bad_set: n=6 below-pi census") {
  const AttractorReport rep = bad_set(6, LlrRegime::below_pi);
  CHECK(rep.seed_count == 13);  // fib(7)
  CHECK(rep.total_count == 21);
}

TEST_CASE("bad_set respects max_order") {
  const AttractorReport rep1 = bad_set(6, LlrRegime::below_half_pi, 1);
  CHECK(rep1.total_count == 21);  // additions alone add nothing
  const AttractorReport rep2 = bad_set(6, LlrRegime::below_half_pi, 2);
  CHECK(rep2.total_count == 35);  // everything except 011100
}
