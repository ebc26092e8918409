#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "polarforge/attractor.hpp"
#include "polarforge/channels_mc.hpp"
#include "polarforge/partial_order.hpp"

using namespace polarforge;

TEST_CASE("operator menu: 1 + floor(log2 n) operators, Thue-Morse patterns") {
  CHECK(generate_operators(1).size() == 1);
  CHECK(generate_operators(2).size() == 2);
  CHECK(generate_operators(3).size() == 2);
  CHECK(generate_operators(4).size() == 3);
  CHECK(generate_operators(6).size() == 3);
  CHECK(generate_operators(8).size() == 4);
  CHECK(generate_operators(16).size() == 5);
  CHECK(generate_operators(24).size() == 5);

  const auto ops = generate_operators(16);
  CHECK(ops[0].order == 1);
  CHECK(ops[0].less_pattern == "0");
  CHECK(ops[0].more_pattern == "1");
  CHECK(ops[1].less_pattern == "01");
  CHECK(ops[1].more_pattern == "10");
  CHECK(ops[2].less_pattern == "0110");
  CHECK(ops[2].more_pattern == "1001");
  CHECK(ops[3].less_pattern == "01101001");
  CHECK(ops[3].more_pattern == "10010110");
  CHECK(ops[4].less_pattern == "0110100110010110");
  CHECK(ops[4].more_pattern == "1001011001101001");
  CHECK_THROWS_AS(generate_operators(0), validation_error);
  CHECK_THROWS_AS(generate_operators(kMaxN + 1), validation_error);
}

TEST_CASE("apply_addition") {
  const PolarIndex k = parse_index("0101", 4);
  auto r = apply_addition(k, 1);
  REQUIRE(r.has_value());
  CHECK(r->bits() == "1101");
  CHECK_FALSE(apply_addition(k, 2).has_value());  // already a 1
  CHECK_FALSE(apply_addition(k, 4).has_value());
  CHECK(apply_addition(k, 3)->bits() == "0111");
  CHECK_THROWS_AS(apply_addition(k, 0), validation_error);
  CHECK_THROWS_AS(apply_addition(k, 5), validation_error);
}

TEST_CASE("apply_left_swap moves a 1 to the left, across any gap") {
  const PolarIndex k = parse_index("0101", 4);
  auto r0 = apply_left_swap(k, 1, 0);
  REQUIRE(r0.has_value());
  CHECK(r0->bits() == "1001");
  auto r3 = apply_left_swap(k, 3, 0);
  REQUIRE(r3.has_value());
  CHECK(r3->bits() == "0110");
  auto rg = apply_left_swap(k, 1, 2);  // bits 1 and 4
  REQUIRE(rg.has_value());
  CHECK(rg->bits() == "1100");
  CHECK_FALSE(apply_left_swap(k, 2, 0).has_value());  // (1,0) is a down-step
  CHECK_FALSE(apply_left_swap(k, 1, 1).has_value());  // (0,0) does not match
  CHECK_THROWS_AS(apply_left_swap(k, 4, 0), validation_error);
  CHECK_THROWS_AS(apply_left_swap(k, 1, 3), validation_error);
  CHECK_THROWS_AS(apply_left_swap(k, 1, -1), validation_error);
}

TEST_CASE("apply_multiple: half-block rewrite with arbitrary gap") {
  const auto ops = generate_operators(6);
  const OrderOperator& op3 = ops[2];
  REQUIRE(op3.order == 3);

  // Contiguous: 0110xx -> 1001xx.
  auto c = apply_multiple(parse_index("011000", 6), op3, 1);
  REQUIRE(c.has_value());
  CHECK(c->bits() == "100100");

  // Gapped: halves "01", "10" separated by one position; 011100 -> 101010.
  auto g = apply_multiple(parse_index("011100", 6), op3, 1, 1);
  REQUIRE(g.has_value());
  CHECK(g->bits() == "101010");

  CHECK_FALSE(apply_multiple(parse_index("011100", 6), op3, 1, 0).has_value());
  CHECK_FALSE(apply_multiple(parse_index("111100", 6), op3, 1, 1).has_value());
  CHECK_THROWS_AS(apply_multiple(parse_index("011000", 6), op3, 4, 0), validation_error);
  CHECK_THROWS_AS(apply_multiple(parse_index("011000", 6), op3, 1, 3), validation_error);
  CHECK_THROWS_AS(apply_multiple(parse_index("011000", 6), ops[1], 1, 0), validation_error);
}

TEST_CASE("dominates: canonical relations and witness replay") {
  // Reflexive with an empty witness.
  auto self = dominates(parse_index("0110", 4), parse_index("0110", 4));
  REQUIRE(self.has_value());
  CHECK(self->witness.empty());

  // 1001 dominates 0110 -- exactly the order-3 rewrite, not reachable below it.
  auto rel = dominates(parse_index("1001", 4), parse_index("0110", 4));
  REQUIRE(rel.has_value());
  REQUIRE(rel->witness.size() == 1);
  CHECK(rel->witness[0].order == 3);
  CHECK_FALSE(dominates(parse_index("1001", 4), parse_index("0110", 4), 2).has_value());
  CHECK_FALSE(dominates(parse_index("0110", 4), parse_index("1001", 4)).has_value());

  // The gapped chain: 101010 dominates 011100.
  auto gapped = dominates(parse_index("101010", 6), parse_index("011100", 6));
  REQUIRE(gapped.has_value());

  // Replay every witness step from `less` and land exactly on `more`.
  const auto ops6 = generate_operators(6);
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"011100", "101010"}, {"001110", "101010"}, {"010110", "101010"}, {"000101", "100100"}};
  for (const auto& pair : pairs) {
    auto r = dominates(parse_index(pair.second, 6), parse_index(pair.first, 6));
    REQUIRE(r.has_value());
    PolarIndex cur = parse_index(pair.first, 6);
    for (const WitnessStep& s : r->witness) {
      std::optional<PolarIndex> next;
      if (s.order == 1) {
        next = apply_addition(cur, s.position);
      } else if (s.order == 2) {
        next = apply_left_swap(cur, s.position, s.gap);
      } else {
        next = apply_multiple(cur, ops6[static_cast<std::size_t>(s.order - 1)], s.position,
                              s.gap);
      }
      REQUIRE(next.has_value());
      CHECK(next->value > cur.value);
      cur = *next;
    }
    CHECK(cur.bits() == pair.second);
  }
  CHECK_THROWS_AS(dominates(parse_index("01", 2), parse_index("011", 3)), validation_error);
}

TEST_CASE("up_steps targets strictly increase and replay consistently") {
  for (std::uint32_t v : {0u, 5u, 21u, 44u, 63u}) {
    for (const auto& [step, target] : up_steps(v, 6)) {
      CHECK(target > v);
      CHECK(step.order >= 1);
      CHECK(step.order <= 3);
    }
  }
  // Order-1-only menu yields exactly the zero-bit count of additions.
  CHECK(up_steps(0b0101, 4, 1).size() == 2);
  CHECK(up_steps(0, 4, 1).size() == 4);
  CHECK(up_steps(0b1111, 4).empty());
}

TEST_CASE("closures: attractor seeds close downward to the pinned 36-set") {
  const std::uint32_t expected[36] = {0,  1,  2,  3,  4,  5,  6,  7,  8,  9,  10, 11,
                                      12, 13, 14, 16, 17, 18, 19, 20, 21, 22, 24, 25,
                                      26, 28, 32, 33, 34, 35, 36, 37, 38, 40, 41, 42};
  const auto closure = downward_closure(attractor_set(6));
  REQUIRE(closure.size() == 36);
  for (std::size_t i = 0; i < 36; ++i) CHECK(closure[i].value == expected[i]);

  // Without the order-3 operator the closure is strictly smaller: 011100 is
  // reachable only through the gapped order-3 rewrite.
  const auto closure2 = downward_closure(attractor_set(6), 2);
  CHECK(closure2.size() == 35);
  bool has28 = false;
  for (const auto& k : closure2) has28 = has28 || k.value == 28;
  CHECK_FALSE(has28);

  CHECK(downward_closure({}).empty());
}

TEST_CASE("upward closure basics") {
  const auto up = upward_closure({parse_index("0110", 4)});
  std::set<std::uint32_t> got;
  for (const auto& k : up) got.insert(k.value);
  CHECK(got.count(6) == 1);  // seed included
  for (std::uint32_t v : {7u, 9u, 10u, 12u, 14u}) CHECK(got.count(v) == 1);
  CHECK(got.count(5) == 0);  // smaller value cannot be dominated upward
  // Everything in the closure is at least as reliable on the BEC.
  for (const auto& k : up) {
    CHECK(bec_z(0.5, k) <= bec_z(0.5, parse_index("0110", 4)) + 1e-15);
  }
  // Ascending order.
  CHECK(std::is_sorted(up.begin(), up.end()));
}

TEST_CASE("dominance matrix agrees with BFS dominates() exhaustively at n=4,5") {
  for (int n : {4, 5}) {
    const DominanceMatrix matrix(n);
    const std::uint32_t total = 1u << n;
    for (std::uint32_t more = 0; more < total; ++more) {
      for (std::uint32_t less = 0; less < total; ++less) {
        const bool via_bfs =
            dominates(make_index(n, more), make_index(n, less)).has_value();
        CHECK(matrix.get(more, less) == via_bfs);
      }
    }
  }
  CHECK_THROWS_AS(DominanceMatrix(13), validation_error);
}

TEST_CASE("BEC consistency: every dominance relation lowers the erasure probability") {
  for (int n = 1; n <= 8; ++n) {
    const DominanceMatrix matrix(n);
    const std::uint32_t total = 1u << n;
    for (int e = 1; e <= 9; ++e) {
      const double eps = 0.1 * e;
      std::vector<double> z(total);
      for (std::uint32_t v = 0; v < total; ++v) z[v] = bec_z(eps, make_index(n, v));
      std::uint64_t violations = 0;
      for (std::uint32_t more = 0; more < total; ++more) {
        for (std::uint32_t less = 0; less < total; ++less) {
          if (more == less || !matrix.get(more, less)) continue;
          if (z[more] > z[less]) ++violations;
        }
      }
      CHECK(violations == 0);
    }
  }
}
