#pragma once

#include <cstdint>
#include <vector>

#include "polarforge/index.hpp"

namespace polarforge {

// Fibonacci with F_0 = 0, F_1 = 1.
std::uint64_t fib(int i);

// The no-adjacent-ones ("strange attractor") index family.
//
// attractor_set(n): all n-bit indices whose MSB-first string avoids "11",
// generated by the prefix recursion  S(n) = "0" S(n-1)  |  "10" S(n-2),
// returned sorted ascending. |S(n)| = fib(n+2).
std::vector<PolarIndex> attractor_set(int n);
std::uint64_t attractor_count(int n);  // fib(n+2), n >= 1

// The sub-family that stays unreliable for base means up to pi (not only
// pi/2): the members whose first step is a minus (MSB 0). Count fib(n+1).
std::vector<PolarIndex> attractor_set_below_pi(int n);

// Fraction of indices NOT in the attractor: 1 - fib(n+2) / 2^n.
double rate1(int n);

// Exact census of the attractor complement ("has 11 somewhere"), n >= 2:
//   delta1 = sum_{t=0}^{n-3} fib(t+2) * 2^{n-t-3}   (first "11" after a
//            no-11 prefix of length t followed by "011...")
//   delta2 = 2^{n-2}                                 (strings starting "11")
//   delta  = delta1 + delta2 = 2^n - fib(n+2)
//   closed_form = sum_{t=0}^{n-1} F_t * 2^{n-1-t}    (the same number as the
//            geometric-weighted Fibonacci partial sum, evaluated exactly)
struct DeltaBreakdown {
  int n = 0;
  std::uint64_t delta1 = 0;
  std::uint64_t delta2 = 0;
  std::uint64_t delta = 0;
  std::uint64_t complement = 0;   // 2^n - fib(n+2)
  std::uint64_t closed_form = 0;
  double ratio = 0.0;             // delta / 2^n
};
DeltaBreakdown delta_formula(int n);

// Partial sum  sum_{t=0}^{terms-1} F_t / k^t  in double precision.
// Converges to k / (k^2 - k - 1) as terms -> inf (k = 2 -> 2, k = 3 -> 3/5).
double fibonacci_series_partial(int k, int terms);

// --- combined "bad set" report ----------------------------------------------

enum class LlrRegime { below_half_pi, below_pi };

struct ProvenanceEntry {
  PolarIndex index;
  // 0 = attractor seed; j >= 2 = first reached when operators up to order j
  // are allowed in the downward closure (order 1 alone never leaves a seed).
  int order = 0;
};

struct AttractorReport {
  int n = 0;
  LlrRegime regime = LlrRegime::below_half_pi;
  std::vector<ProvenanceEntry> entries;  // sorted ascending by index value
  std::uint64_t seed_count = 0;
  std::uint64_t total_count = 0;
  double rate_seeds = 0.0;    // 1 - seed_count / 2^n
  double rate_closed = 0.0;   // 1 - total_count / 2^n
};

// Seeds: attractor_set(n) for the below-pi/2 regime, attractor_set_below_pi(n)
// for the below-pi regime; then the downward closure under the universal
// operators (everything these seeds dominate is at least as unreliable).
AttractorReport bad_set(int n, LlrRegime regime, int max_order = -1);

}  // namespace polarforge
