#include "polarforge/attractor.hpp"

#include <algorithm>

#include "polarforge/partial_order.hpp"

namespace polarforge {

std::uint64_t fib(int i) {
  if (i < 0) throw validation_error("fib: negative argument");
  std::uint64_t a = 0, b = 1;  // F_0, F_1
  for (int k = 0; k < i; ++k) {
    const std::uint64_t next = a + b;
    a = b;
    b = next;
  }
  return a;
}

namespace {

void check_n(int n, int low = 1) {
  if (n < low || n > kMaxN) {
    throw validation_error("attractor: n out of range [" + std::to_string(low) + "," +
                           std::to_string(kMaxN) + "]");
  }
}

// Values (not PolarIndex) of the no-11 family for length m, ascending.
std::vector<std::uint32_t> no11_values(int m) {
  // S(0) = {""}, S(1) = {"0","1"}, S(m) = "0" S(m-1) | "10" S(m-2).
  std::vector<std::vector<std::uint32_t>> table(static_cast<std::size_t>(m) + 1);
  table[0] = {0u};
  if (m >= 1) table[1] = {0u, 1u};
  for (int len = 2; len <= m; ++len) {
    std::vector<std::uint32_t> cur;
    cur.reserve(table[len - 1].size() + table[len - 2].size());
    for (std::uint32_t v : table[len - 1]) cur.push_back(v);  // prefix "0"
    const std::uint32_t top = std::uint32_t{1} << (len - 1);  // prefix "10"
    for (std::uint32_t v : table[len - 2]) cur.push_back(top | v);
    table[len] = std::move(cur);
  }
  std::vector<std::uint32_t> out = std::move(table[m]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<PolarIndex> attractor_set(int n) {
  check_n(n);
  std::vector<PolarIndex> out;
  for (std::uint32_t v : no11_values(n)) out.push_back(PolarIndex{n, v});
  return out;
}

std::uint64_t attractor_count(int n) {
  check_n(n);
  return fib(n + 2);
}

std::vector<PolarIndex> attractor_set_below_pi(int n) {
  check_n(n);
  std::vector<PolarIndex> out;
  // MSB 0 and no "11" in the remaining n-1 positions: fib(n+1) members.
  for (std::uint32_t v : no11_values(n - 1)) out.push_back(PolarIndex{n, v});
  return out;
}

double rate1(int n) {
  check_n(n);
  const double total = static_cast<double>(std::uint64_t{1} << n);
  return 1.0 - static_cast<double>(attractor_count(n)) / total;
}

DeltaBreakdown delta_formula(int n) {
  check_n(n, 2);
  DeltaBreakdown d;
  d.n = n;
  for (int t = 0; t <= n - 3; ++t) {
    // no-11 prefix of length t, then "011" at positions t+1..t+3, rest free.
    d.delta1 += fib(t + 2) * (std::uint64_t{1} << (n - t - 3));
  }
  d.delta2 = std::uint64_t{1} << (n - 2);  // leading "11"
  d.delta = d.delta1 + d.delta2;
  d.complement = (std::uint64_t{1} << n) - fib(n + 2);
  for (int t = 0; t <= n - 1; ++t) {
    d.closed_form += fib(t) * (std::uint64_t{1} << (n - 1 - t));
  }
  d.ratio = static_cast<double>(d.delta) / static_cast<double>(std::uint64_t{1} << n);
  return d;
}

double fibonacci_series_partial(int k, int terms) {
  if (k < 2) throw validation_error("fibonacci_series_partial: k must be an integer >= 2");
  if (terms < 0) throw validation_error("fibonacci_series_partial: terms must be >= 0");
  // u_t = F_t / k^t obeys u_t = u_{t-1}/k + u_{t-2}/k^2; summed in index order.
  const double ik = 1.0 / static_cast<double>(k);
  double sum = 0.0, um2 = 0.0, um1 = ik;  // u_0 = 0, u_1 = 1/k
  for (int t = 0; t < terms; ++t) {
    double ut;
    if (t == 0) {
      ut = 0.0;
    } else if (t == 1) {
      ut = ik;
    } else {
      ut = um1 * ik + um2 * ik * ik;
      um2 = um1;
      um1 = ut;
    }
    sum += ut;
  }
  return sum;
}

AttractorReport bad_set(int n, LlrRegime regime, int max_order) {
  check_n(n);
  AttractorReport rep;
  rep.n = n;
  rep.regime = regime;
  const std::vector<PolarIndex> seeds = regime == LlrRegime::below_half_pi
                                            ? attractor_set(n)
                                            : attractor_set_below_pi(n);
  rep.seed_count = seeds.size();

  std::vector<bool> is_seed(std::size_t{1} << n, false);
  for (const PolarIndex& s : seeds) is_seed[s.value] = true;

  // Provenance = smallest operator menu whose downward closure reaches the
  // index. Order 1 alone cannot act (deleting a 1 from a no-11 seed yields
  // another no-11 index), so the first new arrivals appear at order 2.
  const int menu = static_cast<int>(generate_operators(n).size());
  const int top = (max_order < 0 || max_order > menu) ? menu : max_order;
  std::vector<int> order_of(std::size_t{1} << n, -1);
  for (const PolarIndex& s : seeds) order_of[s.value] = 0;
  for (int ord = 2; ord <= top; ++ord) {
    for (const PolarIndex& idx : downward_closure(seeds, ord)) {
      if (order_of[idx.value] < 0) order_of[idx.value] = ord;
    }
  }

  for (std::uint32_t v = 0; v < (std::uint32_t{1} << n); ++v) {
    if (order_of[v] >= 0) {
      rep.entries.push_back(ProvenanceEntry{PolarIndex{n, v}, order_of[v]});
    }
  }
  rep.total_count = rep.entries.size();
  const double total = static_cast<double>(std::uint64_t{1} << n);
  rep.rate_seeds = 1.0 - static_cast<double>(rep.seed_count) / total;
  rep.rate_closed = 1.0 - static_cast<double>(rep.total_count) / total;
  return rep;
}

}  // namespace polarforge
