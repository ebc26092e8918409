#include "polarforge/partial_order.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace polarforge {

namespace {

int operator_count_for(int n) {
  int count = 1, p = 2;
  while (p <= n) {
    ++count;
    p <<= 1;
  }
  return count;  // 1 + floor(log2 n)
}

int resolve_max_order(int n, int max_order) {
  const int menu = operator_count_for(n);
  if (max_order < 0 || max_order > menu) return menu;
  if (max_order == 0) throw validation_error("max_order must be >= 1 (or negative for all)");
  return max_order;
}

std::uint32_t pattern_value(const std::string& bits) {
  std::uint32_t v = 0;
  for (char c : bits) v = (v << 1) | static_cast<std::uint32_t>(c - '0');
  return v;
}

// Read/write a length-`len` field whose first (most significant) bit sits at
// 1-based position `pos` of an n-bit MSB-first string.
std::uint32_t read_field(std::uint32_t value, int n, int pos, int len) {
  const int shift = n - (pos + len - 1);
  return (value >> shift) & ((std::uint32_t{1} << len) - 1);
}

std::uint32_t write_field(std::uint32_t value, int n, int pos, int len, std::uint32_t field) {
  const int shift = n - (pos + len - 1);
  const std::uint32_t mask = ((std::uint32_t{1} << len) - 1) << shift;
  return (value & ~mask) | (field << shift);
}

struct PatternPair {
  int half_len;
  std::uint32_t less_a, less_b;  // halves of A_order
  std::uint32_t more_a, more_b;  // halves of B_order
};

PatternPair split_operator(const OrderOperator& op) {
  const int len = static_cast<int>(op.less_pattern.size());
  const int h = len / 2;
  PatternPair p;
  p.half_len = h;
  p.less_a = pattern_value(op.less_pattern.substr(0, h));
  p.less_b = pattern_value(op.less_pattern.substr(h));
  p.more_a = pattern_value(op.more_pattern.substr(0, h));
  p.more_b = pattern_value(op.more_pattern.substr(h));
  return p;
}

}  // namespace

std::vector<OrderOperator> generate_operators(int n) {
  if (n < 1 || n > kMaxN) {
    throw validation_error("generate_operators: n out of range [1," + std::to_string(kMaxN) + "]");
  }
  const int count = operator_count_for(n);
  std::vector<OrderOperator> ops;
  std::string a = "0", b = "1";
  for (int order = 1; order <= count; ++order) {
    ops.push_back(OrderOperator{order, a, b});
    std::string a2 = a + b, b2 = b + a;
    a = std::move(a2);
    b = std::move(b2);
  }
  return ops;
}

std::optional<PolarIndex> apply_addition(const PolarIndex& k, int position) {
  if (position < 1 || position > k.n) {
    throw validation_error("apply_addition: position " + std::to_string(position) +
                           " out of range [1," + std::to_string(k.n) + "]");
  }
  const std::uint32_t mask = std::uint32_t{1} << (k.n - position);
  if (k.value & mask) return std::nullopt;
  return PolarIndex{k.n, k.value | mask};
}

std::optional<PolarIndex> apply_left_swap(const PolarIndex& k, int position, int gap) {
  if (gap < 0) throw validation_error("apply_left_swap: gap must be >= 0");
  const int right = position + gap + 1;
  if (position < 1 || right > k.n) {
    throw validation_error("apply_left_swap: positions (" + std::to_string(position) + "," +
                           std::to_string(right) + ") out of range [1," + std::to_string(k.n) +
                           "]");
  }
  const std::uint32_t left_mask = std::uint32_t{1} << (k.n - position);
  const std::uint32_t right_mask = std::uint32_t{1} << (k.n - right);
  if ((k.value & left_mask) || !(k.value & right_mask)) return std::nullopt;
  return PolarIndex{k.n, (k.value | left_mask) & ~right_mask};
}

std::optional<PolarIndex> apply_multiple(const PolarIndex& k, const OrderOperator& op,
                                         int position, int gap) {
  if (op.order < 3) {
    throw validation_error("apply_multiple: operator order must be >= 3");
  }
  const int len = static_cast<int>(op.less_pattern.size());
  if (len != (1 << (op.order - 1)) ||
      op.more_pattern.size() != static_cast<std::size_t>(len)) {
    throw validation_error("apply_multiple: malformed operator patterns");
  }
  if (gap < 0) throw validation_error("apply_multiple: gap must be >= 0");
  if (position < 1 || position + len + gap - 1 > k.n) {
    throw validation_error("apply_multiple: pattern does not fit at position " +
                           std::to_string(position) + " with gap " + std::to_string(gap));
  }
  const PatternPair p = split_operator(op);
  const int pos2 = position + p.half_len + gap;
  if (read_field(k.value, k.n, position, p.half_len) != p.less_a ||
      read_field(k.value, k.n, pos2, p.half_len) != p.less_b) {
    return std::nullopt;
  }
  std::uint32_t v = write_field(k.value, k.n, position, p.half_len, p.more_a);
  v = write_field(v, k.n, pos2, p.half_len, p.more_b);
  return PolarIndex{k.n, v};
}

namespace {

// Direction-generic single-step enumeration. Upward: less-pattern -> more
// (value strictly increases). Downward: the inverse rewrite.
template <typename Fn>
void for_each_step(std::uint32_t value, int n, int max_order, bool upward, Fn&& emit) {
  const int top = resolve_max_order(n, max_order);
  static thread_local std::vector<OrderOperator> ops_cache;
  static thread_local int ops_cache_n = -1;
  if (ops_cache_n != n) {
    ops_cache = generate_operators(n);
    ops_cache_n = n;
  }

  // Order 1: addition (or its inverse, deletion).
  for (int pos = 1; pos <= n; ++pos) {
    const std::uint32_t mask = std::uint32_t{1} << (n - pos);
    if (upward ? !(value & mask) : (value & mask) != 0) {
      emit(WitnessStep{1, pos, 0}, upward ? (value | mask) : (value & ~mask));
    }
  }
  if (top < 2) return;

  // Order 2: left swap (0,1) -> (1,0) across any gap (or its inverse).
  for (int pos = 1; pos < n; ++pos) {
    for (int gap = 0; pos + gap + 1 <= n; ++gap) {
      const int right = pos + gap + 1;
      const std::uint32_t lm = std::uint32_t{1} << (n - pos);
      const std::uint32_t rm = std::uint32_t{1} << (n - right);
      const bool lbit = (value & lm) != 0, rbit = (value & rm) != 0;
      if (upward ? (!lbit && rbit) : (lbit && !rbit)) {
        emit(WitnessStep{2, pos, gap}, (value ^ lm) ^ rm);
      }
    }
  }

  // Orders >= 3: gapped half-block rewrites.
  for (int order = 3; order <= top; ++order) {
    const OrderOperator& op = ops_cache[static_cast<std::size_t>(order - 1)];
    const PatternPair p = split_operator(op);
    const int h = p.half_len;
    const std::uint32_t src_a = upward ? p.less_a : p.more_a;
    const std::uint32_t src_b = upward ? p.less_b : p.more_b;
    const std::uint32_t dst_a = upward ? p.more_a : p.less_a;
    const std::uint32_t dst_b = upward ? p.more_b : p.less_b;
    for (int pos = 1; pos + 2 * h - 1 <= n; ++pos) {
      for (int gap = 0; pos + 2 * h + gap - 1 <= n; ++gap) {
        const int pos2 = pos + h + gap;
        if (read_field(value, n, pos, h) == src_a &&
            read_field(value, n, pos2, h) == src_b) {
          std::uint32_t v = write_field(value, n, pos, h, dst_a);
          v = write_field(v, n, pos2, h, dst_b);
          emit(WitnessStep{order, pos, gap}, v);
        }
      }
    }
  }
}

}  // namespace

std::vector<std::pair<WitnessStep, std::uint32_t>> up_steps(std::uint32_t value, int n,
                                                            int max_order) {
  std::vector<std::pair<WitnessStep, std::uint32_t>> out;
  for_each_step(value, n, max_order, true, [&](WitnessStep s, std::uint32_t v) {
    if (v <= value) {
      throw numeric_error("internal: upward operator step failed to increase the index value");
    }
    out.emplace_back(s, v);
  });
  return out;
}

std::optional<DominanceRelation> dominates(const PolarIndex& more, const PolarIndex& less,
                                           int max_order) {
  if (more.n != less.n) {
    throw validation_error("dominates: indices must share the same n");
  }
  const int n = more.n;
  DominanceRelation rel{less, more, {}};
  if (more.value == less.value) return rel;  // reflexive, empty witness

  // Every operator step preserves or increases Hamming weight and strictly
  // increases the integer value, so these two prunes are sound.
  if (hamming_weight(more) < hamming_weight(less)) return std::nullopt;
  if (more.value < less.value) return std::nullopt;

  struct FromStep {
    std::uint32_t parent;
    WitnessStep step;
  };
  std::unordered_map<std::uint32_t, FromStep> seen;
  std::deque<std::uint32_t> queue{less.value};
  seen.emplace(less.value, FromStep{less.value, {}});
  while (!queue.empty()) {
    const std::uint32_t cur = queue.front();
    queue.pop_front();
    bool found = false;
    for_each_step(cur, n, max_order, true, [&](WitnessStep s, std::uint32_t v) {
      if (found || v > more.value) return;  // steps only increase value
      if (seen.emplace(v, FromStep{cur, s}).second) {
        if (v == more.value) {
          found = true;
        } else {
          queue.push_back(v);
        }
      }
    });
    if (found) break;
  }
  auto it = seen.find(more.value);
  if (it == seen.end()) return std::nullopt;
  // Reconstruct the witness chain from less to more.
  std::vector<WitnessStep> chain;
  std::uint32_t cur = more.value;
  while (cur != less.value) {
    const FromStep& f = seen.at(cur);
    chain.push_back(f.step);
    cur = f.parent;
  }
  std::reverse(chain.begin(), chain.end());
  rel.witness = std::move(chain);
  return rel;
}

namespace {

std::vector<PolarIndex> closure_impl(const std::vector<PolarIndex>& seeds, int max_order,
                                     bool upward) {
  if (seeds.empty()) return {};
  const int n = seeds.front().n;
  for (const PolarIndex& s : seeds) {
    if (s.n != n) throw validation_error("closure: seeds must share the same n");
    if (s.value >= (std::uint64_t{1} << n)) {
      throw validation_error("closure: seed value out of range");
    }
  }
  std::vector<bool> seen(std::size_t{1} << n, false);
  std::deque<std::uint32_t> queue;
  for (const PolarIndex& s : seeds) {
    if (!seen[s.value]) {
      seen[s.value] = true;
      queue.push_back(s.value);
    }
  }
  while (!queue.empty()) {
    const std::uint32_t cur = queue.front();
    queue.pop_front();
    for_each_step(cur, n, max_order, upward, [&](WitnessStep, std::uint32_t v) {
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    });
  }
  std::vector<PolarIndex> out;
  for (std::uint32_t v = 0; v < (std::uint32_t{1} << n); ++v) {
    if (seen[v]) out.push_back(PolarIndex{n, v});
  }
  return out;
}

}  // namespace

std::vector<PolarIndex> upward_closure(const std::vector<PolarIndex>& seeds, int max_order) {
  return closure_impl(seeds, max_order, true);
}

std::vector<PolarIndex> downward_closure(const std::vector<PolarIndex>& seeds, int max_order) {
  return closure_impl(seeds, max_order, false);
}

DominanceMatrix::DominanceMatrix(int n, int max_order) : n_(n) {
  if (n < 1 || n > 12) {
    throw validation_error("DominanceMatrix: dense reachability supports n in [1,12]");
  }
  const std::size_t count = std::size_t{1} << n;
  words_per_row_ = (count + 63) / 64;
  bits_.assign(count * words_per_row_, 0);
  // Upward steps strictly increase the value, so filling rows in descending
  // order makes every successor row complete before it is merged.
  for (std::uint32_t v = static_cast<std::uint32_t>(count); v-- > 0;) {
    std::uint64_t* row = bits_.data() + std::size_t{v} * words_per_row_;
    row[v >> 6] |= std::uint64_t{1} << (v & 63);
    for_each_step(v, n, max_order, true, [&](WitnessStep, std::uint32_t w) {
      const std::uint64_t* src = bits_.data() + std::size_t{w} * words_per_row_;
      for (std::size_t i = 0; i < words_per_row_; ++i) row[i] |= src[i];
    });
  }
}

bool DominanceMatrix::get(std::uint32_t more, std::uint32_t less) const {
  const std::uint64_t* row = bits_.data() + std::size_t{less} * words_per_row_;
  return (row[more >> 6] >> (more & 63)) & 1;
}

}  // namespace polarforge
