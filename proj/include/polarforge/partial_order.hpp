#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarforge/index.hpp"

namespace polarforge {

// A universal dominance operator. With the complementary pattern pair
// A_1 = "0", B_1 = "1", A_{j+1} = A_j B_j, B_{j+1} = B_j A_j
// (A_2 = "01", B_2 = "10", A_3 = "0110", B_3 = "1001", ...), the order-i
// operator rewrites A_i -> B_i:
//   1: addition            0 -> 1 at one position
//   2: left swap           (0,1) -> (1,0), the '1' moving left across any gap
//   i >= 3: block multiple A_i -> B_i, acting on the two halves A_{i-1} and
//      B_{i-1} (each of length 2^{i-2}), which sit at aligned offsets
//      separated by an arbitrary gap of untouched positions; gap 0 is the
//      contiguous rewrite, and order 2 seen the same way is exactly the swap.
struct OrderOperator {
  int order = 0;
  std::string less_pattern;  // A_order, the pattern on the less-reliable side
  std::string more_pattern;  // B_order
};

// The operator menu for block length 2^n: orders 1 .. 1 + floor(log2(n)).
// n=16 yields five operators, n=6 yields three.
std::vector<OrderOperator> generate_operators(int n);

// One step along an operator. All positions are 1-based, MSB-first.
// Out-of-range position/arguments -> validation_error; a well-formed position
// whose bits do not match the pattern -> nullopt.

// Order 1: set bit at `position` (requires a 0 there).
std::optional<PolarIndex> apply_addition(const PolarIndex& k, int position);

// Order 2: bits (position, position + gap + 1) change (0,1) -> (1,0);
// gap >= 0 intervening positions are untouched.
std::optional<PolarIndex> apply_left_swap(const PolarIndex& k, int position, int gap);

// Order >= 3: the two halves of op.less_pattern must occur at
// [position, position+h) and [position+h+gap, position+h+gap+h) with
// h = len/2; they are rewritten to the halves of op.more_pattern.
std::optional<PolarIndex> apply_multiple(const PolarIndex& k, const OrderOperator& op,
                                         int position, int gap = 0);

struct WitnessStep {
  int order = 0;
  int position = 0;  // 1-based position of the first rewritten bit
  int gap = 0;       // untouched positions between the two pattern halves
};

struct DominanceRelation {
  PolarIndex less;
  PolarIndex more;
  std::vector<WitnessStep> witness;  // chain applied to `less`, in order
};

// Does `more` dominate `less` (is it universally at least as reliable)?
// Breadth-first search over operator steps upward from `less`; max_order < 0
// means every operator available at this n. Reflexive with empty witness.
std::optional<DominanceRelation> dominates(const PolarIndex& more, const PolarIndex& less,
                                           int max_order = -1);

// All indices reachable from the seeds by upward steps (more reliable), or by
// inverse steps (downward_closure: everything the seeds dominate... i.e. all
// indices from which some seed is reachable). Results are sorted ascending
// and include the seeds. All seeds must share one n.
std::vector<PolarIndex> upward_closure(const std::vector<PolarIndex>& seeds,
                                       int max_order = -1);
std::vector<PolarIndex> downward_closure(const std::vector<PolarIndex>& seeds,
                                         int max_order = -1);

// Single upward steps out of `value`, with their witness tags. Exposed for
// exhaustive audits and the dominance matrix.
std::vector<std::pair<WitnessStep, std::uint32_t>> up_steps(std::uint32_t value, int n,
                                                            int max_order = -1);

// Dense reachability for exhaustive checks (n <= 12): get(more, less) is true
// iff `more` dominates `less`.
class DominanceMatrix {
 public:
  DominanceMatrix(int n, int max_order = -1);
  bool get(std::uint32_t more, std::uint32_t less) const;
  int n() const { return n_; }

 private:
  int n_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> bits_;  // row = less, column = more
};

}  // namespace polarforge
