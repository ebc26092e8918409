#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "polarforge/errors.hpp"

namespace polarforge {

// Hard cap on the number of polarization levels handled by dense routines.
inline constexpr int kMaxN = 24;

// A synthesized-channel index. Conventions, fixed project-wide:
//   * `n` polarization levels, `value` in [0, 2^n).
//   * The binary string of `value`, written MSB-first with exactly n digits,
//     lists the polarization steps in the order they are applied: bit 1 (the
//     most significant) is the FIRST step.
//   * digit '1' = plus/variable-node step, digit '0' = minus/check-node step.
//     Example: the chain (+,-,-,+) is the string "1001" = index 9, n = 4.
struct PolarIndex {
  int n = 0;
  std::uint32_t value = 0;

  // 1-based position, position 1 = MSB = first polarization step.
  int bit(int position) const;

  // MSB-first n-digit binary string.
  std::string bits() const;

  friend bool operator==(const PolarIndex& a, const PolarIndex& b) {
    return a.n == b.n && a.value == b.value;
  }
  friend bool operator!=(const PolarIndex& a, const PolarIndex& b) { return !(a == b); }
  friend bool operator<(const PolarIndex& a, const PolarIndex& b) {
    return a.n != b.n ? a.n < b.n : a.value < b.value;
  }
};

// Validating constructor for numeric inputs.
PolarIndex make_index(int n, std::uint64_t value);

// Parse an index from either an n-digit binary string ("01101") or a decimal
// integer ("13"). A binary parse requires exactly n digits of '0'/'1'; the
// error message for a bad character names the offending 1-based position.
// Decimal parses must land in [0, 2^n).
PolarIndex parse_index(std::string_view text, int n);

// True iff the MSB-first bit string contains "11" as a substring.
bool has_adjacent_ones(const PolarIndex& k);

int hamming_weight(const PolarIndex& k);

// ---------------------------------------------------------------------------

enum class ChannelKind { BEC, BSC, AWGN };

// Channel family plus its single parameter:
//   BEC  -> erasure probability in (0,1)
//   BSC  -> crossover probability in (0, 1/2)
//   AWGN -> noise standard deviation sigma > 0 (BPSK, unit symbol energy)
struct ChannelSpec {
  ChannelKind kind = ChannelKind::AWGN;
  double param = 1.0;

  void validate() const;  // throws validation_error when out of range
  std::string kind_name() const;
};

ChannelKind parse_channel_kind(std::string_view name);

}  // namespace polarforge
