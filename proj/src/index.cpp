#include "polarforge/index.hpp"

#include <cctype>
#include <cmath>

namespace polarforge {

int PolarIndex::bit(int position) const {
  if (position < 1 || position > n) {
    throw validation_error("bit position " + std::to_string(position) +
                           " out of range [1," + std::to_string(n) + "]");
  }
  return static_cast<int>((value >> (n - position)) & 1u);
}

std::string PolarIndex::bits() const {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int p = 0; p < n; ++p) {
    if ((value >> (n - 1 - p)) & 1u) s[static_cast<std::size_t>(p)] = '1';
  }
  return s;
}

PolarIndex make_index(int n, std::uint64_t value) {
  if (n < 1 || n > kMaxN) {
    throw validation_error("index length n=" + std::to_string(n) +
                           " out of range [1," + std::to_string(kMaxN) + "]");
  }
  if (value >= (std::uint64_t{1} << n)) {
    throw validation_error("index value " + std::to_string(value) +
                           " out of range [0,2^" + std::to_string(n) + ")");
  }
  return PolarIndex{n, static_cast<std::uint32_t>(value)};
}

PolarIndex parse_index(std::string_view text, int n) {
  if (n < 1 || n > kMaxN) {
    throw validation_error("index length n=" + std::to_string(n) +
                           " out of range [1," + std::to_string(kMaxN) + "]");
  }
  if (text.empty()) throw validation_error("empty index string");

  const bool binary_width = text.size() == static_cast<std::size_t>(n);
  bool all_binary_digits = true;
  for (char c : text) {
    if (c != '0' && c != '1') {
      all_binary_digits = false;
      break;
    }
  }

  if (binary_width && all_binary_digits) {
    std::uint32_t v = 0;
    for (char c : text) v = (v << 1) | static_cast<std::uint32_t>(c - '0');
    return PolarIndex{n, v};
  }

  // If it looks like an attempted bit string (right width, bad digit), point
  // at the offending position rather than falling through to decimal.
  if (binary_width) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != '0' && text[i] != '1') {
        throw validation_error("bad binary digit '" + std::string(1, text[i]) +
                               "' at position " + std::to_string(i + 1) +
                               " (1-based, MSB first) in index string");
      }
    }
  }

  // Decimal fallback.
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw validation_error("bad character '" + std::string(1, c) + "' at position " +
                             std::to_string(i + 1) + " in index string");
    }
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (v > (std::uint64_t{1} << kMaxN)) {
      throw validation_error("decimal index too large");
    }
  }
  return make_index(n, v);
}

bool has_adjacent_ones(const PolarIndex& k) {
  return (k.value & (k.value >> 1)) != 0;
}

int hamming_weight(const PolarIndex& k) {
  return __builtin_popcount(k.value);
}

void ChannelSpec::validate() const {
  switch (kind) {
    case ChannelKind::BEC:
      if (!(param > 0.0 && param < 1.0)) {
        throw validation_error("BEC erasure probability must lie in (0,1)");
      }
      return;
    case ChannelKind::BSC:
      if (!(param > 0.0 && param < 0.5)) {
        throw validation_error("BSC crossover probability must lie in (0,1/2)");
      }
      return;
    case ChannelKind::AWGN:
      if (!(param > 0.0) || !std::isfinite(param)) {
        throw validation_error("AWGN noise standard deviation must be positive and finite");
      }
      return;
  }
  throw validation_error("unknown channel kind");
}

std::string ChannelSpec::kind_name() const {
  switch (kind) {
    case ChannelKind::BEC: return "bec";
    case ChannelKind::BSC: return "bsc";
    case ChannelKind::AWGN: return "awgn";
  }
  return "?";
}

ChannelKind parse_channel_kind(std::string_view name) {
  if (name == "bec" || name == "BEC") return ChannelKind::BEC;
  if (name == "bsc" || name == "BSC") return ChannelKind::BSC;
  if (name == "awgn" || name == "AWGN") return ChannelKind::AWGN;
  throw validation_error("unknown channel kind '" + std::string(name) +
                         "' (expected bec, bsc, or awgn)");
}

}  // namespace polarforge
