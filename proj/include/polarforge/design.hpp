#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarforge/attractor.hpp"
#include "polarforge/channels_mc.hpp"
#include "polarforge/gaussian_approx.hpp"
#include "polarforge/index.hpp"

namespace polarforge {

// How an index earned its place in a design or classification.
//   attractor: a no-11 seed of the active regime
//   po:        reached from a seed by universal operators (order = smallest
//              operator menu that reaches it)
//   computed:  ranked by the GA profile
//   defaulted: frozen without any GA evaluation (lazy short-circuit only)
struct DesignEntry {
  std::string label;  // "attractor" | "po" | "computed" | "defaulted"
  int order = 0;      // for "po": the operator order; otherwise 0
};

struct DesignResult {
  int n = 0;
  ChannelSpec channel;
  double rate = 0.0;
  int k_info = 0;
  double base_llr = 0.0;
  // "below_half_pi": base < pi/2, seeds = full attractor;
  // "below_pi": pi/2 <= base < pi, seeds = MSB-0 attractor subset;
  // "none": base >= pi, no universal seeding.
  std::string regime;
  std::vector<std::uint32_t> info;    // ascending
  std::vector<std::uint32_t> frozen;  // ascending
  std::vector<DesignEntry> provenance;  // size 2^n
  ReliabilityProfile profile;           // empty values[] in the lazy short-circuit
  double union_bound_value = -1.0;      // -1 when no profile was computed
  std::uint64_t omega_count = 0;        // |downward closure of the seeds|
  std::uint64_t evolve_updates = 0;     // full profile counts 2^n, each evolve 1
  bool lazy = false;
};

// GA-driven code construction for an AWGN channel: freeze the 2^n - K least
// reliable indices by GA error probability. Universal dominance is used for
// provenance and the consistency audit, and in lazy mode to freeze the
// closure members without evaluating them (when they already fill the frozen
// budget, no GA profile is computed at all).
//
// Exact error-probability ties crossing the info/frozen boundary are broken
// by "dominated by fewer indices first", then by smaller value.
//
// The consistency audit checks every dominance pair that crosses the Omega
// boundary: an outside index that dominates an Omega member must not be
// ranked less reliable than it (within 1e-9 relative); a violation is a
// geometry violation -> numeric_error listing the offending pairs.  Pairs
// wholly inside or wholly outside Omega are not audited -- near the clamp
// floor the saturated evolution can reorder error probabilities that all sit
// within ~1e-7 of 1/2, and the selection is insensitive to that region.  For
// n > 12 only single-step crossing edges are audited to keep the cost linear.
DesignResult design_code(const ChannelSpec& spec, int n, double rate,
                         const GaOptions& opts = {}, bool lazy = false);

// Sum of GA error probabilities over the information set, clamped to [0,1]:
// a union upper bound on the SC frame error rate.
double union_bound(const ReliabilityProfile& profile, const std::vector<std::uint32_t>& info);

// --- classification against the natural channel -----------------------------

enum class IndexLabel {
  worse,            // in the downward closure: universally worse in regime
  computed_worse,   // GA value at the operating point below the base LLR
  better_or_equal,  // GA value at the regime ceiling still at least the ceiling
  computed_better,  // better at the operating point, not robust at the ceiling
};
std::string to_string(IndexLabel label);

struct ClassifyReport {
  int n = 0;
  ChannelSpec channel;
  double base_llr = 0.0;
  std::string regime;
  std::vector<IndexLabel> labels;  // size 2^n
  std::uint64_t worse_count = 0;
  std::uint64_t computed_worse_count = 0;
  std::uint64_t better_or_equal_count = 0;
  std::uint64_t computed_better_count = 0;
  std::uint64_t evolve_updates = 0;
};

// Label every index against the natural channel at the AWGN operating point.
// The regime's ceiling (pi/2 or pi; the base itself when no regime applies)
// is used for the robust better-or-equal check.
ClassifyReport classify_vs_natural(const ChannelSpec& spec, int n, int max_order = -1,
                                   const GaOptions& opts = {});

// Frozen-mask helpers shared by the CLI and simulate_fer.
std::vector<std::uint8_t> frozen_mask_of(const DesignResult& design);
SimResult simulate_fer(const DesignResult& design, const SimConfig& cfg);

}  // namespace polarforge
