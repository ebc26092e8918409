#pragma once

#include <string>
#include <vector>

#include "polarforge/index.hpp"

namespace polarforge {

// LLR-mean working range. Every update clamps back into this box; the upper
// clamp 4*erfcinv(1e-300)^2 = 2747.7452624447882743 is the largest mean whose
// phi value is representable above the erfcinv saturation floor.
inline constexpr double kLlrMin = 1e-12;
double llr_max();

struct LlrMean {
  double value = 0.0;
  bool clamped = false;  // sticky: set once any update hit the box
};

struct GaOptions {
  bool use_table = false;  // monotone-cubic lookup tables instead of erfc/erfcinv
};

// Raw check-node transfer: f2(x) = phi_inv(1 - (1 - phi(x))^2), computed in
// the cancellation-free form 4 * erfcinv(e * (2 - e))^2 with e = erfc(sqrt(x)/2).
double ga_f2(double x, const GaOptions& opts = {});

// Channel LLR mean. AWGN only: 2/sigma^2 (BPSK, unit energy). Other channel
// kinds have no Gaussian LLR density -> validation_error.
LlrMean init_llr(const ChannelSpec& spec);

// One polarization step. plus: L -> 2L. minus: L -> f2(L). Both clamp into
// [kLlrMin, llr_max()] and propagate the sticky clamped flag.
LlrMean update_plus(LlrMean in, const GaOptions& opts = {});
LlrMean update_minus(LlrMean in, const GaOptions& opts = {});

// Apply the n steps of index k to the base mean, MSB first ('1' = plus).
LlrMean evolve(LlrMean base, const PolarIndex& k, const GaOptions& opts = {});

// All 2^n synthesized means from one base, by level-order dynamic programming
// (2^{n+1} - 2 updates). Entry [v] is bit-exactly equal to evolve(base, v):
// the same update sequence and clamping is applied in the same order.
struct ReliabilityProfile {
  int n = 0;
  std::string metric;          // "ga_llr_mean" or "bec_erasure"
  std::vector<double> values;      // LLR means (GA) or erasure probs (BEC)
  std::vector<double> error_probs; // per-index hard-decision error probability
  std::vector<bool> clamped;       // GA only; empty for BEC
};
ReliabilityProfile full_profile(const ChannelSpec& spec, int n, const GaOptions& opts = {});
ReliabilityProfile full_profile_from(LlrMean base, int n, const GaOptions& opts = {});

// Hard-decision error probability of a BPSK bit with LLR mean L (variance 2L):
// Q(sqrt(L/2)) = erfc(sqrt(L)/2) / 2.
double error_prob(LlrMean m);
double error_prob_value(double llr_mean);

// --- fixed point of the half-rate ray ---------------------------------------

struct FixedPointReport {
  double root = 0.0;         // root of f2(x) - x/2 in (0.5, 8], simplified phi
  double root_from_above = 0.0;
  double root_exact_phi = 0.0;  // same crossing computed with phi_exact
  int grid_points_checked = 0;  // points of (0.05, root) with f2(x) < x/2
};

// Bisection of f2(x) - x/2 on (0.5, 8] to absolute width 1e-9. A bracket
// without a sign change is a geometry violation -> numeric_error.
double find_fixed_point(const GaOptions& opts = {});
FixedPointReport find_fixed_point_report(const GaOptions& opts = {});

}  // namespace polarforge
