#pragma once

#include <cstdint>
#include <vector>

#include "polarforge/gaussian_approx.hpp"
#include "polarforge/index.hpp"

namespace polarforge {

// --- exact BEC recursion ------------------------------------------------------

// Erasure probability of synthesized index k over BEC(eps):
//   plus step ('1'):  Z -> Z^2
//   minus step ('0'): Z -> 2Z - Z^2
// applied MSB-first.
double bec_z(double eps, const PolarIndex& k);

// All 2^n erasure probabilities (metric "bec_erasure"). error_probs holds the
// maximum-likelihood bit error probability Z/2 (an erased bit is a fair coin).
ReliabilityProfile bec_profile(double eps, int n);

// --- encoder ------------------------------------------------------------------

// In-place polar transform x = u F^{(x) n} in natural bit order (no
// bit-reversal): butterflies u[i] ^= u[i + N/2] on the top half, then recurse
// into both halves. Involutive: applying it twice restores u.
void encode(std::vector<std::uint8_t>& u);

// --- successive-cancellation decoder -------------------------------------------

// Check-node LLR combine, exact (boxplus):
//   f(a,b) = sign(a) sign(b) [ m + log1p(e^{-(M+m)}) - log1p(e^{-(M-m)}) ]
// with m = min(|a|,|b|), M = max(|a|,|b|); zero if either input is zero.
double fnode(double a, double b);

// Variable-node combine under decision u: g(a,b,u) = b + (1-2u) a.
double gnode(double a, double b, int u);

struct ScResult {
  std::vector<std::uint8_t> u_hat;         // decoded u-domain bits
  std::vector<std::uint8_t> genie_errors;  // genie mode only: per-index error flags
};

// Successive cancellation over channel LLRs (size 2^n). Index i pairs
// a = llr[i], b = llr[i + half] at every stage; the minus branch (MSB 0) is
// decoded first. Modes:
//   * genie_true_u != nullptr: each leaf records whether the raw decision
//     matches the true bit (an exact zero LLR counts as an error), then the
//     true bit is substituted before propagation. frozen_mask is ignored.
//   * otherwise: frozen positions decode as 0; information positions take
//     llr > 0 -> 0, llr < 0 -> 1, and an exact tie decodes as 1.
ScResult sc_decode(const std::vector<double>& llr,
                   const std::vector<std::uint8_t>& frozen_mask,
                   const std::vector<std::uint8_t>* genie_true_u = nullptr);

// --- deterministic RNG ----------------------------------------------------------

// SplitMix64. Trial t of a run with seed s draws from the stream seeded by
//   stream_seed(s, t) = s XOR mix64(t + GOLDEN),
// and the k-th draw (k = 1, 2, ...) of that stream is mix64(x0 + k GOLDEN).
// Uniform doubles are ((z >> 11) + 0.5) * 2^-53, in the open interval (0,1).
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z);
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t trial);

class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) : state_(stream_seed(seed, trial)) {}
  std::uint64_t next_raw() { return mix64(state_ += kGolden); }
  double u01() { return (static_cast<double>(next_raw() >> 11) + 0.5) * 0x1.0p-53; }
  // Box-Muller: r = sqrt(-2 ln u1), theta = 2 pi u2; z1 = r cos, z2 = r sin.
  void normal_pair(double& z1, double& z2);

 private:
  std::uint64_t state_;
};

// --- Monte-Carlo simulation -------------------------------------------------------

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct SimConfig {
  ChannelSpec channel;
  int n = 1;
  std::uint64_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
  int blocks = 1;  // trial indices are global, so results never depend on blocks
};

struct SimResult {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int blocks = 1;
  // Genie mode: per-index counts/rates and 95% Wald half-widths
  // (rate 0 or 1 falls back to the rule-of-three bound 3/trials).
  std::vector<std::uint64_t> error_counts;
  std::vector<double> rates;
  std::vector<double> half_widths;
  // FER mode:
  std::uint64_t frame_errors = 0;
  double fer = -1.0;
  double fer_half_width = 0.0;
};

// Per-index genie-aided error rates: the all-zero codeword is transmitted
// (the channels are symmetric, so this loses no generality) and every
// decision is corrected to the true bit after its error flag is recorded.
SimResult genie_channel_error_rates(const SimConfig& cfg);

// Frame error rate of the code given by frozen_mask (1 = frozen) under plain
// SC decoding, all-zero codeword.
SimResult simulate_fer(const std::vector<std::uint8_t>& frozen_mask, const SimConfig& cfg);

// 95% half-width helpers (pinned conventions shared by tests and reports).
double wald_half_width(double rate, std::uint64_t trials);
bool ci_covers(double rate, std::uint64_t trials, double truth);

// Channel LLR for one noise realization, exposed for tests:
//   BEC: erased -> 0, else +1e30; BSC: +-log((1-p)/p); AWGN: 2 y / sigma^2.
inline constexpr double kErasureLlr = 1e30;
void fill_channel_llrs(const ChannelSpec& spec, TrialRng& rng, std::vector<double>& llr);

int resolve_thread_count(int blocks);  // POLARFORGE_THREADS caps parallelism

}  // namespace polarforge
