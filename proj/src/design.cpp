#include "polarforge/design.hpp"

#include <algorithm>
#include <cmath>

#include "polarforge/partial_order.hpp"

namespace polarforge {

namespace {

constexpr double kHalfPi = 1.570796326794896619231321691639751442;
constexpr double kPi = 3.141592653589793238462643383279502884;

struct RegimeInfo {
  std::string name;            // below_half_pi | below_pi | none
  double ceiling = 0.0;        // robust comparison point
  std::vector<int> order_of;   // per value: 0 seed, >=2 po order, -1 outside
  std::uint64_t omega_count = 0;
};

RegimeInfo resolve_regime(double base_llr, int n, int max_order) {
  RegimeInfo reg;
  reg.order_of.assign(std::size_t{1} << n, -1);
  if (base_llr < kHalfPi) {
    reg.name = "below_half_pi";
    reg.ceiling = kHalfPi;
  } else if (base_llr < kPi) {
    reg.name = "below_pi";
    reg.ceiling = kPi;
  } else {
    reg.name = "none";
    reg.ceiling = base_llr;
    return reg;
  }
  const AttractorReport rep = bad_set(
      n, reg.name == "below_half_pi" ? LlrRegime::below_half_pi : LlrRegime::below_pi,
      max_order);
  for (const ProvenanceEntry& e : rep.entries) reg.order_of[e.index.value] = e.order;
  reg.omega_count = rep.total_count;
  return reg;
}

std::uint64_t dominator_count(int n, std::uint32_t value) {
  return upward_closure({PolarIndex{n, value}}).size() - 1;
}

// Ascending reliability rank: most reliable (smallest error prob) first.
// Only tie groups that straddle the info/frozen boundary influence the
// resulting sets, so the dominator-count rule is applied just there.
std::vector<std::uint32_t> rank_by_error_prob(const ReliabilityProfile& prof, int n,
                                              std::size_t boundary) {
  const std::size_t N = prof.error_probs.size();
  std::vector<std::uint32_t> ord(N);
  for (std::size_t i = 0; i < N; ++i) ord[i] = static_cast<std::uint32_t>(i);
  std::sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
    const double ea = prof.error_probs[a], eb = prof.error_probs[b];
    if (ea != eb) return ea < eb;
    return a < b;
  });
  if (boundary == 0 || boundary >= N) return ord;
  const double ep_edge = prof.error_probs[ord[boundary - 1]];
  if (prof.error_probs[ord[boundary]] != ep_edge) return ord;
  std::size_t lo = boundary, hi = boundary;
  while (lo > 0 && prof.error_probs[ord[lo - 1]] == ep_edge) --lo;
  while (hi < N && prof.error_probs[ord[hi]] == ep_edge) ++hi;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed;
  keyed.reserve(hi - lo);
  for (std::size_t i = lo; i < hi; ++i) {
    keyed.emplace_back(dominator_count(n, ord[i]), ord[i]);
  }
  std::sort(keyed.begin(), keyed.end());  // fewer dominators first, then value
  for (std::size_t i = lo; i < hi; ++i) ord[i] = keyed[i - lo].second;
  return ord;
}

// Consistency audit: the GA ranking must agree with every dominance relation
// that crosses the Omega boundary.  An index that dominates a universally-bad
// member from outside the set must never be ranked less reliable than that
// member; such an inversion would mean the numerics, not the order, are
// broken.  Pairs wholly inside Omega (or wholly outside) are not audited: in
// the deep-garbage region the saturation floor of the LLR clamp box flattens
// the evolution and can locally reorder error probabilities that all sit
// within ~1e-7 of 1/2, which says nothing about the selection.
void audit_against_profile(const ReliabilityProfile& prof, int n,
                           const std::vector<int>& order_of) {
  const std::uint32_t N = std::uint32_t{1} << n;
  bool any_member = false, any_outside = false;
  for (std::uint32_t v = 0; v < N; ++v) (order_of[v] >= 0 ? any_member : any_outside) = true;
  if (!any_member || !any_outside) return;

  std::vector<std::string> violations;
  auto check_pair = [&](std::uint32_t outsider, std::uint32_t member) {
    // outsider dominates member, so it must not be ranked strictly worse.
    if (prof.error_probs[outsider] > prof.error_probs[member] * (1.0 + 1e-9) + 1e-300 &&
        violations.size() < 8) {
      violations.push_back(PolarIndex{n, outsider}.bits() + " ranked below " +
                           PolarIndex{n, member}.bits());
    }
  };
  if (n <= 12) {
    // Dense reachability: every crossing pair, all operator orders.
    const DominanceMatrix dom(n);
    for (std::uint32_t member = 0; member < N; ++member) {
      if (order_of[member] < 0) continue;
      for (std::uint32_t outsider = 0; outsider < N; ++outsider) {
        if (order_of[outsider] >= 0) continue;
        if (dom.get(outsider, member)) check_pair(outsider, member);
      }
    }
  } else {
    // At scale, audit the single-step crossing edges only.
    for (std::uint32_t member = 0; member < N; ++member) {
      if (order_of[member] < 0) continue;
      for (const auto& [step, w] : up_steps(member, n, 1)) {
        if (order_of[w] < 0) check_pair(w, member);
      }
    }
  }
  if (!violations.empty()) {
    std::string msg =
        "design audit: GA ranking contradicts universal dominance across the Omega "
        "boundary (dominating outsider ranked below dominated member):";
    for (const std::string& pair : violations) msg += " [" + pair + "]";
    throw numeric_error(msg + " -- geometry violation");
  }
}

}  // namespace

double union_bound(const ReliabilityProfile& profile, const std::vector<std::uint32_t>& info) {
  double sum = 0.0;
  for (std::uint32_t v : info) sum += profile.error_probs[v];
  return std::min(sum, 1.0);
}

DesignResult design_code(const ChannelSpec& spec, int n, double rate, const GaOptions& opts,
                         bool lazy) {
  if (n < 1 || n > kMaxN) {
    throw validation_error("design_code: n out of range [1," + std::to_string(kMaxN) + "]");
  }
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw validation_error("design_code: rate must lie in [0,1]");
  }
  const LlrMean base = init_llr(spec);
  const std::size_t N = std::size_t{1} << n;
  const int K = static_cast<int>(std::llround(rate * static_cast<double>(N)));
  const std::size_t frozen_budget = N - static_cast<std::size_t>(K);

  DesignResult res;
  res.n = n;
  res.channel = spec;
  res.rate = rate;
  res.k_info = K;
  res.base_llr = base.value;
  res.lazy = lazy;
  res.provenance.assign(N, DesignEntry{"computed", 0});

  RegimeInfo reg = resolve_regime(base.value, n, -1);
  res.regime = reg.name;
  res.omega_count = reg.omega_count;
  for (std::size_t v = 0; v < N; ++v) {
    const int ord = reg.order_of[v];
    if (ord == 0) {
      res.provenance[v] = DesignEntry{"attractor", 0};
    } else if (ord > 0) {
      res.provenance[v] = DesignEntry{"po", ord};
    }
  }

  std::vector<char> is_frozen(N, 0);

  if (lazy && reg.omega_count >= frozen_budget) {
    // The universally-bad set alone fills the frozen budget: no GA at all.
    // Seeds are frozen before operator-derived members, ties by value.
    std::vector<std::pair<int, std::uint32_t>> omega;
    for (std::size_t v = 0; v < N; ++v) {
      if (reg.order_of[v] >= 0) {
        omega.emplace_back(reg.order_of[v], static_cast<std::uint32_t>(v));
      }
    }
    std::sort(omega.begin(), omega.end());
    for (std::size_t i = 0; i < frozen_budget; ++i) is_frozen[omega[i].second] = 1;
    for (std::size_t v = 0; v < N; ++v) {
      if (reg.order_of[v] < 0) res.provenance[v] = DesignEntry{"defaulted", 0};
    }
    res.profile.n = n;
    res.profile.metric = "ga_llr_mean";
  } else {
    res.profile = full_profile_from(base, n, opts);
    res.evolve_updates += N;  // the level-order DP
    audit_against_profile(res.profile, n, reg.order_of);

    if (lazy) {
      // Freeze the closure outright, then the worst remaining by GA.
      std::size_t remaining = frozen_budget;
      for (std::size_t v = 0; v < N && remaining > 0; ++v) {
        if (reg.order_of[v] >= 0) {
          is_frozen[v] = 1;
          --remaining;
        }
      }
      if (remaining > 0) {
        std::vector<std::uint32_t> rest;
        for (std::size_t v = 0; v < N; ++v) {
          if (!is_frozen[v]) rest.push_back(static_cast<std::uint32_t>(v));
        }
        std::sort(rest.begin(), rest.end(), [&](std::uint32_t a, std::uint32_t b) {
          const double ea = res.profile.error_probs[a], eb = res.profile.error_probs[b];
          if (ea != eb) return ea > eb;  // worst first
          return a > b;
        });
        for (std::size_t i = 0; i < remaining; ++i) is_frozen[rest[i]] = 1;
      }
    } else {
      const std::vector<std::uint32_t> ord =
          rank_by_error_prob(res.profile, n, static_cast<std::size_t>(K));
      for (std::size_t i = static_cast<std::size_t>(K); i < N; ++i) is_frozen[ord[i]] = 1;
    }
  }

  for (std::size_t v = 0; v < N; ++v) {
    (is_frozen[v] ? res.frozen : res.info).push_back(static_cast<std::uint32_t>(v));
  }
  if (!res.profile.error_probs.empty()) {
    res.union_bound_value = union_bound(res.profile, res.info);
  }
  return res;
}

std::string to_string(IndexLabel label) {
  switch (label) {
    case IndexLabel::worse: return "worse";
    case IndexLabel::computed_worse: return "computed_worse";
    case IndexLabel::better_or_equal: return "better_or_equal";
    case IndexLabel::computed_better: return "computed_better";
  }
  return "?";
}

ClassifyReport classify_vs_natural(const ChannelSpec& spec, int n, int max_order,
                                   const GaOptions& opts) {
  if (n < 1 || n > kMaxN) {
    throw validation_error("classify_vs_natural: n out of range [1," +
                           std::to_string(kMaxN) + "]");
  }
  const LlrMean base = init_llr(spec);
  const std::size_t N = std::size_t{1} << n;

  ClassifyReport rep;
  rep.n = n;
  rep.channel = spec;
  rep.base_llr = base.value;
  rep.labels.assign(N, IndexLabel::computed_better);

  RegimeInfo reg = resolve_regime(base.value, n, max_order);
  rep.regime = reg.name;

  const ReliabilityProfile prof = full_profile_from(base, n, opts);
  rep.evolve_updates += N;

  for (std::size_t v = 0; v < N; ++v) {
    if (reg.order_of[v] >= 0) {
      rep.labels[v] = IndexLabel::worse;
      ++rep.worse_count;
    } else if (prof.values[v] < base.value) {
      rep.labels[v] = IndexLabel::computed_worse;
      ++rep.computed_worse_count;
    } else {
      // Robustness check at the regime ceiling: an index that still sits at
      // or above the ceiling when the base is pushed to it is better-or-equal
      // across the whole regime, not only at the operating point.
      const LlrMean at_ceiling =
          evolve(LlrMean{reg.ceiling, false}, PolarIndex{n, static_cast<std::uint32_t>(v)},
                 opts);
      rep.evolve_updates += 1;
      if (at_ceiling.value >= reg.ceiling) {
        rep.labels[v] = IndexLabel::better_or_equal;
        ++rep.better_or_equal_count;
      } else {
        rep.labels[v] = IndexLabel::computed_better;
        ++rep.computed_better_count;
      }
    }
  }
  return rep;
}

std::vector<std::uint8_t> frozen_mask_of(const DesignResult& design) {
  std::vector<std::uint8_t> mask(std::size_t{1} << design.n, 0);
  for (std::uint32_t v : design.frozen) mask[v] = 1;
  return mask;
}

SimResult simulate_fer(const DesignResult& design, const SimConfig& cfg) {
  if (cfg.n != design.n) {
    throw validation_error("simulate_fer: simulation n must match the design n");
  }
  return simulate_fer(frozen_mask_of(design), cfg);
}

}  // namespace polarforge
