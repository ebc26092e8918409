#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "polarforge/design.hpp"

using namespace polarforge;

namespace {

double sigma_for_snr_db(double snr_db) {
  return std::sqrt(1.0 / (2.0 * std::pow(10.0, snr_db / 10.0)));
}

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

void check_structure(const DesignResult& d) {
  const std::size_t N = std::size_t{1} << d.n;
  CHECK(d.info.size() + d.frozen.size() == N);
  CHECK(std::is_sorted(d.info.begin(), d.info.end()));
  CHECK(std::is_sorted(d.frozen.begin(), d.frozen.end()));
  std::set<std::uint32_t> all(d.info.begin(), d.info.end());
  all.insert(d.frozen.begin(), d.frozen.end());
  CHECK(all.size() == N);
  CHECK(d.k_info == static_cast<int>(d.info.size()));
}

}  // namespace

TEST_CASE("AWGN design pins at SNR 1/2/3 dB, n=8, rate 1/2") {
  const double snr_db[3] = {1.0, 2.0, 3.0};
  const double sigma2_pin[3] = {0.397164117362, 0.31547867224, 0.250593616814};
  const double base_pin[3] = {5.03570164718, 6.33957276984, 7.98104925988};
  const double ub_pin[3] = {0.000330919277789, 2.42047085815e-6, 3.63736374364e-9};
  const double ep_kth_pin[3] = {5.45203e-5, 4.81038e-7, 7.95782e-10};
  const double ep_k1th_pin[3] = {8.62072e-5, 5.0993e-7, 1.13236e-9};

  for (int s = 0; s < 3; ++s) {
    CAPTURE(snr_db[s]);
    const double sigma = sigma_for_snr_db(snr_db[s]);
    CHECK(rel_err(sigma * sigma, sigma2_pin[s]) <= 1e-9);

    const DesignResult d = design_code(ChannelSpec{ChannelKind::AWGN, sigma}, 8, 0.5);
    check_structure(d);
    CHECK(d.k_info == 128);
    CHECK(rel_err(d.base_llr, base_pin[s]) <= 1e-9);
    CHECK(d.regime == "none");  // base LLR already above pi
    CHECK(d.omega_count == 0);
    CHECK_FALSE(d.lazy);
    CHECK(d.evolve_updates == 256);
    for (const DesignEntry& e : d.provenance) CHECK(e.label == "computed");

    CHECK(rel_err(d.union_bound_value, ub_pin[s]) <= 1e-6);
    CHECK(d.union_bound_value == union_bound(d.profile, d.info));

    // Info indices carry the K smallest error probabilities.
    double ep_info_max = 0.0, ep_frozen_min = 1.0;
    for (std::uint32_t v : d.info) ep_info_max = std::max(ep_info_max, d.profile.error_probs[v]);
    for (std::uint32_t v : d.frozen) ep_frozen_min = std::min(ep_frozen_min, d.profile.error_probs[v]);
    CHECK(ep_info_max <= ep_frozen_min);
    CHECK(rel_err(ep_info_max, ep_kth_pin[s]) <= 1e-4);
    CHECK(rel_err(ep_frozen_min, ep_k1th_pin[s]) <= 1e-4);

    // Manual union-bound recomputation.
    double manual = 0.0;
    for (std::uint32_t v : d.info) manual += d.profile.error_probs[v];
    CHECK(d.union_bound_value == std::min(manual, 1.0));
  }
}

TEST_CASE("regime resolution from the base LLR") {
  // sigma = 1.2 -> L0 = 2/1.44 below pi/2.
  const DesignResult low = design_code(ChannelSpec{ChannelKind::AWGN, 1.2}, 6, 0.25);
  CHECK(low.base_llr == doctest::Approx(1.3888888888888889).epsilon(1e-15));
  CHECK(low.regime == "below_half_pi");
  CHECK(low.omega_count == 36);

  // L0 = 3.0 sits between pi/2 and pi.
  const DesignResult mid =
      design_code(ChannelSpec{ChannelKind::AWGN, std::sqrt(2.0 / 3.0)}, 6, 0.25);
  CHECK(mid.regime == "below_pi");
  CHECK(mid.omega_count == 21);

  // L0 = 8.0 is past pi: no universal seeding.
  const DesignResult none = design_code(ChannelSpec{ChannelKind::AWGN, 0.5}, 6, 0.25);
  CHECK(none.regime == "none");
  CHECK(none.omega_count == 0);
}

TEST_CASE("non-lazy design provenance counts in the below-half-pi regime") {
  const DesignResult d = design_code(ChannelSpec{ChannelKind::AWGN, 1.2}, 6, 0.25);
  check_structure(d);
  std::uint64_t attractor = 0, po = 0, computed = 0, defaulted = 0;
  std::uint64_t po2 = 0, po3 = 0;
  for (const DesignEntry& e : d.provenance) {
    if (e.label == "attractor") ++attractor;
    else if (e.label == "po") { ++po; if (e.order == 2) ++po2; if (e.order == 3) ++po3; }
    else if (e.label == "computed") ++computed;
    else ++defaulted;
  }
  CHECK(attractor == 21);
  CHECK(po == 15);
  CHECK(po2 == 14);
  CHECK(po3 == 1);
  CHECK(computed == 28);
  CHECK(defaulted == 0);
  CHECK(d.evolve_updates == 64);  // exactly one full profile DP
  // Budget sanity: never more than one ceiling probe per non-closure index on
  // top of the profile DP.
  CHECK(d.evolve_updates <= 2 * (64 - d.omega_count) + 64);
  CHECK(d.union_bound_value >= 0.0);
  CHECK(d.union_bound_value <= 1.0);
}

TEST_CASE("lazy short-circuit when the closure fills the frozen budget") {
  const DesignResult d =
      design_code(ChannelSpec{ChannelKind::AWGN, 1.2}, 6, 0.5, GaOptions{}, true);
  check_structure(d);
  CHECK(d.lazy);
  CHECK(d.k_info == 32);
  CHECK(d.omega_count == 36);          // 36 >= 32: no GA needed
  CHECK(d.evolve_updates == 0);
  CHECK(d.profile.values.empty());
  CHECK(d.profile.error_probs.empty());
  CHECK(d.union_bound_value == -1.0);  // sentinel: nothing was computed

  std::uint64_t attractor = 0, po = 0, defaulted = 0;
  for (const DesignEntry& e : d.provenance) {
    if (e.label == "attractor") ++attractor;
    else if (e.label == "po") ++po;
    else if (e.label == "defaulted") ++defaulted;
  }
  CHECK(attractor + po == 36);
  CHECK(defaulted == 28);

  // Every frozen index is a closure member (attractor or po), seeds first.
  std::uint64_t frozen_seeds = 0;
  for (std::uint32_t v : d.frozen) {
    const std::string& label = d.provenance[v].label;
    CHECK((label == "attractor" || label == "po"));
    if (label == "attractor") ++frozen_seeds;
  }
  CHECK(frozen_seeds == 21);  // all seeds frozen before any derived member
}

TEST_CASE("lazy request with an oversized budget still computes the profile") {
  // Budget 48 > |closure| 36: GA must fill the remainder.
  const DesignResult d =
      design_code(ChannelSpec{ChannelKind::AWGN, 1.2}, 6, 0.25, GaOptions{}, true);
  check_structure(d);
  CHECK(d.k_info == 16);
  CHECK(d.evolve_updates == 64);
  CHECK_FALSE(d.profile.values.empty());
  CHECK(d.union_bound_value >= 0.0);
  // The whole closure is frozen.
  for (std::size_t v = 0; v < 64; ++v) {
    const std::string& label = d.provenance[v].label;
    if (label == "attractor" || label == "po") {
      CHECK(std::binary_search(d.frozen.begin(), d.frozen.end(), static_cast<std::uint32_t>(v)));
    }
  }
}

TEST_CASE("classification is stable across the below-half-pi operating grid") {
  for (double base : {1.50, 1.55, 1.5707}) {
    CAPTURE(base);
    const double sigma = std::sqrt(2.0 / base);
    const ClassifyReport rep = classify_vs_natural(ChannelSpec{ChannelKind::AWGN, sigma}, 6);
    CHECK(rep.regime == "below_half_pi");
    CHECK(rep.worse_count == 36);
    CHECK(rep.worse_count + rep.computed_worse_count + rep.better_or_equal_count +
              rep.computed_better_count ==
          64);
    // The GA adds exactly two indices beyond the universal closure.
    std::vector<std::uint32_t> extras;
    for (std::uint32_t v = 0; v < 64; ++v) {
      if (rep.labels[v] == IndexLabel::computed_worse) extras.push_back(v);
    }
    CHECK(extras == std::vector<std::uint32_t>{15, 48});
    CHECK(rep.evolve_updates ==
          64 + rep.better_or_equal_count + rep.computed_better_count);
    // 110001 survives the push to the regime ceiling.
    CHECK(rep.labels[49] == IndexLabel::better_or_equal);
  }
}

TEST_CASE("classification is stable across the below-pi operating grid") {
  for (double base : {3.0, 3.1, 3.1405}) {
    CAPTURE(base);
    const double sigma = std::sqrt(2.0 / base);
    const ClassifyReport rep = classify_vs_natural(ChannelSpec{ChannelKind::AWGN, sigma}, 6);
    CHECK(rep.regime == "below_pi");
    CHECK(rep.worse_count == 21);
    std::vector<std::uint32_t> extras;
    for (std::uint32_t v = 0; v < 64; ++v) {
      if (rep.labels[v] == IndexLabel::computed_worse) extras.push_back(v);
    }
    CHECK(extras == std::vector<std::uint32_t>{24, 32, 33, 34, 36, 40});
  }
}

TEST_CASE("label names round-trip through to_string") {
  CHECK(to_string(IndexLabel::worse) == "worse");
  CHECK(to_string(IndexLabel::computed_worse) == "computed_worse");
  CHECK(to_string(IndexLabel::better_or_equal) == "better_or_equal");
  CHECK(to_string(IndexLabel::computed_better) == "computed_better");
}

TEST_CASE("union bound clamps to one") {
  ReliabilityProfile prof;
  prof.n = 2;
  prof.metric = "ga_llr_mean";
  prof.values = {1.0, 1.0, 1.0, 1.0};
  prof.error_probs = {0.5, 0.5, 0.5, 0.5};
  CHECK(union_bound(prof, {0, 1, 2, 3}) == 1.0);
  CHECK(union_bound(prof, {0}) == 0.5);
  CHECK(union_bound(prof, {}) == 0.0);
}

TEST_CASE("frozen_mask_of and the design-driven FER path") {
  const DesignResult d = design_code(ChannelSpec{ChannelKind::AWGN, 0.8}, 4, 0.5);
  const std::vector<std::uint8_t> mask = frozen_mask_of(d);
  REQUIRE(mask.size() == 16);
  for (std::uint32_t v = 0; v < 16; ++v) {
    const bool frozen = std::binary_search(d.frozen.begin(), d.frozen.end(), v);
    CHECK(mask[v] == (frozen ? 1 : 0));
  }

  SimConfig cfg;
  cfg.channel = d.channel;
  cfg.n = 4;
  cfg.trials = 2000;
  cfg.seed = 0x5EED;
  cfg.blocks = 4;
  const SimResult res = simulate_fer(d, cfg);
  CHECK(res.trials == 2000);
  CHECK(res.fer == static_cast<double>(res.frame_errors) / 2000.0);

  SimConfig wrong = cfg;
  wrong.n = 5;
  CHECK_THROWS_AS(simulate_fer(d, wrong), validation_error);
}

TEST_CASE("rate edges and invalid arguments") {
  const DesignResult all_frozen = design_code(ChannelSpec{ChannelKind::AWGN, 1.0}, 6, 0.0);
  CHECK(all_frozen.k_info == 0);
  CHECK(all_frozen.info.empty());
  CHECK(all_frozen.frozen.size() == 64);
  CHECK(all_frozen.union_bound_value == 0.0);

  const DesignResult all_info = design_code(ChannelSpec{ChannelKind::AWGN, 1.0}, 6, 1.0);
  CHECK(all_info.k_info == 64);
  CHECK(all_info.frozen.empty());
  CHECK(all_info.info.size() == 64);

  const ChannelSpec awgn{ChannelKind::AWGN, 1.0};
  CHECK_THROWS_AS(design_code(awgn, 6, 2.0), validation_error);
  CHECK_THROWS_AS(design_code(awgn, 6, -0.1), validation_error);
  CHECK_THROWS_AS(design_code(awgn, 0, 0.5), validation_error);
  CHECK_THROWS_AS(design_code(awgn, 25, 0.5), validation_error);
  CHECK_THROWS_AS(design_code(ChannelSpec{ChannelKind::AWGN, 0.0}, 6, 0.5), validation_error);
  CHECK_THROWS_AS(design_code(ChannelSpec{ChannelKind::BEC, 0.5}, 6, 0.5), validation_error);
}

TEST_CASE("design is deterministic") {
  const ChannelSpec spec{ChannelKind::AWGN, sigma_for_snr_db(2.0)};
  const DesignResult a = design_code(spec, 8, 0.5);
  const DesignResult b = design_code(spec, 8, 0.5);
  CHECK(a.info == b.info);
  CHECK(a.frozen == b.frozen);
  CHECK(a.base_llr == b.base_llr);
  CHECK(a.union_bound_value == b.union_bound_value);
  CHECK(a.profile.values == b.profile.values);
}
