// polarforge command-line tool: construction, ordering, design, simulation,
// and the self-verification suites.
//
// Exit codes: 0 success, 2 validation error, 3 numeric/geometry violation
// (including a failed verify suite), 4 I/O error.

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "polarforge/attractor.hpp"
#include "polarforge/channels_mc.hpp"
#include "polarforge/design.hpp"
#include "polarforge/errors.hpp"
#include "polarforge/gaussian_approx.hpp"
#include "polarforge/index.hpp"
#include "polarforge/io.hpp"
#include "polarforge/partial_order.hpp"
#include "polarforge/special_functions.hpp"

namespace {

using namespace polarforge;

constexpr const char* kSchema = "polarforge/v1";
constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// output plumbing
// ---------------------------------------------------------------------------

void emit_json(const std::string& json, const std::string& out_path) {
  std::cout << json << "\n";
  if (!out_path.empty()) write_text_file(out_path, json + "\n");
}

void emit_csv(const std::string& csv, const std::string& csv_path) {
  if (!csv_path.empty()) write_text_file(csv_path, csv);
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(text, &used, 0);
    if (used != text.size()) throw validation_error("trailing characters in seed '" + text + "'");
    return v;
  } catch (const validation_error&) {
    throw;
  } catch (const std::exception&) {
    throw validation_error("cannot parse seed '" + text + "'");
  }
}

void write_channel(JsonWriter& w, const ChannelSpec& spec) {
  w.key("channel").begin_object();
  w.key("kind").value(spec.kind_name());
  w.key("param").value(spec.param);
  w.end_object();
}

ChannelSpec resolve_channel(const std::string& kind_name, bool has_param, double param,
                            bool has_snr, double snr_db) {
  ChannelSpec spec;
  spec.kind = parse_channel_kind(kind_name);
  if (has_snr) {
    if (spec.kind != ChannelKind::AWGN)
      throw validation_error("--snr-db applies to the awgn channel only");
    if (has_param) throw validation_error("give either --param or --snr-db, not both");
    // Es/N0 in dB: sigma^2 = 1 / (2 * 10^(SNR/10)).
    spec.param = std::sqrt(1.0 / (2.0 * std::pow(10.0, snr_db / 10.0)));
  } else if (has_param) {
    spec.param = param;
  } else {
    throw validation_error("--param (or --snr-db for awgn) is required");
  }
  spec.validate();
  return spec;
}

// Parse an index as a bare binary string (its length fixes n) or, when n > 0
// is already known, through the general parser.
PolarIndex parse_cli_index(const std::string& text, int n) {
  if (n > 0) return parse_index(text, n);
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxN))
    throw validation_error("index '" + text + "' needs an explicit --n");
  for (char c : text)
    if (c != '0' && c != '1')
      throw validation_error("index '" + text + "' is not a binary string; pass --n for decimal");
  return parse_index(text, static_cast<int>(text.size()));
}

std::string provenance_name(int order) {
  return order == 0 ? std::string("attractor") : "order" + std::to_string(order);
}

// ---------------------------------------------------------------------------
// plain subcommands
// ---------------------------------------------------------------------------

void run_ga(double llr, const std::string& bits, int n, bool table,
            const std::string& out_path, const std::string& csv_path) {
  if (!std::isfinite(llr) || llr <= 0.0)
    throw validation_error("--llr must be a positive finite LLR mean");
  GaOptions opts{table};
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kSchema);
  w.key("command").value("ga");
  if (!bits.empty()) {
    PolarIndex k = parse_cli_index(bits, n);
    LlrMean m = evolve(LlrMean{llr, false}, k, opts);
    w.key("mode").value("evolve");
    w.key("base_llr").value(llr);
    w.key("table").value(table);
    w.key("n").value(k.n);
    w.key("index").value(static_cast<std::uint64_t>(k.value));
    w.key("index_bits").value(k.bits());
    w.key("value").value(m.value);
    w.key("error_prob").value(error_prob(m));
    w.key("clamped").value(m.clamped);
    w.end_object();
    emit_json(w.take(), out_path);
    return;
  }
  if (n <= 0) throw validation_error("ga needs --bits <pattern> or --n <levels>");
  ReliabilityProfile prof = full_profile_from(LlrMean{llr, false}, n, opts);
  w.key("mode").value("profile");
  w.key("base_llr").value(llr);
  w.key("table").value(table);
  w.key("n").value(prof.n);
  w.key("channel").begin_object();
  w.key("kind").value("llr");
  w.key("param").value(llr);
  w.end_object();
  w.key("metric").value(prof.metric);
  bool any_clamped = false;
  w.key("values").begin_array();
  for (double v : prof.values) w.value(v);
  w.end_array();
  w.key("error_prob").begin_array();
  for (double v : prof.error_probs) w.value(v);
  w.end_array();
  for (std::size_t i = 0; i < prof.clamped.size(); ++i) any_clamped = any_clamped || prof.clamped[i];
  w.key("clamped_any").value(any_clamped);
  w.end_object();
  emit_json(w.take(), out_path);

  if (!csv_path.empty()) {
    CsvWriter csv({"index", "index_bits", "value", "error_prob"});
    for (std::size_t i = 0; i < prof.values.size(); ++i) {
      PolarIndex k = make_index(n, i);
      csv.row({std::to_string(i), k.bits(), format_double(prof.values[i]),
               format_double(prof.error_probs[i])});
    }
    emit_csv(csv.str(), csv_path);
  }
}

void run_attractor(int n, const std::string& regime_name, int max_order,
                   const std::string& out_path, const std::string& csv_path) {
  LlrRegime regime;
  if (regime_name == "half-pi") {
    regime = LlrRegime::below_half_pi;
  } else if (regime_name == "pi") {
    regime = LlrRegime::below_pi;
  } else {
    throw validation_error("--regime must be 'half-pi' or 'pi'");
  }
  AttractorReport rep = bad_set(n, regime, max_order);

  std::map<int, std::uint64_t> by_order;
  for (const auto& e : rep.entries) ++by_order[e.order];

  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kSchema);
  w.key("command").value("attractor");
  w.key("n").value(n);
  w.key("regime").value(regime_name);
  w.key("max_order").value(max_order);
  w.key("seed_count").value(rep.seed_count);
  w.key("closure_count").value(rep.total_count);
  w.key("rate_seeds").value(rep.rate_seeds);
  w.key("rate_closed").value(rep.rate_closed);
  w.key("counts_by_order").begin_object();
  for (const auto& [order, count] : by_order) w.key(provenance_name(order)).value(count);
  w.end_object();
  w.end_object();
  emit_json(w.take(), out_path);

  if (!csv_path.empty()) {
    CsvWriter csv({"index", "index_bits", "provenance"});
    for (const auto& e : rep.entries)
      csv.row({std::to_string(e.index.value), e.index.bits(), provenance_name(e.order)});
    emit_csv(csv.str(), csv_path);
  }
}

void run_order_check(const std::string& less_s, const std::string& more_s, int n, int max_order,
                     const std::string& out_path) {
  PolarIndex less = parse_cli_index(less_s, n);
  PolarIndex more = parse_cli_index(more_s, n > 0 ? n : less.n);
  auto rel = dominates(more, less, max_order);
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kSchema);
  w.key("command").value("order");
  w.key("mode").value("check");
  w.key("n").value(less.n);
  w.key("max_order").value(max_order);
  w.key("less").begin_object();
  w.key("index").value(static_cast<std::uint64_t>(less.value));
  w.key("index_bits").value(less.bits());
  w.end_object();
  w.key("more").begin_object();
  w.key("index").value(static_cast<std::uint64_t>(more.value));
  w.key("index_bits").value(more.bits());
  w.end_object();
  w.key("dominates").value(rel.has_value());
  w.key("witness").begin_array();
  if (rel) {
    for (const auto& step : rel->witness) {
      w.begin_object();
      w.key("order").value(step.order);
      w.key("position").value(step.position);
      w.key("gap").value(step.gap);
      w.end_object();
    }
  }
  w.end_array();
  w.end_object();
  emit_json(w.take(), out_path);
}

void run_order_closure(int n, const std::string& seeds_csv, const std::string& direction,
                       int max_order, const std::string& out_path, const std::string& csv_path) {
  if (direction != "up" && direction != "down")
    throw validation_error("--direction must be 'up' or 'down'");
  std::vector<PolarIndex> seeds;
  std::size_t pos = 0;
  while (pos <= seeds_csv.size()) {
    std::size_t comma = seeds_csv.find(',', pos);
    if (comma == std::string::npos) comma = seeds_csv.size();
    std::string item = seeds_csv.substr(pos, comma - pos);
    if (!item.empty()) seeds.push_back(parse_index(item, n));
    pos = comma + 1;
  }
  if (seeds.empty()) throw validation_error("--seeds must list at least one index");
  std::vector<PolarIndex> closure = direction == "up" ? upward_closure(seeds, max_order)
                                                      : downward_closure(seeds, max_order);
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kSchema);
  w.key("command").value("order");
  w.key("mode").value("closure");
  w.key("n").value(n);
  w.key("direction").value(direction);
  w.key("max_order").value(max_order);
  w.key("seeds").begin_array();
  for (const auto& s : seeds) w.value(static_cast<std::uint64_t>(s.value));
  w.end_array();
  w.key("count").value(static_cast<std::uint64_t>(closure.size()));
  w.key("indices").begin_array();
  for (const auto& k : closure) w.value(static_cast<std::uint64_t>(k.value));
  w.end_array();
  w.end_object();
  emit_json(w.take(), out_path);

  if (!csv_path.empty()) {
    CsvWriter csv({"index", "index_bits"});
    for (const auto& k : closure) csv.row({std::to_string(k.value), k.bits()});
    emit_csv(csv.str(), csv_path);
  }
}

std::string design_entry_name(const DesignEntry& e) {
  if (e.label == "po") return "po" + std::to_string(e.order);
  return e.label;
}

void run_design(int n, double rate, const ChannelSpec& spec, bool has_snr, double snr_db,
                bool table, bool lazy, const std::string& emit_frozen,
                const std::string& out_path, const std::string& csv_path) {
  DesignResult d = design_code(spec, n, rate, GaOptions{table}, lazy);
  const std::uint64_t total = std::uint64_t{1} << n;

  std::map<std::string, std::uint64_t> prov_counts;
  for (const auto& e : d.provenance) ++prov_counts[design_entry_name(e)];

  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kSchema);
  w.key("command").value("design");
  w.key("n").value(d.n);
  write_channel(w, d.channel);
  if (has_snr) w.key("snr_db").value(snr_db);
  w.key("rate_target").value(d.rate);
  w.key("k_info").value(d.k_info);
  w.key("rate_actual").value(static_cast<double>(d.k_info) / static_cast<double>(total));
  w.key("base_llr").value(d.base_llr);
  w.key("regime").value(d.regime);
  w.key("lazy").value(d.lazy);
  w.key("omega_count").value(d.omega_count);
  w.key("closure_only_rate").value(1.0 - static_cast<double>(d.omega_count) / static_cast<double>(total));
  w.key("evolve_updates").value(d.evolve_updates);
  w.key("profile_computed").value(!d.profile.values.empty());
  if (d.union_bound_value >= 0.0) w.key("union_bound").value(d.union_bound_value);
  w.key("provenance_counts").begin_object();
  for (const auto& [name, count] : prov_counts) w.key(name).value(count);
  w.end_object();
  w.key("info").begin_array();
  for (std::uint32_t v : d.info) w.value(static_cast<std::uint64_t>(v));
  w.end_array();
  w.key("frozen").begin_array();
  for (std::uint32_t v : d.frozen) w.value(static_cast<std::uint64_t>(v));
  w.end_array();
  w.end_object();
  emit_json(w.take(), out_path);

  if (!emit_frozen.empty()) write_text_file(emit_frozen, render_frozen_set(d.frozen));

  if (!csv_path.empty()) {
    std::vector<std::uint8_t> frozen_mask = frozen_mask_of(d);
    CsvWriter csv({"index", "index_bits", "provenance", "frozen", "value", "error_prob"});
    for (std::uint64_t i = 0; i < total; ++i) {
      PolarIndex k = make_index(n, i);
      bool have_profile = !d.profile.values.empty();
      csv.row({std::to_string(i), k.bits(), design_entry_name(d.provenance[i]),
               frozen_mask[i] ? "1" : "0",
               have_profile ? format_double(d.profile.values[i]) : std::string(),
               have_profile ? format_double(d.profile.error_probs[i]) : std::string()});
    }
    emit_csv(csv.str(), csv_path);
  }
}

std::vector<std::uint32_t> auto_frozen_set(const ChannelSpec& spec, int n, double rate,
                                           bool has_rate) {
  if (!has_rate) throw validation_error("--frozen auto needs --rate");
  if (rate < 0.0 || rate > 1.0) throw validation_error("--rate must lie in [0, 1]");
  const std::uint64_t total = std::uint64_t{1} << n;
  const auto k_info = static_cast<std::uint64_t>(std::llround(rate * static_cast<double>(total)));
  if (spec.kind == ChannelKind::AWGN) {
    DesignResult d = design_code(spec, n, rate);
    return d.frozen;
  }
  if (spec.kind == ChannelKind::BEC) {
    ReliabilityProfile prof = bec_profile(spec.param, n);
    std::vector<std::uint32_t> order(total);
    for (std::uint64_t i = 0; i < total; ++i) order[i] = static_cast<std::uint32_t>(i);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return prof.error_probs[a] > prof.error_probs[b];
    });
    std::vector<std::uint32_t> frozen(order.begin(),
                                      order.begin() + static_cast<std::ptrdiff_t>(total - k_info));
    std::sort(frozen.begin(), frozen.end());
    return frozen;
  }
  throw validation_error("--frozen auto supports the bec and awgn channels only");
}

void run_simulate(const ChannelSpec& spec, int n, std::uint64_t trials, std::uint64_t seed,
                  int blocks, const std::string& frozen_arg, bool has_rate, double rate,
                  const std::string& out_path, const std::string& csv_path) {
  SimConfig cfg;
  cfg.channel = spec;
  cfg.n = n;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.blocks = blocks;

  if (frozen_arg.empty()) {
    SimResult r = genie_channel_error_rates(cfg);
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(kSchema);
    w.key("command").value("simulate");
    w.key("mode").value("genie");
    write_channel(w, spec);
    w.key("n").value(n);
    w.key("trials").value(r.trials);
    w.key("seed").value(r.seed);
    w.key("blocks").value(r.blocks);
    w.key("error_counts").begin_array();
    for (std::uint64_t c : r.error_counts) w.value(c);
    w.end_array();
    w.key("rates").begin_array();
    for (double v : r.rates) w.value(v);
    w.end_array();
    w.key("half_widths").begin_array();
    for (double v : r.half_widths) w.value(v);
    w.end_array();
    w.end_object();
    emit_json(w.take(), out_path);

    if (!csv_path.empty()) {
      CsvWriter csv({"index", "index_bits", "errors", "rate", "half_width"});
      for (std::size_t i = 0; i < r.rates.size(); ++i) {
        PolarIndex k = make_index(n, i);
        csv.row({std::to_string(i), k.bits(), std::to_string(r.error_counts[i]),
                 format_double(r.rates[i]), format_double(r.half_widths[i])});
      }
      emit_csv(csv.str(), csv_path);
    }
    return;
  }

  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::uint32_t> frozen;
  std::string source;
  if (frozen_arg == "auto") {
    frozen = auto_frozen_set(spec, n, rate, has_rate);
    source = "auto";
  } else {
    frozen = parse_frozen_set(read_text_file(frozen_arg), n);
    source = "file";
  }
  std::vector<std::uint8_t> mask(total, 0);
  for (std::uint32_t v : frozen) mask[v] = 1;
  SimResult r = simulate_fer(mask, cfg);

  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kSchema);
  w.key("command").value("simulate");
  w.key("mode").value("fer");
  write_channel(w, spec);
  w.key("n").value(n);
  w.key("trials").value(r.trials);
  w.key("seed").value(r.seed);
  w.key("blocks").value(r.blocks);
  w.key("frozen_source").value(source);
  w.key("frozen_count").value(static_cast<std::uint64_t>(frozen.size()));
  w.key("k_info").value(total - frozen.size());
  w.key("frame_errors").value(r.frame_errors);
  w.key("fer").value(r.fer);
  w.key("fer_half_width").value(r.fer_half_width);
  w.end_object();
  emit_json(w.take(), out_path);
}

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

struct CheckList {
  JsonWriter& w;
  int passed = 0;
  int failed = 0;

  explicit CheckList(JsonWriter& writer) : w(writer) { w.key("checks").begin_array(); }

  void add(const std::string& name, bool ok,
           const std::function<void(JsonWriter&)>& fields = nullptr) {
    w.begin_object();
    w.key("name").value(name);
    if (fields) fields(w);
    w.key("pass").value(ok);
    w.end_object();
    ok ? ++passed : ++failed;
  }

  int finish() {
    w.end_array();
    w.key("passed").value(passed);
    w.key("failed").value(failed);
    w.key("pass").value(failed == 0);
    return failed;
  }
};

bool rel_close(double value, double expected, double tol) {
  return std::fabs(value - expected) <= tol * std::fabs(expected);
}

double rel_err(double value, double expected) {
  return std::fabs(value - expected) / std::fabs(expected);
}

struct Pin {
  double x;
  double y;
};

// Frozen reference values (computed once with an independent high-precision
// evaluation and pinned here; every build must reproduce them).
constexpr Pin kErfcPins[] = {
    {-1.0, 1.842700792949714869341},   {-0.5, 1.520499877813046537683},
    {0.5, 0.4795001221869534623173},   {1.0, 0.1572992070502851306588},
    {2.0, 0.004677734981047265837931}, {3.0, 2.209049699858544137278e-5},
    {5.0, 1.537459794428034850188e-12}, {8.0, 1.122429717298292707997e-29},
    {12.0, 1.35626116920590421278e-64}, {20.0, 5.395865611607900928935e-176},
    {26.0, 5.663192408856142846476e-296}};

constexpr Pin kErfcLogPins[] = {{30.0, -903.9741171106438780796},
                                {50.0, -2504.484587848451371873},
                                {100.0, -10005.17758512266433257},
                                {150.0, -22505.58302245800874548},
                                {200.0, -40005.87069480908213585}};

constexpr Pin kPhiExactPins[] = {
    {0.1, 0.9523148417697606854035}, {0.5, 0.7959457343664996874372},
    {1.0, 0.6498865953248691856752}, {2.0, 0.4495995092066728297117},
    {kPi, 0.3050514862024737539432}, {5.0, 0.1687930250773934557368},
    {10.0, 0.03846281136938267744409}, {20.0, 0.002411314735412257330182},
    {35.0, 4.459457318005280163932e-5}, {50.0, 8.928200428921458332462e-7}};

constexpr Pin kF2Pins[] = {
    {1e-4, 3.182992762353119847608e-9}, {0.01, 3.172526495809651530037e-5},
    {0.3, 0.02606033967646880173581},   {1.0, 0.2399163119235707141172},
    {kPi / 2, 0.5203678435968886714612}, {2.0, 0.7737937701489068914446},
    {kPi, 1.567186709435760691908},      {5.0, 3.07847125353991250959},
    {20.0, 17.46211034780268520969},     {100.0, 97.28051590057084929267},
    {1000.0, 997.2329311074496621191}};

constexpr double kFixedPointPin = 3.1558402797966751;
constexpr double kExactPhiCrossingPin = 2.97981204;
constexpr double kErfcInvHalfPin = 0.47693627620446987338;
constexpr double kErfcInvTailPin = 26.209469960516123886;
constexpr double kPhiInvHalfPin = 0.90987284623914550389;
constexpr double kLlrMaxPin = 2747.7452624447882743;
constexpr double kGoldenFixedPoint = 0.3819660112501051518;  // (3 - sqrt(5)) / 2

constexpr std::uint32_t kClosure36[36] = {0,  1,  2,  3,  4,  5,  6,  7,  8,  9,  10, 11,
                                          12, 13, 14, 16, 17, 18, 19, 20, 21, 22, 24, 25,
                                          26, 28, 32, 33, 34, 35, 36, 37, 38, 40, 41, 42};

constexpr std::uint64_t kCountPins[11] = {21, 34, 55, 89, 144, 233, 377, 610, 987, 1597, 2584};
constexpr double kRatePins[11] = {0.6719, 0.7344, 0.7852, 0.8262, 0.8594, 0.8862,
                                  0.9080, 0.9255, 0.9398, 0.9513, 0.9606};

constexpr double kUnionBoundPins[3] = {0.000330919277789, 2.42047085815e-6, 3.63736374364e-9};
constexpr double kBaseLlrPins[3] = {5.03570164718, 6.33957276984, 7.98104925988};

// Largest attractor GA value at base mean 1.5, even n = 4, 6, 8, 10, 12.
constexpr double kEvenMaxPins[5] = {1.4046, 1.3219, 1.2037, 1.0399, 0.8241};

int suite_special_functions(JsonWriter& w, const std::string& csv_path) {
  CheckList checks(w);

  {
    double worst = 0.0;
    for (const Pin& p : kErfcPins) worst = std::max(worst, rel_err(polarforge::erfc(p.x), p.y));
    checks.add("erfc-grid", worst <= 1e-10, [&](JsonWriter& j) {
      j.key("points").value(static_cast<int>(std::size(kErfcPins)));
      j.key("max_rel_err").value(worst);
      j.key("tolerance").value(1e-10);
    });
  }
  {
    double worst = 0.0;
    for (const Pin& p : kErfcLogPins) worst = std::max(worst, rel_err(erfc_log(p.x), p.y));
    checks.add("erfc-log-grid", worst <= 1e-10, [&](JsonWriter& j) {
      j.key("points").value(static_cast<int>(std::size(kErfcLogPins)));
      j.key("max_rel_err").value(worst);
      j.key("tolerance").value(1e-10);
    });
  }
  {
    double e1 = rel_err(erfcinv(0.5), kErfcInvHalfPin);
    double e2 = rel_err(erfcinv(1e-300), kErfcInvTailPin);
    checks.add("erfcinv-pins", e1 <= 1e-12 && e2 <= 1e-12, [&](JsonWriter& j) {
      j.key("rel_err_half").value(e1);
      j.key("rel_err_tail").value(e2);
    });
  }
  {
    const double ys[] = {1e-300, 1e-200, 1e-100, 1e-12, 1e-6, 1e-3, 0.01, 0.1,
                         0.25,   0.5,    0.9,    1.0,   1.1,  1.5,  1.9,  1.99};
    double worst = 0.0;
    for (double y : ys) {
      double back = polarforge::erfc(erfcinv(y));
      worst = std::max(worst, std::fabs(back - y) / std::max(y, 1e-300));
    }
    checks.add("erfcinv-roundtrip", worst <= 1e-12, [&](JsonWriter& j) {
      j.key("points").value(16);
      j.key("max_scaled_err").value(worst);
    });
  }
  {
    double v = llr_max();
    checks.add("llr-max-pin", rel_close(v, kLlrMaxPin, 1e-12),
               [&](JsonWriter& j) { j.key("value").value(v); });
  }
  {
    double v = phi_inv(0.5);
    checks.add("phi-inv-half-pin", rel_close(v, kPhiInvHalfPin, 1e-12),
               [&](JsonWriter& j) { j.key("value").value(v); });
  }
  {
    double worst = 0.0;
    for (const Pin& p : kPhiExactPins) worst = std::max(worst, rel_err(phi_exact(p.x), p.y));
    checks.add("phi-exact-grid", worst <= 1e-8, [&](JsonWriter& j) {
      j.key("points").value(static_cast<int>(std::size(kPhiExactPins)));
      j.key("max_rel_err").value(worst);
    });
  }
  {
    double worst = 0.0;
    for (const Pin& p : kF2Pins) worst = std::max(worst, rel_err(ga_f2(p.x), p.y));
    checks.add("f2-grid", worst <= 1e-9, [&](JsonWriter& j) {
      j.key("points").value(static_cast<int>(std::size(kF2Pins)));
      j.key("max_rel_err").value(worst);
    });
  }
  {
    // Peak gap between the exact and simplified transfer functions.
    double gap = 0.0;
    const int pts = 200;
    for (int i = 0; i < pts; ++i) {
      double x = 1e-4 * std::pow(50.0 / 1e-4, static_cast<double>(i) / (pts - 1));
      gap = std::max(gap, std::fabs(phi_exact(x) - phi_simplified(x)));
    }
    checks.add("phi-gap", gap >= 0.17 && gap <= 0.19,
               [&](JsonWriter& j) { j.key("max_abs_gap").value(gap); });
  }
  {
    bool mono = true;
    double prev = phi_simplified(1e-10);
    for (int i = 1; i < 400; ++i) {
      double x = 1e-10 * std::pow(2747.0 / 1e-10, static_cast<double>(i) / 399.0);
      double v = phi_simplified(x);
      if (v >= prev) mono = false;
      prev = v;
    }
    checks.add("phi-monotone", mono, nullptr);
  }
  {
    bool mono = true;
    double prev = phi_simplified_table(1e-10);
    for (int i = 1; i < 1000; ++i) {
      double x = 1e-10 * std::pow(2747.0 / 1e-10, static_cast<double>(i) / 999.0);
      double v = phi_simplified_table(x);
      if (v > prev) mono = false;
      prev = v;
    }
    checks.add("table-monotone", mono, nullptr);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      double x = 1e-6 * std::pow(2000.0 / 1e-6, static_cast<double>(i) / 199.0);
      worst = std::max(worst, rel_err(phi_simplified_table(x), phi_simplified(x)));
    }
    checks.add("table-accuracy", worst <= 1e-3,
               [&](JsonWriter& j) { j.key("max_rel_err").value(worst); });
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      double y = 1e-200 * std::pow(0.99 / 1e-200, static_cast<double>(i) / 199.0);
      worst = std::max(worst, rel_err(phi_inv_table(y), phi_inv(y)));
    }
    checks.add("table-inv-accuracy", worst <= 1e-3,
               [&](JsonWriter& j) { j.key("max_rel_err").value(worst); });
  }

  if (!csv_path.empty()) {
    CsvWriter csv({"x", "erfc", "phi_exact", "phi_simplified"});
    for (int i = 0; i < 200; ++i) {
      double x = 1e-4 * std::pow(50.0 / 1e-4, static_cast<double>(i) / 199.0);
      csv.row({format_double(x), format_double(polarforge::erfc(x)),
               format_double(phi_exact(x)), format_double(phi_simplified(x))});
    }
    emit_csv(csv.str(), csv_path);
  }
  return checks.finish();
}

int suite_fixed_point(JsonWriter& w) {
  CheckList checks(w);
  FixedPointReport rep = find_fixed_point_report();

  checks.add("root-pin", std::fabs(rep.root - kFixedPointPin) <= 2e-9,
             [&](JsonWriter& j) { j.key("root").value(rep.root); });
  {
    double gap = std::fabs(rep.root - kPi) / kPi;
    checks.add("root-vs-pi", gap <= 0.10, [&](JsonWriter& j) {
      j.key("root").value(rep.root);
      j.key("rel_gap").value(gap);
      j.key("tolerance").value(0.10);
    });
  }
  checks.add("ray-below-root", rep.grid_points_checked == 200,
             [&](JsonWriter& j) { j.key("grid_points").value(rep.grid_points_checked); });
  {
    double v = ga_f2(kPi);
    checks.add("f2-at-pi", rel_close(v, 1.567186709435760691908, 1e-10),
               [&](JsonWriter& j) { j.key("value").value(v); });
  }
  {
    double resid = std::fabs(ga_f2(rep.root) - rep.root / 2.0);
    checks.add("f2-at-root", resid <= 1e-8,
               [&](JsonWriter& j) { j.key("residual").value(resid); });
  }
  {
    double gap = std::fabs(rep.root_exact_phi - kPi) / kPi;
    checks.add("root-exact-phi",
               std::fabs(rep.root_exact_phi - kExactPhiCrossingPin) <= 1e-6 && gap <= 0.10,
               [&](JsonWriter& j) {
                 j.key("root").value(rep.root_exact_phi);
                 j.key("rel_gap").value(gap);
               });
  }
  {
    double table_root = find_fixed_point(GaOptions{true});
    checks.add("root-table", std::fabs(table_root - rep.root) <= 1e-3,
               [&](JsonWriter& j) { j.key("root").value(table_root); });
  }
  return checks.finish();
}

int suite_partial_order_bec(JsonWriter& w) {
  CheckList checks(w);

  {
    auto ops16 = generate_operators(16);
    auto ops6 = generate_operators(6);
    auto ops1 = generate_operators(1);
    bool ok = ops16.size() == 5 && ops6.size() == 3 && ops1.size() == 1 &&
              ops16[0].less_pattern == "0" && ops16[0].more_pattern == "1" &&
              ops16[1].less_pattern == "01" && ops16[1].more_pattern == "10" &&
              ops16[2].less_pattern == "0110" && ops16[2].more_pattern == "1001" &&
              ops16[3].less_pattern == "01101001" && ops16[3].more_pattern == "10010110" &&
              ops16[4].less_pattern == "0110100110010110" &&
              ops16[4].more_pattern == "1001011001101001";
    checks.add("operator-menu", ok, [&](JsonWriter& j) {
      j.key("n16").value(static_cast<int>(ops16.size()));
      j.key("n6").value(static_cast<int>(ops6.size()));
      j.key("n1").value(static_cast<int>(ops1.size()));
    });
  }
  {
    // Exhaustive: dominance must imply an erasure-probability drop.
    std::uint64_t pairs = 0, violations = 0;
    for (int n = 1; n <= 8; ++n) {
      DominanceMatrix matrix(n);
      const std::uint32_t total = 1u << n;
      for (int e = 1; e <= 9; ++e) {
        double eps = 0.1 * e;
        std::vector<double> z(total);
        for (std::uint32_t v = 0; v < total; ++v) z[v] = bec_z(eps, make_index(n, v));
        for (std::uint32_t more = 0; more < total; ++more) {
          for (std::uint32_t less = 0; less < total; ++less) {
            if (more == less || !matrix.get(more, less)) continue;
            ++pairs;
            if (!(z[more] <= z[less])) ++violations;
          }
        }
      }
    }
    checks.add("dominance-implies-z", violations == 0, [&](JsonWriter& j) {
      j.key("pairs_checked").value(pairs);
      j.key("violations").value(violations);
    });
  }
  {
    bool ok = true;
    PolarIndex k1001 = parse_index("1001", 4), k0110 = parse_index("0110", 4);
    for (int i = 1; i <= 99; ++i) {
      double eps = 0.01 * i;
      if (!(bec_z(eps, k1001) < bec_z(eps, k0110))) ok = false;
    }
    checks.add("z-ordering-1001-0110", ok,
               [&](JsonWriter& j) { j.key("points").value(99); });
  }
  {
    double z9 = bec_z(0.5, parse_index("1001", 4));
    double z6 = bec_z(0.5, parse_index("0110", 4));
    ReliabilityProfile p2 = bec_profile(0.5, 2);
    bool ok = std::fabs(z9 - 0.4673004150390625) <= 1e-16 &&
              std::fabs(z6 - 0.5326995849609375) <= 1e-16 &&
              std::fabs(p2.values[0] - 0.9375) <= 1e-16 &&
              std::fabs(p2.values[1] - 0.5625) <= 1e-16 &&
              std::fabs(p2.values[2] - 0.4375) <= 1e-16 &&
              std::fabs(p2.values[3] - 0.0625) <= 1e-16;
    checks.add("z-pins", ok, [&](JsonWriter& j) {
      j.key("z_1001").value(z9);
      j.key("z_0110").value(z6);
    });
  }
  {
    bool ok = true;
    for (int i = 1; i <= 19; ++i) {
      double z = 0.05 * i;
      double zp = bec_z(z, parse_index("1", 1));
      double zm = bec_z(z, parse_index("0", 1));
      if (std::fabs(zp - z * z) > 1e-15) ok = false;
      if (std::fabs(zm - (2 * z - z * z)) > 1e-15) ok = false;
      if (!(0.0 <= zp && zp <= z && z <= zm && zm <= 1.0)) ok = false;
    }
    checks.add("z-step-identities", ok, nullptr);
  }
  {
    // "01" composition: z -> (2z - z^2)^2, whose fixed point justifies the
    // erasure threshold for the MSB-0 no-11 family.
    double z = kGoldenFixedPoint;
    double h = (2 * z - z * z) * (2 * z - z * z);
    double form = z * (2 - z) * (2 - z);
    checks.add("golden-fixed-point",
               std::fabs(h - z) <= 1e-15 && std::fabs(form - 1.0) <= 1e-15,
               [&](JsonWriter& j) {
                 j.key("z").value(z);
                 j.key("composed").value(h);
               });
  }
  {
    // The MSB-0 no-11 family is uniformly at least as erasable as the base
    // channel for eps >= 0.40 (every such string factors into "0"/"01"
    // blocks, each of which keeps z >= eps above the golden fixed point).
    std::uint64_t members = 0, violations = 0;
    for (int n = 1; n <= 10; ++n) {
      auto fam = attractor_set_below_pi(n);
      for (int e = 4; e <= 9; ++e) {
        double eps = 0.1 * e;
        for (const auto& k : fam) {
          ++members;
          if (!(bec_z(eps, k) >= eps)) ++violations;
        }
      }
    }
    checks.add("below-pi-family-z-floor", violations == 0, [&](JsonWriter& j) {
      j.key("members_checked").value(members);
      j.key("violations").value(violations);
    });
  }
  {
    // Documented contradiction: the FULL no-11 family does not satisfy the
    // same floor (a leading '1' squares the erasure probability immediately);
    // the exact violation census is pinned as a regression.
    std::uint64_t violations = 0;
    std::string first;
    double first_z = 0.0, first_eps = 0.0;
    for (int n = 1; n <= 10; ++n) {
      auto fam = attractor_set(n);
      for (int e = 4; e <= 9; ++e) {
        double eps = 0.1 * e;
        for (const auto& k : fam) {
          double z = bec_z(eps, k);
          if (!(z >= eps)) {
            ++violations;
            if (first.empty()) {
              first = k.bits();
              first_z = z;
              first_eps = eps;
            }
          }
        }
      }
    }
    checks.add("full-family-z-floor-census", violations == 83, [&](JsonWriter& j) {
      j.key("violations").value(violations);
      j.key("expected").value(std::uint64_t{83});
      j.key("first_counterexample").value(first);
      j.key("first_eps").value(first_eps);
      j.key("first_z").value(first_z);
    });
  }
  return checks.finish();
}

int suite_attractor_ga(JsonWriter& w) {
  CheckList checks(w);

  {
    bool ok = true;
    for (int n = 1; n <= 24; ++n)
      if (attractor_count(n) != fib(n + 2)) ok = false;
    for (int n = 1; n <= 16; ++n)
      if (attractor_set_below_pi(n).size() != fib(n + 1)) ok = false;
    checks.add("fibonacci-counts", ok, nullptr);
  }
  {
    AttractorReport rep = bad_set(6, LlrRegime::below_half_pi);
    bool ok = rep.total_count == 36 && rep.seed_count == 21;
    for (std::size_t i = 0; ok && i < rep.entries.size(); ++i)
      if (rep.entries[i].index.value != kClosure36[i]) ok = false;
    checks.add("closure-36", ok, [&](JsonWriter& j) {
      j.key("seed_count").value(rep.seed_count);
      j.key("closure_count").value(rep.total_count);
    });
  }
  {
    AttractorReport rep = bad_set(6, LlrRegime::below_half_pi);
    std::uint64_t n_attr = 0, n_o2 = 0, n_o3 = 0;
    for (const auto& e : rep.entries) {
      if (e.order == 0) ++n_attr;
      if (e.order == 2) ++n_o2;
      if (e.order == 3) ++n_o3;
    }
    checks.add("provenance-histogram", n_attr == 21 && n_o2 == 14 && n_o3 == 1,
               [&](JsonWriter& j) {
                 j.key("attractor").value(n_attr);
                 j.key("order2").value(n_o2);
                 j.key("order3").value(n_o3);
               });
  }
  {
    ChannelSpec spec{ChannelKind::AWGN, std::sqrt(2.0 / 1.5707)};
    ClassifyReport rep = classify_vs_natural(spec, 6);
    std::vector<std::uint32_t> extras;
    for (std::uint32_t v = 0; v < 64; ++v)
      if (rep.labels[v] == IndexLabel::computed_worse) extras.push_back(v);
    bool ok = rep.worse_count == 36 && rep.computed_worse_count == 2 && extras.size() == 2 &&
              extras[0] == 15 && extras[1] == 48;
    checks.add("classification-38", ok, [&](JsonWriter& j) {
      j.key("worse").value(rep.worse_count);
      j.key("computed_worse").value(rep.computed_worse_count);
      j.key("total").value(rep.worse_count + rep.computed_worse_count);
    });
  }
  {
    ChannelSpec spec{ChannelKind::AWGN, std::sqrt(2.0 / 3.1405)};
    ClassifyReport rep = classify_vs_natural(spec, 6);
    const std::uint32_t expected_computed[6] = {24, 32, 33, 34, 36, 40};
    std::vector<std::uint32_t> extras;
    for (std::uint32_t v = 0; v < 64; ++v)
      if (rep.labels[v] == IndexLabel::computed_worse) extras.push_back(v);
    bool ok = rep.worse_count == 21 && rep.computed_worse_count == 6 && extras.size() == 6;
    for (int i = 0; ok && i < 6; ++i)
      if (extras[static_cast<std::size_t>(i)] != expected_computed[i]) ok = false;
    checks.add("below-pi-27", ok, [&](JsonWriter& j) {
      j.key("worse").value(rep.worse_count);
      j.key("computed_worse").value(rep.computed_worse_count);
      j.key("total").value(rep.worse_count + rep.computed_worse_count);
    });
  }
  {
    // All 27 below-pi bad indices sit inside the 38 found below pi/2.
    ChannelSpec below_pi{ChannelKind::AWGN, std::sqrt(2.0 / 3.1405)};
    ChannelSpec below_half{ChannelKind::AWGN, std::sqrt(2.0 / 1.5707)};
    ClassifyReport a = classify_vs_natural(below_pi, 6);
    ClassifyReport b = classify_vs_natural(below_half, 6);
    bool ok = true;
    for (std::uint32_t v = 0; v < 64; ++v) {
      bool bad_pi = a.labels[v] == IndexLabel::worse || a.labels[v] == IndexLabel::computed_worse;
      bool bad_half = b.labels[v] == IndexLabel::worse || b.labels[v] == IndexLabel::computed_worse;
      if (bad_pi && !bad_half) ok = false;
    }
    checks.add("regime-nesting", ok, nullptr);
  }
  {
    double overall = 0.0;
    bool ok = true;
    for (int n = 2; n <= 12; n += 2) {
      auto fam = attractor_set(n);
      for (double base : {0.8, 1.2, 1.5}) {
        for (const auto& k : fam) {
          double v = evolve(LlrMean{base, false}, k).value;
          overall = std::max(overall, v);
          if (!(v < kPi / 2)) ok = false;
        }
      }
    }
    checks.add("ga-sound-even-n", ok, [&](JsonWriter& j) { j.key("max_value").value(overall); });
  }
  {
    double overall = 0.0;
    bool ok = true;
    for (int n = 1; n <= 12; ++n) {
      auto fam = attractor_set_below_pi(n);
      for (double base : {1.7, 2.5, 3.0}) {
        for (const auto& k : fam) {
          double v = evolve(LlrMean{base, false}, k).value;
          overall = std::max(overall, v);
          if (!(v < kPi)) ok = false;
        }
      }
    }
    checks.add("ga-sound-below-pi", ok, [&](JsonWriter& j) { j.key("max_value").value(overall); });
  }
  {
    bool ok = true;
    double prev = 10.0;
    int slot = 0;
    for (int n = 4; n <= 12; n += 2, ++slot) {
      auto fam = attractor_set(n);
      double mx = 0.0;
      for (const auto& k : fam) mx = std::max(mx, evolve(LlrMean{1.5, false}, k).value);
      if (std::fabs(mx - kEvenMaxPins[slot]) > 1e-3) ok = false;
      if (!(mx < prev)) ok = false;
      prev = mx;
    }
    checks.add("even-maxima-decreasing", ok, nullptr);
  }
  {
    double a = evolve(LlrMean{1.0, false}, parse_index("0110", 4)).value;
    double b = evolve(LlrMean{1.0, false}, parse_index("1001", 4)).value;
    bool ok = std::fabs(a - 0.2231362749) <= 1e-9 && std::fabs(b - 0.3040276791) <= 1e-9 && a < b;
    checks.add("four-step-pins", ok, [&](JsonWriter& j) {
      j.key("v0110").value(a);
      j.key("v1001").value(b);
    });
  }
  {
    const double pins[8] = {0.0070020962442069173, 0.30402767909098985, 0.50758825726528855,
                            3.0951750805956276,    0.92828369808050917, 4.4811719750404334,
                            5.7872634202634726,    16.0};
    ReliabilityProfile prof = full_profile_from(LlrMean{2.0, false}, 3);
    double worst = 0.0;
    for (int i = 0; i < 8; ++i)
      worst = std::max(worst, rel_err(prof.values[static_cast<std::size_t>(i)], pins[i]));
    checks.add("profile-pins-n3", worst <= 1e-9,
               [&](JsonWriter& j) { j.key("max_rel_err").value(worst); });
  }
  {
    ReliabilityProfile prof = full_profile_from(LlrMean{2.0, false}, 6);
    bool ok = true;
    for (std::uint32_t v = 0; v < 64; ++v) {
      LlrMean m = evolve(LlrMean{2.0, false}, make_index(6, v));
      if (m.value != prof.values[v] || m.clamped != static_cast<bool>(prof.clamped[v])) ok = false;
    }
    checks.add("profile-equals-evolve", ok, nullptr);
  }
  {
    // Two proof inequalities, on a 100-point log grid with relative margins.
    double min2 = 1e300, min4 = 1e300;
    PolarIndex k0110 = parse_index("0110", 4), k1001 = parse_index("1001", 4);
    for (int i = 0; i < 100; ++i) {
      double x = 1e-4 * std::pow(50.0 / 1e-4, static_cast<double>(i) / 99.0);
      double gf = 2.0 * ga_f2(x);       // plus after minus
      double fg = ga_f2(2.0 * x);       // minus after plus
      min2 = std::min(min2, (fg - gf) / gf);
      double a = evolve(LlrMean{x, false}, k0110).value;
      double b = evolve(LlrMean{x, false}, k1001).value;
      min4 = std::min(min4, (b - a) / a);
    }
    checks.add("proof-inequalities", min2 > 1e-12 && min4 > 1e-12, [&](JsonWriter& j) {
      j.key("min_rel_margin_2step").value(min2);
      j.key("min_rel_margin_4step").value(min4);
    });
  }
  {
    auto fam = attractor_set(6);
    double mx = 0.0;
    for (const auto& k : fam) mx = std::max(mx, evolve(LlrMean{kPi / 2, false}, k).value);
    checks.add("attractor-max-at-half-pi", std::fabs(mx - 1.55358798596) <= 1e-6 && mx < kPi / 2,
               [&](JsonWriter& j) { j.key("max_value").value(mx); });
  }
  {
    double v = error_prob_value(4.0);
    checks.add("error-prob-pin", rel_close(v, 0.078649603525142565329, 1e-12),
               [&](JsonWriter& j) { j.key("value").value(v); });
  }
  {
    LlrMean m = evolve(LlrMean{0.3, false}, parse_index("0000", 4));
    LlrMean top = evolve(LlrMean{2000.0, false}, parse_index("11", 2));
    bool ok = m.value == kLlrMin && m.clamped && top.clamped &&
              rel_close(top.value, kLlrMaxPin, 1e-12);
    checks.add("clamp-box", ok, [&](JsonWriter& j) {
      j.key("floor_value").value(m.value);
      j.key("ceiling_value").value(top.value);
    });
  }
  return checks.finish();
}

int suite_series(JsonWriter& w) {
  CheckList checks(w);
  {
    bool ok = true;
    for (int n = 2; n <= 20; ++n) {
      DeltaBreakdown d = delta_formula(n);
      std::uint64_t pow2 = std::uint64_t{1} << n;
      if (d.delta != d.delta1 + d.delta2) ok = false;
      if (d.delta != pow2 - fib(n + 2)) ok = false;
      if (d.closed_form != d.delta) ok = false;
      if (d.complement != d.delta) ok = false;
    }
    checks.add("delta-identities", ok, [&](JsonWriter& j) {
      j.key("n_range").value("2..20");
    });
  }
  {
    DeltaBreakdown d3 = delta_formula(3);
    DeltaBreakdown d6 = delta_formula(6);
    DeltaBreakdown d20 = delta_formula(20);
    bool ok = d3.delta == 3 && d6.delta == 43 && d20.delta == 1030865 &&
              std::fabs(d20.ratio - 0.98310947418212891) <= 1e-12;
    checks.add("delta-pins", ok, [&](JsonWriter& j) {
      j.key("delta3").value(d3.delta);
      j.key("delta6").value(d6.delta);
      j.key("delta20").value(d20.delta);
      j.key("ratio20").value(d20.ratio);
    });
  }
  {
    // The 60-term truncation is pinned first (regression), then held against
    // the 1e-9 target it cannot meet: the tail decays like (phi/2)^t, so 60
    // terms leave ~7.03e-6 — about 106 terms are needed for 1e-9.
    double s60 = fibonacci_series_partial(2, 60);
    checks.add("fib-series-60-k2-value", std::fabs(s60 - 1.9999929696175816) <= 1e-12,
               [&](JsonWriter& j) { j.key("value").value(s60); });
    double err60 = std::fabs(s60 - 2.0);
    checks.add("fib-series-60-k2", err60 <= 1e-9, [&](JsonWriter& j) {
      j.key("terms").value(60);
      j.key("value").value(s60);
      j.key("abs_error").value(err60);
      j.key("tolerance").value(1e-9);
    });
    double s106 = fibonacci_series_partial(2, 106);
    double err106 = std::fabs(s106 - 2.0);
    checks.add("fib-series-106-k2", err106 <= 1e-9, [&](JsonWriter& j) {
      j.key("terms").value(106);
      j.key("abs_error").value(err106);
    });
    double s60k3 = fibonacci_series_partial(3, 60);
    checks.add("fib-series-60-k3", std::fabs(s60k3 - 0.6) <= 1e-9,
               [&](JsonWriter& j) { j.key("value").value(s60k3); });
  }
  return checks.finish();
}

int suite_table2(JsonWriter& w) {
  CheckList checks(w);
  {
    bool ok = true;
    for (int n = 6; n <= 16; ++n)
      if (attractor_count(n) != kCountPins[n - 6]) ok = false;
    checks.add("counts-pinned", ok, nullptr);
  }
  {
    double worst = 0.0;
    for (int n = 6; n <= 16; ++n)
      worst = std::max(worst, std::fabs(rate1(n) - kRatePins[n - 6]));
    checks.add("rates-pinned-4dp", worst < 5e-5,
               [&](JsonWriter& j) { j.key("max_abs_err").value(worst); });
  }
  {
    bool ok = true;
    for (int n = 1; n <= 24; ++n) {
      double expect = 1.0 - static_cast<double>(fib(n + 2)) /
                                static_cast<double>(std::uint64_t{1} << n);
      if (rate1(n) != expect) ok = false;
    }
    checks.add("rate-formula", ok, nullptr);
  }
  return checks.finish();
}

int suite_example6(JsonWriter& w) {
  CheckList checks(w);
  AttractorReport rep = bad_set(6, LlrRegime::below_half_pi, 3);

  {
    bool ok = rep.total_count == 36;
    for (std::size_t i = 0; ok && i < rep.entries.size(); ++i)
      if (rep.entries[i].index.value != kClosure36[i]) ok = false;
    checks.add("closure-set-36", ok,
               [&](JsonWriter& j) { j.key("count").value(rep.total_count); });
  }

  std::uint64_t n_attr = 0, n_o2 = 0, n_o3 = 0;
  std::vector<std::string> order2_extras;
  for (const auto& e : rep.entries) {
    if (e.order == 0) ++n_attr;
    if (e.order == 2) {
      ++n_o2;
      if (e.index.value == 14 || e.index.value == 22) order2_extras.push_back(e.index.bits());
    }
    if (e.order == 3) ++n_o3;
  }
  checks.add("provenance-attractor-21", n_attr == 21,
             [&](JsonWriter& j) { j.key("count").value(n_attr); });
  // The pinned reference split expects 12 order-2 / 3 order-3 members, but
  // 001110 and 010110 each admit a single-swap (order-2) derivation, so the
  // minimal-order census is 14 / 1. Pinned expectation kept; the divergence
  // is reported, not hidden.
  checks.add("provenance-order2-12", n_o2 == 12, [&](JsonWriter& j) {
    j.key("computed").value(n_o2);
    j.key("expected").value(std::uint64_t{12});
    j.key("order2_only_in_reference_as_order3").begin_array();
    for (const auto& b : order2_extras) j.value(b);
    j.end_array();
  });
  checks.add("provenance-order3-3", n_o3 == 3, [&](JsonWriter& j) {
    j.key("computed").value(n_o3);
    j.key("expected").value(std::uint64_t{3});
    j.key("order3_member").value("011100");
  });
  {
    // Order-2 witnesses from the seed 101010 for the two divergent members.
    auto w14 = dominates(parse_index("101010", 6), parse_index("001110", 6), 2);
    auto w22 = dominates(parse_index("101010", 6), parse_index("010110", 6), 2);
    checks.add("order2-witnesses-exist", w14.has_value() && w22.has_value(), [&](JsonWriter& j) {
      j.key("steps_101010_above_001110").value(
          w14 ? static_cast<int>(w14->witness.size()) : -1);
      j.key("steps_101010_above_010110").value(
          w22 ? static_cast<int>(w22->witness.size()) : -1);
    });
  }
  {
    ChannelSpec spec{ChannelKind::AWGN, std::sqrt(2.0 / 1.5707)};
    ClassifyReport crep = classify_vs_natural(spec, 6);
    std::vector<std::uint32_t> extras;
    for (std::uint32_t v = 0; v < 64; ++v)
      if (crep.labels[v] == IndexLabel::computed_worse) extras.push_back(v);
    bool ok38 = crep.worse_count + crep.computed_worse_count == 38;
    checks.add("classified-total-38", ok38, [&](JsonWriter& j) {
      j.key("worse").value(crep.worse_count);
      j.key("computed_worse").value(crep.computed_worse_count);
    });
    bool okx = extras.size() == 2 && extras[0] == 15 && extras[1] == 48;
    checks.add("computed-extras", okx, [&](JsonWriter& j) {
      j.key("extras").begin_array();
      for (std::uint32_t v : extras) j.value(make_index(6, v).bits());
      j.end_array();
    });
  }
  {
    ChannelSpec spec{ChannelKind::AWGN, std::sqrt(2.0 / 3.1405)};
    ClassifyReport crep = classify_vs_natural(spec, 6);
    std::uint64_t total = crep.worse_count + crep.computed_worse_count;
    checks.add("below-pi-27", total == 27, [&](JsonWriter& j) {
      j.key("worse").value(crep.worse_count);
      j.key("computed_worse").value(crep.computed_worse_count);
      j.key("total").value(total);
    });
  }
  return checks.finish();
}

int suite_fig7(JsonWriter& w, std::uint64_t seed, std::uint64_t trials) {
  const double snrs[3] = {1.0, 2.0, 3.0};

  w.key("points").begin_array();
  struct PointResult {
    double ub = 0.0, fer = 0.0, half = 0.0;
    std::uint64_t frames = 0;
    double base = 0.0;
  } results[3];
  for (int i = 0; i < 3; ++i) {
    double sigma = std::sqrt(1.0 / (2.0 * std::pow(10.0, snrs[i] / 10.0)));
    ChannelSpec spec{ChannelKind::AWGN, sigma};
    DesignResult d = design_code(spec, 8, 0.5);
    SimConfig cfg;
    cfg.channel = spec;
    cfg.n = 8;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.blocks = 8;
    SimResult r = simulate_fer(d, cfg);
    results[i] = {d.union_bound_value, r.fer, r.fer_half_width, r.frame_errors, d.base_llr};
    w.begin_object();
    w.key("snr_db").value(snrs[i]);
    w.key("sigma").value(sigma);
    w.key("base_llr").value(d.base_llr);
    w.key("k_info").value(d.k_info);
    w.key("union_bound").value(d.union_bound_value);
    w.key("trials").value(trials);
    w.key("frame_errors").value(r.frame_errors);
    w.key("fer").value(r.fer);
    w.key("fer_half_width").value(r.fer_half_width);
    w.end_object();
  }
  w.end_array();

  CheckList checks(w);
  {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, rel_err(results[i].ub, kUnionBoundPins[i]));
    checks.add("union-bound-pins", worst <= 1e-6,
               [&](JsonWriter& j) { j.key("max_rel_err").value(worst); });
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, rel_err(results[i].base, kBaseLlrPins[i]));
    checks.add("base-llr-pins", worst <= 1e-9,
               [&](JsonWriter& j) { j.key("max_rel_err").value(worst); });
  }
  for (int i = 0; i < 3; ++i) {
    double slack = std::max(results[i].half, 3.0 / static_cast<double>(trials));
    bool ok = results[i].fer <= results[i].ub + slack;
    std::string name = "fer-below-bound-snr" + std::to_string(i + 1);
    double fer = results[i].fer, ub = results[i].ub;
    checks.add(name, ok, [&](JsonWriter& j) {
      j.key("fer").value(fer);
      j.key("union_bound").value(ub);
      j.key("slack").value(slack);
    });
  }
  return checks.finish();
}

int run_verify(const std::string& suite, std::uint64_t seed, std::uint64_t trials,
               const std::string& out_path, const std::string& csv_path) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kSchema);
  w.key("command").value("verify");
  w.key("suite").value(suite);
  w.key("seed").value(seed);

  int failed = 0;
  if (suite == "special-functions") {
    failed = suite_special_functions(w, csv_path);
  } else if (suite == "fixed-point") {
    failed = suite_fixed_point(w);
  } else if (suite == "partial-order-bec") {
    failed = suite_partial_order_bec(w);
  } else if (suite == "attractor-ga") {
    failed = suite_attractor_ga(w);
  } else if (suite == "series") {
    failed = suite_series(w);
  } else if (suite == "table2") {
    failed = suite_table2(w);
  } else if (suite == "example6") {
    failed = suite_example6(w);
  } else if (suite == "fig7") {
    w.key("trials").value(trials);
    failed = suite_fig7(w, seed, trials);
  } else {
    throw validation_error(
        "unknown suite '" + suite +
        "' (available: special-functions, fixed-point, partial-order-bec, attractor-ga, "
        "series, table2, example6, fig7)");
  }
  w.end_object();
  emit_json(w.take(), out_path);
  if (failed > 0) {
    std::fprintf(stderr, "verify: suite '%s' failed %d check(s)\n", suite.c_str(), failed);
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  auto start = std::chrono::steady_clock::now();

  CLI::App app{"polarforge: polar-code construction toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  // --- ga ---------------------------------------------------------------
  auto* ga_cmd = app.add_subcommand(
      "ga", "Evolve a Gaussian-approximation LLR mean along one index or a full profile");
  double ga_llr = 0.0;
  std::string ga_bits;
  int ga_n = 0;
  bool ga_table = false;
  std::string ga_out, ga_csv;
  ga_cmd->add_option("--llr", ga_llr, "Base LLR mean (positive)")->required();
  ga_cmd->add_option("--bits", ga_bits, "Single index to evolve (binary string, or decimal with --n)");
  ga_cmd->add_option("--n", ga_n, "Profile mode: number of polarization levels");
  ga_cmd->add_flag("--table", ga_table, "Use the monotone lookup-table transfer functions");
  ga_cmd->add_option("--out", ga_out, "Write the JSON document to this path as well");
  ga_cmd->add_option("--csv", ga_csv, "Write the profile as CSV to this path");
  ga_cmd->callback([&] { run_ga(ga_llr, ga_bits, ga_n, ga_table, ga_out, ga_csv); });

  // --- attractor ----------------------------------------------------------
  auto* at_cmd = app.add_subcommand(
      "attractor", "No-11 index family, regime seeds, and their downward closure");
  int at_n = 0;
  std::string at_regime = "half-pi";
  int at_max_order = -1;
  std::string at_out, at_csv;
  at_cmd->add_option("--n", at_n, "Number of polarization levels")->required();
  at_cmd->add_option("--regime", at_regime, "Base-LLR regime: half-pi (default) or pi");
  at_cmd->add_option("--max-order", at_max_order, "Cap the operator order used in the closure");
  at_cmd->add_option("--out", at_out, "Write the JSON document to this path as well");
  at_cmd->add_option("--csv", at_csv, "Write index,index_bits,provenance rows to this path");
  at_cmd->callback([&] { run_attractor(at_n, at_regime, at_max_order, at_out, at_csv); });

  // --- order ---------------------------------------------------------------
  auto* ord_cmd = app.add_subcommand("order", "Universal partial-order queries");
  ord_cmd->require_subcommand(1);
  auto* chk_cmd = ord_cmd->add_subcommand("check", "Does --more dominate --less?");
  std::string chk_less, chk_more;
  int chk_n = 0, chk_max_order = -1;
  std::string chk_out;
  chk_cmd->add_option("--less", chk_less, "Candidate less-reliable index")->required();
  chk_cmd->add_option("--more", chk_more, "Candidate more-reliable index")->required();
  chk_cmd->add_option("--n", chk_n, "Index width (needed for decimal inputs)");
  chk_cmd->add_option("--max-order", chk_max_order, "Cap the operator order");
  chk_cmd->add_option("--out", chk_out, "Write the JSON document to this path as well");
  chk_cmd->callback([&] { run_order_check(chk_less, chk_more, chk_n, chk_max_order, chk_out); });

  auto* clo_cmd = ord_cmd->add_subcommand("closure", "Closure of a seed set under the operators");
  int clo_n = 0, clo_max_order = -1;
  std::string clo_seeds, clo_direction = "down", clo_out, clo_csv;
  clo_cmd->add_option("--n", clo_n, "Index width")->required();
  clo_cmd->add_option("--seeds", clo_seeds, "Comma-separated indices (binary or decimal)")
      ->required();
  clo_cmd->add_option("--direction", clo_direction, "'down' (dominated set, default) or 'up'");
  clo_cmd->add_option("--max-order", clo_max_order, "Cap the operator order");
  clo_cmd->add_option("--out", clo_out, "Write the JSON document to this path as well");
  clo_cmd->add_option("--csv", clo_csv, "Write index,index_bits rows to this path");
  clo_cmd->callback(
      [&] { run_order_closure(clo_n, clo_seeds, clo_direction, clo_max_order, clo_out, clo_csv); });

  // --- design ----------------------------------------------------------------
  auto* de_cmd = app.add_subcommand("design", "Construct a code: seeds, closure, GA, selection");
  int de_n = 0;
  double de_rate = 0.0, de_sigma = 0.0, de_snr = 0.0;
  bool de_table = false, de_lazy = false;
  std::string de_emit_frozen, de_out, de_csv;
  de_cmd->add_option("--n", de_n, "Number of polarization levels")->required();
  de_cmd->add_option("--rate", de_rate, "Target code rate K/N in [0, 1]")->required();
  auto* de_sigma_opt = de_cmd->add_option("--sigma", de_sigma, "AWGN noise standard deviation");
  auto* de_snr_opt =
      de_cmd->add_option("--snr-db", de_snr, "Es/N0 in dB (sigma^2 = 1 / (2 * 10^(SNR/10)))");
  de_cmd->add_flag("--table", de_table, "Use the lookup-table transfer functions");
  de_cmd->add_flag("--lazy", de_lazy, "Freeze closure members first; skip GA when they suffice");
  de_cmd->add_option("--emit-frozen", de_emit_frozen,
                     "Write the frozen set (one decimal index per line) to this path");
  de_cmd->add_option("--out", de_out, "Write the JSON document to this path as well");
  de_cmd->add_option("--csv", de_csv, "Write the per-index design table to this path");
  de_cmd->callback([&] {
    ChannelSpec spec = resolve_channel("awgn", de_sigma_opt->count() > 0, de_sigma,
                                       de_snr_opt->count() > 0, de_snr);
    run_design(de_n, de_rate, spec, de_snr_opt->count() > 0, de_snr, de_table, de_lazy,
               de_emit_frozen, de_out, de_csv);
  });

  // --- simulate ---------------------------------------------------------------
  auto* si_cmd = app.add_subcommand(
      "simulate", "Monte-Carlo: genie-aided per-index rates, or FER with a frozen set");
  std::string si_channel;
  double si_param = 0.0, si_snr = 0.0, si_rate = 0.0;
  int si_n = 0, si_blocks = 8;
  std::uint64_t si_trials = 100000;
  std::string si_seed = "0x5EED", si_frozen, si_out, si_csv;
  si_cmd->add_option("--channel", si_channel, "bec, bsc, or awgn")->required();
  auto* si_param_opt = si_cmd->add_option("--param", si_param,
                                          "Channel parameter (erasure/crossover prob or sigma)");
  auto* si_snr_opt = si_cmd->add_option("--snr-db", si_snr, "Es/N0 in dB (awgn only)");
  si_cmd->add_option("--n", si_n, "Number of polarization levels")->required();
  si_cmd->add_option("--trials", si_trials, "Monte-Carlo trials");
  si_cmd->add_option("--seed", si_seed, "RNG seed (decimal or 0x-hex)");
  si_cmd->add_option("--blocks", si_blocks, "Parallel block count (results are invariant to it)");
  si_cmd->add_option("--frozen", si_frozen, "Frozen-set file, or 'auto' (with --rate)");
  auto* si_rate_opt = si_cmd->add_option("--rate", si_rate, "Code rate for --frozen auto");
  si_cmd->add_option("--out", si_out, "Write the JSON document to this path as well");
  si_cmd->add_option("--csv", si_csv, "Write the per-index table to this path (genie mode)");
  si_cmd->callback([&] {
    ChannelSpec spec = resolve_channel(si_channel, si_param_opt->count() > 0, si_param,
                                       si_snr_opt->count() > 0, si_snr);
    if (si_n < 1 || si_n > kMaxN) throw validation_error("--n must lie in [1, 24]");
    if (si_trials < 1) throw validation_error("--trials must be at least 1");
    if (si_blocks < 1) throw validation_error("--blocks must be at least 1");
    run_simulate(spec, si_n, si_trials, parse_seed(si_seed), si_blocks, si_frozen,
                 si_rate_opt->count() > 0, si_rate, si_out, si_csv);
  });

  // --- verify -------------------------------------------------------------------
  auto* ve_cmd = app.add_subcommand("verify", "Run a named self-verification suite");
  std::string ve_suite, ve_seed = "0x5EED", ve_out, ve_csv;
  std::uint64_t ve_trials = 100000;
  ve_cmd->add_option("--suite", ve_suite,
                     "special-functions | fixed-point | partial-order-bec | attractor-ga | "
                     "series | table2 | example6 | fig7")
      ->required();
  ve_cmd->add_option("--seed", ve_seed, "RNG seed for Monte-Carlo suites");
  ve_cmd->add_option("--trials", ve_trials, "Frames per point for the fig7 suite");
  ve_cmd->add_option("--out", ve_out, "Write the JSON document to this path as well");
  ve_cmd->add_option("--csv", ve_csv, "special-functions: dump the transfer-function grid");
  ve_cmd->callback([&] {
    if (ve_trials < 1) throw validation_error("--trials must be at least 1");
    exit_code = run_verify(ve_suite, parse_seed(ve_seed), ve_trials, ve_out, ve_csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // exit code 0 with help text
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const validation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const numeric_error& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  } catch (const io_error& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  }

  auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  std::fprintf(stderr, "elapsed_ms %lld\n", static_cast<long long>(elapsed.count()));
  return exit_code;
}
