#include "polarforge/gaussian_approx.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "polarforge/special_functions.hpp"

namespace polarforge {

double llr_max() {
  static const double v = [] {
    const double r = erfcinv(1e-300);
    return 4.0 * r * r;
  }();
  return v;
}

namespace {

LlrMean clamp_llr(double v, bool sticky) {
  LlrMean out{v, sticky};
  if (!(v > kLlrMin)) {  // also catches -0 and underflow to 0
    out.value = kLlrMin;
    out.clamped = true;
  } else if (v > llr_max()) {
    out.value = llr_max();
    out.clamped = true;
  }
  return out;
}

}  // namespace

double ga_f2(double x, const GaOptions& opts) {
  if (x <= 0.0) return 0.0;
  const double s = 0.5 * std::sqrt(x);
  const double e = opts.use_table ? LookupTables::instance().erfc_s(s) : erfc(s);
  // 1 - (1 - e)^2 = e * (2 - e), exact and cancellation-free for all e in [0,1].
  const double u = e * (2.0 - e);
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return x;  // only reachable as e -> 1, i.e. x -> 0
  return opts.use_table ? phi_inv_table(u) : phi_inv(u);
}

LlrMean init_llr(const ChannelSpec& spec) {
  spec.validate();
  if (spec.kind != ChannelKind::AWGN) {
    throw validation_error(
        "init_llr: Gaussian LLR density requires an AWGN channel (BEC has an exact "
        "erasure recursion instead)");
  }
  const double sigma2 = spec.param * spec.param;
  return clamp_llr(2.0 / sigma2, false);
}

LlrMean update_plus(LlrMean in, const GaOptions&) {
  return clamp_llr(2.0 * in.value, in.clamped);
}

LlrMean update_minus(LlrMean in, const GaOptions& opts) {
  return clamp_llr(ga_f2(in.value, opts), in.clamped);
}

LlrMean evolve(LlrMean base, const PolarIndex& k, const GaOptions& opts) {
  LlrMean m = clamp_llr(base.value, base.clamped);
  for (int p = 1; p <= k.n; ++p) {
    m = k.bit(p) ? update_plus(m, opts) : update_minus(m, opts);
  }
  return m;
}

double error_prob_value(double llr_mean) {
  return 0.5 * std::erfc(0.5 * std::sqrt(llr_mean));
}

double error_prob(LlrMean m) { return error_prob_value(m.value); }

ReliabilityProfile full_profile_from(LlrMean base, int n, const GaOptions& opts) {
  if (n < 1 || n > kMaxN) {
    throw validation_error("full_profile: n out of range [1," + std::to_string(kMaxN) + "]");
  }
  std::vector<LlrMean> cur{clamp_llr(base.value, base.clamped)};
  cur.reserve(std::size_t{1} << n);
  for (int level = 0; level < n; ++level) {
    std::vector<LlrMean> next(cur.size() * 2);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      // Children minus-first: appending step bit b to prefix i lands at
      // (i << 1) | b, so entry v holds exactly the MSB-first chain of v.
      next[(i << 1) | 0] = update_minus(cur[i], opts);
      next[(i << 1) | 1] = update_plus(cur[i], opts);
    }
    cur = std::move(next);
  }
  ReliabilityProfile prof;
  prof.n = n;
  prof.metric = "ga_llr_mean";
  prof.values.reserve(cur.size());
  prof.error_probs.reserve(cur.size());
  prof.clamped.reserve(cur.size());
  for (const LlrMean& m : cur) {
    prof.values.push_back(m.value);
    prof.error_probs.push_back(error_prob(m));
    prof.clamped.push_back(m.clamped);
  }
  return prof;
}

ReliabilityProfile full_profile(const ChannelSpec& spec, int n, const GaOptions& opts) {
  return full_profile_from(init_llr(spec), n, opts);
}

namespace {

double bisect_half_ray(double lo, double hi, double width,
                       const std::function<double(double)>& f2) {
  // Root of f2(x) - x/2; caller guarantees the sign change.
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (f2(mid) - 0.5 * mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FixedPointReport find_fixed_point_report(const GaOptions& opts) {
  const double lo0 = 0.5, hi0 = 8.0;
  auto g = [&](double x) { return ga_f2(x, opts) - 0.5 * x; };
  if (!(g(lo0) < 0.0 && g(hi0) > 0.0)) {
    throw numeric_error(
        "find_fixed_point: no sign change of f2(x) - x/2 on (0.5, 8] -- geometry violation");
  }
  double lo = lo0, hi = hi0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  FixedPointReport rep;
  rep.root = 0.5 * (lo + hi);
  rep.root_from_above = hi;

  // Same crossing with the unsimplified transfer function.
  rep.root_exact_phi = bisect_half_ray(lo0, hi0, 1e-9, [](double x) {
    const double p = phi_exact(x);
    const double u = p * (2.0 - p);  // 1 - (1 - p)^2
    return phi_exact_inv(u);
  });

  rep.grid_points_checked = 0;
  const int grid = 200;
  for (int i = 1; i <= grid; ++i) {
    const double x = 0.05 + static_cast<double>(i) * (rep.root - 0.05) /
                                static_cast<double>(grid + 1);
    if (ga_f2(x, opts) < 0.5 * x) ++rep.grid_points_checked;
  }
  return rep;
}

double find_fixed_point(const GaOptions& opts) {
  const double lo0 = 0.5, hi0 = 8.0;
  auto g = [&](double x) { return ga_f2(x, opts) - 0.5 * x; };
  if (!(g(lo0) < 0.0 && g(hi0) > 0.0)) {
    throw numeric_error(
        "find_fixed_point: no sign change of f2(x) - x/2 on (0.5, 8] -- geometry violation");
  }
  double lo = lo0, hi = hi0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace polarforge
