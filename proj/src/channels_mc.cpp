#include "polarforge/channels_mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace polarforge {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;

void check_n(int n) {
  if (n < 1 || n > kMaxN) {
    throw validation_error("n out of range [1," + std::to_string(kMaxN) + "]");
  }
}

}  // namespace

double bec_z(double eps, const PolarIndex& k) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw validation_error("BEC erasure probability must lie in [0,1]");
  }
  double z = eps;
  for (int p = 1; p <= k.n; ++p) {
    z = k.bit(p) ? z * z : 2.0 * z - z * z;
  }
  return z;
}

ReliabilityProfile bec_profile(double eps, int n) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw validation_error("BEC erasure probability must lie in [0,1]");
  }
  check_n(n);
  std::vector<double> cur{eps};
  cur.reserve(std::size_t{1} << n);
  for (int level = 0; level < n; ++level) {
    std::vector<double> next(cur.size() * 2);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const double z = cur[i];
      next[(i << 1) | 0] = 2.0 * z - z * z;  // minus child first
      next[(i << 1) | 1] = z * z;
    }
    cur = std::move(next);
  }
  ReliabilityProfile prof;
  prof.n = n;
  prof.metric = "bec_erasure";
  prof.values = std::move(cur);
  prof.error_probs.reserve(prof.values.size());
  for (double z : prof.values) prof.error_probs.push_back(0.5 * z);
  return prof;
}

void encode(std::vector<std::uint8_t>& u) {
  const std::size_t n = u.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw validation_error("encode: length must be a power of two");
  }
  for (std::size_t m = n; m > 1; m >>= 1) {
    const std::size_t h = m >> 1;
    for (std::size_t blk = 0; blk < n; blk += m) {
      for (std::size_t i = 0; i < h; ++i) {
        u[blk + i] ^= u[blk + i + h];
      }
    }
  }
}

double fnode(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
  const double aa = std::fabs(a), ab = std::fabs(b);
  const double m = std::min(aa, ab), M = std::max(aa, ab);
  return sign * (m + std::log1p(std::exp(-(M + m))) - std::log1p(std::exp(-(M - m))));
}

double gnode(double a, double b, int u) { return b + (u ? -a : a); }

namespace {

struct ScWorkspace {
  // scratch[d] holds the child LLRs of a depth-d node (size N >> (d+1));
  // cw[d] holds both children's codewords of a depth-d node (size N >> d).
  std::vector<std::vector<double>> scratch;
  std::vector<std::vector<std::uint8_t>> cw;
  void prepare(int n) {
    scratch.resize(static_cast<std::size_t>(n));
    cw.resize(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
      scratch[static_cast<std::size_t>(d)].resize(std::size_t{1} << (n - 1 - d));
      cw[static_cast<std::size_t>(d)].resize(std::size_t{1} << (n - d));
    }
  }
};

void sc_rec(const double* L, std::size_t m, int depth, std::size_t base,
            const std::uint8_t* frozen, const std::uint8_t* true_u,
            std::uint8_t* u_hat, std::uint8_t* err, std::uint8_t* cw, ScWorkspace& ws) {
  if (m == 1) {
    const double l = L[0];
    std::uint8_t d;
    if (true_u) {
      const std::uint8_t t = true_u[base];
      const bool ok = (t == 0 && l > 0.0) || (t == 1 && l < 0.0);  // tie is an error
      if (err) err[base] = ok ? 0 : 1;
      d = t;  // genie correction before propagation
    } else if (frozen && frozen[base]) {
      d = 0;
    } else {
      d = l > 0.0 ? 0 : 1;  // tie decodes as 1
    }
    u_hat[base] = d;
    cw[0] = d;
    return;
  }
  const std::size_t h = m >> 1;
  double* T = ws.scratch[static_cast<std::size_t>(depth)].data();
  std::uint8_t* C1 = ws.cw[static_cast<std::size_t>(depth)].data();
  std::uint8_t* C2 = C1 + h;
  for (std::size_t i = 0; i < h; ++i) T[i] = fnode(L[i], L[i + h]);
  sc_rec(T, h, depth + 1, base, frozen, true_u, u_hat, err, C1, ws);
  for (std::size_t i = 0; i < h; ++i) T[i] = gnode(L[i], L[i + h], C1[i]);
  sc_rec(T, h, depth + 1, base + h, frozen, true_u, u_hat, err, C2, ws);
  for (std::size_t i = 0; i < h; ++i) {
    cw[i] = static_cast<std::uint8_t>(C1[i] ^ C2[i]);
    cw[i + h] = C2[i];
  }
}

int int_log2(std::size_t v) {
  int n = 0;
  while ((std::size_t{1} << n) < v) ++n;
  return n;
}

}  // namespace

ScResult sc_decode(const std::vector<double>& llr, const std::vector<std::uint8_t>& frozen_mask,
                   const std::vector<std::uint8_t>* genie_true_u) {
  const std::size_t N = llr.size();
  if (N == 0 || (N & (N - 1)) != 0) {
    throw validation_error("sc_decode: LLR length must be a power of two");
  }
  if (!genie_true_u && frozen_mask.size() != N) {
    throw validation_error("sc_decode: frozen mask length must match the LLR length");
  }
  if (genie_true_u && genie_true_u->size() != N) {
    throw validation_error("sc_decode: true codeword length must match the LLR length");
  }
  const int n = int_log2(N);
  ScWorkspace ws;
  ws.prepare(std::max(n, 1));
  ScResult res;
  res.u_hat.assign(N, 0);
  if (genie_true_u) res.genie_errors.assign(N, 0);
  std::vector<std::uint8_t> cw(N, 0);
  sc_rec(llr.data(), N, 0, 0, frozen_mask.empty() ? nullptr : frozen_mask.data(),
         genie_true_u ? genie_true_u->data() : nullptr, res.u_hat.data(),
         genie_true_u ? res.genie_errors.data() : nullptr, cw.data(), ws);
  return res;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t trial) {
  return seed ^ mix64(trial + kGolden);
}

void TrialRng::normal_pair(double& z1, double& z2) {
  const double u1 = u01();
  const double u2 = u01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = kTwoPi * u2;
  z1 = r * std::cos(th);
  z2 = r * std::sin(th);
}

void fill_channel_llrs(const ChannelSpec& spec, TrialRng& rng, std::vector<double>& llr) {
  const std::size_t N = llr.size();
  switch (spec.kind) {
    case ChannelKind::BEC: {
      const double eps = spec.param;
      for (std::size_t i = 0; i < N; ++i) {
        llr[i] = rng.u01() < eps ? 0.0 : kErasureLlr;
      }
      return;
    }
    case ChannelKind::BSC: {
      const double p = spec.param;
      const double c = std::log((1.0 - p) / p);
      for (std::size_t i = 0; i < N; ++i) {
        llr[i] = rng.u01() < p ? -c : c;
      }
      return;
    }
    case ChannelKind::AWGN: {
      const double sigma = spec.param;
      const double scale = 2.0 / (sigma * sigma);
      for (std::size_t i = 0; i < N; i += 2) {
        double z1, z2;
        rng.normal_pair(z1, z2);
        llr[i] = scale * (1.0 + sigma * z1);  // bit 0 -> symbol +1
        if (i + 1 < N) llr[i + 1] = scale * (1.0 + sigma * z2);
      }
      return;
    }
  }
  throw validation_error("unknown channel kind");
}

int resolve_thread_count(int blocks) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* env = std::getenv("POLARFORGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) threads = static_cast<int>(std::min<long>(v, 1 << 12));
  }
  return std::max(1, std::min(threads, blocks));
}

double wald_half_width(double rate, std::uint64_t trials) {
  const double t = static_cast<double>(trials);
  if (rate <= 0.0 || rate >= 1.0) return 3.0 / t;  // rule of three
  return 1.96 * std::sqrt(rate * (1.0 - rate) / t);
}

bool ci_covers(double rate, std::uint64_t trials, double truth) {
  const double t = static_cast<double>(trials);
  if (rate <= 0.0) return truth <= 3.0 / t;        // rule of three
  if (rate >= 1.0) return truth >= 1.0 - 3.0 / t;  // symmetric counterpart
  return std::fabs(rate - truth) <= wald_half_width(rate, trials);
}

namespace {

void validate_sim_config(const SimConfig& cfg) {
  cfg.channel.validate();
  check_n(cfg.n);
  if (cfg.trials == 0) throw validation_error("trials must be >= 1");
  if (cfg.blocks < 1) throw validation_error("blocks must be >= 1");
}

// Runs `body(trial)` for every global trial index, split over blocks and
// worker threads. body must only touch per-block state; blocks are reduced
// in ascending order afterwards by the caller.
template <typename Body>
void run_blocks(const SimConfig& cfg, Body&& make_block_body) {
  const std::uint64_t blocks = static_cast<std::uint64_t>(cfg.blocks);
  const std::uint64_t base = cfg.trials / blocks;
  const std::uint64_t rem = cfg.trials % blocks;
  const int threads = resolve_thread_count(cfg.blocks);

  auto block_range = [&](std::uint64_t b, std::uint64_t& start, std::uint64_t& len) {
    start = b * base + std::min(b, rem);
    len = base + (b < rem ? 1 : 0);
  };

  if (threads == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) {
      std::uint64_t start, len;
      block_range(b, start, len);
      make_block_body(b, start, len);
    }
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::uint64_t> next{0};
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint64_t b = next.fetch_add(1);
        if (b >= blocks) return;
        std::uint64_t start, len;
        block_range(b, start, len);
        make_block_body(b, start, len);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

SimResult genie_channel_error_rates(const SimConfig& cfg) {
  validate_sim_config(cfg);
  const std::size_t N = std::size_t{1} << cfg.n;
  const std::uint64_t blocks = static_cast<std::uint64_t>(cfg.blocks);
  std::vector<std::vector<std::uint64_t>> block_counts(blocks,
                                                       std::vector<std::uint64_t>(N, 0));

  run_blocks(cfg, [&](std::uint64_t b, std::uint64_t start, std::uint64_t len) {
    std::vector<std::uint64_t>& counts = block_counts[b];
    std::vector<double> llr(N);
    std::vector<std::uint8_t> u_hat(N), err(N), cw(N);
    const std::vector<std::uint8_t> true_u(N, 0);
    ScWorkspace ws;
    ws.prepare(cfg.n);
    for (std::uint64_t t = start; t < start + len; ++t) {
      TrialRng rng(cfg.seed, t);
      fill_channel_llrs(cfg.channel, rng, llr);
      sc_rec(llr.data(), N, 0, 0, nullptr, true_u.data(), u_hat.data(), err.data(),
             cw.data(), ws);
      for (std::size_t i = 0; i < N; ++i) counts[i] += err[i];
    }
  });

  SimResult res;
  res.trials = cfg.trials;
  res.seed = cfg.seed;
  res.blocks = cfg.blocks;
  res.error_counts.assign(N, 0);
  for (std::uint64_t b = 0; b < blocks; ++b) {  // fixed reduction order
    for (std::size_t i = 0; i < N; ++i) res.error_counts[i] += block_counts[b][i];
  }
  res.rates.reserve(N);
  res.half_widths.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double r = static_cast<double>(res.error_counts[i]) /
                     static_cast<double>(cfg.trials);
    res.rates.push_back(r);
    res.half_widths.push_back(wald_half_width(r, cfg.trials));
  }
  return res;
}

SimResult simulate_fer(const std::vector<std::uint8_t>& frozen_mask, const SimConfig& cfg) {
  validate_sim_config(cfg);
  const std::size_t N = std::size_t{1} << cfg.n;
  if (frozen_mask.size() != N) {
    throw validation_error("simulate_fer: frozen mask length must equal 2^n");
  }
  const std::uint64_t blocks = static_cast<std::uint64_t>(cfg.blocks);
  std::vector<std::uint64_t> block_frames(blocks, 0);

  run_blocks(cfg, [&](std::uint64_t b, std::uint64_t start, std::uint64_t len) {
    std::vector<double> llr(N);
    std::vector<std::uint8_t> u_hat(N), cw(N);
    ScWorkspace ws;
    ws.prepare(cfg.n);
    std::uint64_t frames = 0;
    for (std::uint64_t t = start; t < start + len; ++t) {
      TrialRng rng(cfg.seed, t);
      fill_channel_llrs(cfg.channel, rng, llr);
      sc_rec(llr.data(), N, 0, 0, frozen_mask.data(), nullptr, u_hat.data(), nullptr,
             cw.data(), ws);
      for (std::size_t i = 0; i < N; ++i) {
        if (!frozen_mask[i] && u_hat[i] != 0) {  // all-zero codeword sent
          ++frames;
          break;
        }
      }
    }
    block_frames[b] = frames;
  });

  SimResult res;
  res.trials = cfg.trials;
  res.seed = cfg.seed;
  res.blocks = cfg.blocks;
  for (std::uint64_t b = 0; b < blocks; ++b) res.frame_errors += block_frames[b];
  res.fer = static_cast<double>(res.frame_errors) / static_cast<double>(cfg.trials);
  res.fer_half_width = wald_half_width(res.fer, cfg.trials);
  return res;
}

}  // namespace polarforge
