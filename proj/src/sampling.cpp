#include "homwalk/sampling.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "homwalk/words.hpp"

namespace homwalk::sampling {

using words::Letter;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  return mix64(state);
}

std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  const std::uint64_t base = splitmix64(s);
  std::uint64_t t = base ^ mix64(index + 0x632be59bd9b4e019ULL);
  return splitmix64(t);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidParameter, "empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

BigCount uniform_below(std::mt19937_64& rng, const BigCount& bound) {
  if (bound <= 0) throw Error(ErrorCode::InvalidParameter, "empty range");
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t words = (bits + 63) / 64;
  const std::size_t spare = words * 64 - bits;
  for (;;) {
    BigCount x = 0;
    for (std::size_t i = 0; i < words; ++i) {
      std::uint64_t chunk = rng();
      if (i == 0 && spare > 0) chunk >>= spare;
      x <<= 64;
      x |= chunk;
    }
    if (x < bound) return x;
  }
}

const char* to_string(Method m) {
  switch (m) {
    case Method::ExactDP: return "dp";
    case Method::ExactTable: return "table";
    case Method::ExactPeriodic: return "periodic";
    case Method::Glauber: return "glauber";
    case Method::CFTP: return "cftp";
    case Method::LipschitzGlauber: return "lipschitz";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::ExactDP, Method::ExactTable, Method::ExactPeriodic, Method::Glauber, Method::CFTP,
                   Method::LipschitzGlauber})
    if (name == to_string(m)) return m;
  throw Error(ErrorCode::InvalidParameter, "unknown sampling method '" + name + "'");
}

void SamplerConfig::check() const {
  switch (method) {
    case Method::ExactDP:
      if (!graph.is_line() || graph.d() < 1)
        throw Error(ErrorCode::InvalidParameter, "dp sampling needs a segment with d >= 1");
      break;
    case Method::ExactPeriodic:
      if (!graph.is_torus()) throw Error(ErrorCode::InvalidParameter, "periodic sampling needs a torus");
      break;
    case Method::Glauber:
    case Method::LipschitzGlauber:
      if (steps < 1) throw Error(ErrorCode::InvalidParameter, "MCMC needs steps >= 1");
      if (method == Method::LipschitzGlauber && !graph.is_line())
        throw Error(ErrorCode::InvalidParameter, "Lipschitz sampling needs a segment");
      break;
    case Method::CFTP:
      if (graph.d() < 1) throw Error(ErrorCode::InvalidParameter, "cftp needs d >= 1");
      break;
    case Method::ExactTable:
      break;
  }
}

// ---------------------------------------------------------------------------

ExactLineSampler::ExactLineSampler(int n, int d)
    : graph_(GraphSpec::line(n, d)), table_(d, n), total_(table_.total(n)) {}

HeightFunction ExactLineSampler::unrank(BigCount index) const {
  if (index < 0 || index >= total_) throw Error(ErrorCode::IndexOutOfRange, "rank out of range");
  const int d = graph_.d();
  std::vector<int> steps;
  steps.reserve(static_cast<std::size_t>(graph_.n()) + 1);
  int remaining = graph_.n();
  std::optional<words::ChainState> state;
  while (remaining > 0) {
    bool chosen = false;
    for (Letter l : words::kLetters) {
      const auto nx = state ? words::next_state(*state, l, d) : words::initial_state(l, d);
      if (!nx) continue;
      const BigCount& c = table_.count(remaining - words::letter_weight(l), *nx);
      if (index < c) {
        for (int s : words::letter_steps(l)) steps.push_back(s);
        remaining -= words::letter_weight(l);
        state = nx;
        chosen = true;
        break;
      }
      index -= c;
    }
    if (!chosen) throw Error(ErrorCode::IndexOutOfRange, "completion table inconsistent");
  }
  steps.resize(static_cast<std::size_t>(graph_.n()));
  std::vector<int> f(steps.size() + 1, 0);
  for (std::size_t k = 0; k < steps.size(); ++k) f[k + 1] = f[k] + steps[k];
  return trusted_height_function(std::move(f), graph_);
}

HeightFunction ExactLineSampler::operator()(std::mt19937_64& rng) const { return unrank(uniform_below(rng, total_)); }

HeightFunction exact_sample_line(int n, int d, std::mt19937_64& rng) { return ExactLineSampler(n, d)(rng); }

TableSampler::TableSampler(const GraphSpec& graph, std::uint64_t cap) : all_(counting::enumerate(graph, cap)) {}

const HeightFunction& TableSampler::operator()(std::mt19937_64& rng) const {
  return all_[static_cast<std::size_t>(uniform_below(rng, all_.size()))];
}

PeriodicTorusSampler::PeriodicTorusSampler(int n, int d, std::uint64_t max_attempts)
    : graph_(GraphSpec::torus(n, d)), line_(n + 2 * d + 1, d), max_attempts_(max_attempts) {}

HeightFunction PeriodicTorusSampler::operator()(std::mt19937_64& rng) const {
  const int n = graph_.n();
  const int w = 2 * graph_.d() + 1;
  for (std::uint64_t attempt = 0; attempt < max_attempts_; ++attempt) {
    const HeightFunction g = line_(rng);
    bool periodic = true;
    for (int k = 0; k <= w && periodic; ++k) periodic = g[n + k] == g[k];
    if (!periodic) continue;
    const auto vals = g.values();
    return trusted_height_function(std::vector<int>(vals.begin(), vals.begin() + n), graph_);
  }
  throw Error(ErrorCode::NonCoalescence, "periodic rejection exceeded its attempt budget");
}

// ---------------------------------------------------------------------------

HeatBath::HeatBath(const GraphSpec& graph) : graph_(graph) {
  for (int v = 0; v < graph.num_vertices(); ++v) nbrs_.push_back(graph.neighbors(v));
}

int HeatBath::lower(const std::vector<int>& f, int v) const {
  int hi = std::numeric_limits<int>::min();
  for (int u : nbrs_[static_cast<std::size_t>(v)]) hi = std::max(hi, f[static_cast<std::size_t>(u)]);
  return hi - 1;
}

int HeatBath::upper(const std::vector<int>& f, int v) const {
  int lo = std::numeric_limits<int>::max();
  for (int u : nbrs_[static_cast<std::size_t>(v)]) lo = std::min(lo, f[static_cast<std::size_t>(u)]);
  return lo + 1;
}

void HeatBath::update(std::vector<int>& f, int v, bool coin) const {
  if (v == 0) return;
  int hi = std::numeric_limits<int>::min();
  int lo = std::numeric_limits<int>::max();
  for (int u : nbrs_[static_cast<std::size_t>(v)]) {
    const int x = f[static_cast<std::size_t>(u)];
    hi = std::max(hi, x);
    lo = std::min(lo, x);
  }
  f[static_cast<std::size_t>(v)] = coin ? lo + 1 : hi - 1;
}

std::vector<int> HeatBath::top() const {
  std::vector<int> dist(nbrs_.size(), -1);
  std::queue<int> q;
  dist[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int u : nbrs_[static_cast<std::size_t>(v)])
      if (dist[static_cast<std::size_t>(u)] < 0) {
        dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push(u);
      }
  }
  return dist;
}

std::vector<int> HeatBath::bottom() const {
  auto b = top();
  for (int& x : b) x = -x;
  return b;
}

HeightFunction glauber_step(const HeightFunction& f, int site, std::mt19937_64& rng) {
  const HeatBath hb(f.graph());
  if (site < 0 || site >= hb.num_vertices()) throw Error(ErrorCode::IndexOutOfRange, "site outside the graph");
  std::vector<int> v(f.values().begin(), f.values().end());
  hb.update(v, site, (rng() >> 63) != 0);
  return trusted_height_function(std::move(v), f.graph());
}

HeightFunction run_glauber(const HeightFunction& start, std::uint64_t steps, std::mt19937_64& rng) {
  const HeatBath hb(start.graph());
  std::vector<int> f(start.values().begin(), start.values().end());
  const auto sites = static_cast<std::uint64_t>(hb.num_vertices() - 1);
  if (sites == 0) return start;
  for (std::uint64_t t = 0; t < steps; ++t) {
    const int v = 1 + static_cast<int>(uniform_below(rng, sites));
    hb.update(f, v, (rng() >> 63) != 0);
  }
  return trusted_height_function(std::move(f), start.graph());
}

HeightFunction run_glauber(const SamplerConfig& config) {
  config.check();
  std::mt19937_64 rng(config.seed);
  return run_glauber(flat(config.graph, 1), config.steps, rng);
}

// ---------------------------------------------------------------------------

CftpResult cftp(const GraphSpec& graph, std::uint64_t seed, std::uint64_t max_updates) {
  if (graph.d() < 1) throw Error(ErrorCode::InvalidParameter, "cftp needs d >= 1");
  const HeatBath hb(graph);
  const auto sites = static_cast<std::uint64_t>(hb.num_vertices() - 1);
  const auto top0 = hb.top();
  const auto bottom0 = hb.bottom();
  if (sites == 0) return {trusted_height_function(top0, graph), 0, 0};

  const std::uint64_t key = mix64(seed ^ 0x243f6a8885a308d3ULL);
  std::uint64_t used = 0;
  for (std::uint64_t horizon = 1;; horizon *= 2) {
    if (used + horizon > max_updates)
      throw Error(ErrorCode::NonCoalescence,
                  "no coalescence within " + std::to_string(max_updates) + " updates (" + describe(graph) + ")");
    auto top = top0;
    auto bottom = bottom0;
    for (std::uint64_t t = horizon; t >= 1; --t) {
      const std::uint64_t r = mix64(key + t * 0x9e3779b97f4a7c15ULL);
      // Low bits pick the site, the top bit is the coin.
      const int v = 1 + static_cast<int>((r & 0x7fffffffffffffffULL) % sites);
      const bool coin = (r >> 63) != 0;
      hb.update(top, v, coin);
      hb.update(bottom, v, coin);
    }
    used += horizon;
    if (top == bottom) return {trusted_height_function(std::move(top), graph), horizon, used};
  }
}

HeightFunction cftp_sample(const SamplerConfig& config) {
  config.check();
  return cftp(config.graph, config.seed, config.max_updates).sample;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<int>> lipschitz_neighbors(int n, int d, LipschitzOptions options) {
  if (n < 1 || d < 0) throw Error(ErrorCode::InvalidParameter, "need n >= 1 and d >= 0");
  std::vector<std::vector<int>> nb(static_cast<std::size_t>(n) + 1);
  const int reach = options.any_parity ? d + 1 : 2 * d + 1;
  for (int v = 0; v <= n; ++v)
    for (int u = std::max(0, v - reach); u <= std::min(n, v + reach); ++u) {
      const int dist = std::abs(u - v);
      const bool edge = options.any_parity ? (dist >= 1 && dist <= d + 1) : (dist % 2 == 1 && dist <= 2 * d + 1);
      if (edge) nb[static_cast<std::size_t>(v)].push_back(u);
    }
  return nb;
}

std::vector<double> lipschitz_glauber(std::vector<double> f, int d, std::uint64_t steps, std::mt19937_64& rng,
                                      LipschitzOptions options) {
  const int n = static_cast<int>(f.size()) - 1;
  const auto nb = lipschitz_neighbors(n, d, options);
  if (n < 1) return f;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t t = 0; t < steps; ++t) {
    const int v = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int u : nb[static_cast<std::size_t>(v)]) {
      lo = std::max(lo, f[static_cast<std::size_t>(u)] - 1);
      hi = std::min(hi, f[static_cast<std::size_t>(u)] + 1);
    }
    if (lo > hi) throw Error(ErrorCode::InvalidParameter, "configuration violates the Lipschitz constraints");
    f[static_cast<std::size_t>(v)] = lo + (hi - lo) * unit(rng);
  }
  return f;
}

std::vector<double> lipschitz_glauber(int n, int d, std::uint64_t steps, std::mt19937_64& rng,
                                      LipschitzOptions options) {
  return lipschitz_glauber(std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0), d, steps, rng, options);
}

HeightFunction sample(const SamplerConfig& config) {
  config.check();
  std::mt19937_64 rng(config.seed);
  switch (config.method) {
    case Method::ExactDP: return ExactLineSampler(config.graph.n(), config.graph.d())(rng);
    case Method::ExactTable: return TableSampler(config.graph)(rng);
    case Method::ExactPeriodic: return PeriodicTorusSampler(config.graph.n(), config.graph.d())(rng);
    case Method::Glauber: return run_glauber(config);
    case Method::CFTP: return cftp_sample(config);
    case Method::LipschitzGlauber: break;
  }
  throw Error(ErrorCode::Unsupported, "Lipschitz samples are real-valued; use lipschitz_glauber");
}

}  // namespace homwalk::sampling
