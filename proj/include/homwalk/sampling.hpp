#pragma once

// Samplers for uniform homomorphisms: exact unranking on the segment, exact
// table lookup and periodic rejection on the torus, heat-bath dynamics,
// monotone coupling from the past, and the real-valued Lipschitz variant.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "homwalk/core.hpp"
#include "homwalk/counting.hpp"

namespace homwalk::sampling {

/// Advances state and returns the next SplitMix64 output.
std::uint64_t splitmix64(std::uint64_t& state);
/// Stateless 64-bit mixer (the SplitMix64 finalizer).
std::uint64_t mix64(std::uint64_t x);
/// Independent stream seed for replication `index` of a run seeded with `seed`.
std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform integer in [0, bound) by rejection; bound >= 1.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
BigCount uniform_below(std::mt19937_64& rng, const BigCount& bound);

enum class Method { ExactDP, ExactTable, ExactPeriodic, Glauber, CFTP, LipschitzGlauber };

const char* to_string(Method m);
/// "dp", "table", "periodic", "glauber", "cftp", "lipschitz". Throws InvalidParameter.
Method parse_method(const std::string& name);

inline constexpr std::uint64_t kDefaultUpdateCap = std::uint64_t{1} << 30;

struct SamplerConfig {
  GraphSpec graph = GraphSpec::line(1, 1);
  Method method = Method::ExactDP;
  std::uint64_t steps = 0;  // MCMC updates
  std::uint64_t seed = 0;
  std::uint64_t max_updates = kDefaultUpdateCap;  // CFTP budget over all epochs
  /// Throws InvalidParameter when the method does not apply to the graph.
  void check() const;
};

/// Uniform on Hom(P_{n,d}, 0): one uniform index below the total count, then
/// unranked letter by letter through the completion table.
class ExactLineSampler {
 public:
  ExactLineSampler(int n, int d);
  HeightFunction operator()(std::mt19937_64& rng) const;
  /// The function of rank `index` in letter order; index < total().
  HeightFunction unrank(BigCount index) const;
  const BigCount& total() const noexcept { return total_; }
  const GraphSpec& graph() const noexcept { return graph_; }

 private:
  GraphSpec graph_;
  counting::CompletionTable table_;
  BigCount total_;
};

HeightFunction exact_sample_line(int n, int d, std::mt19937_64& rng);

/// Uniform draw from a full enumeration; throws TooLarge above the cap.
class TableSampler {
 public:
  explicit TableSampler(const GraphSpec& graph, std::uint64_t cap = counting::kDefaultEnumerationCap);
  const HeightFunction& operator()(std::mt19937_64& rng) const;
  const std::vector<HeightFunction>& support() const noexcept { return all_; }

 private:
  std::vector<HeightFunction> all_;
};

/// Uniform on Hom(T_{n,d}, 0): exact segment samples of length n+2d+1,
/// accepted when the last 2d+2 values repeat the first ones.
class PeriodicTorusSampler {
 public:
  PeriodicTorusSampler(int n, int d, std::uint64_t max_attempts = std::uint64_t{1} << 24);
  /// Throws NonCoalescence after max_attempts rejections in a row.
  HeightFunction operator()(std::mt19937_64& rng) const;

 private:
  GraphSpec graph_;
  ExactLineSampler line_;
  std::uint64_t max_attempts_;
};

/// Heat-bath rule shared by Glauber and CFTP. Vertex 0 is never updated.
class HeatBath {
 public:
  explicit HeatBath(const GraphSpec& graph);
  const GraphSpec& graph() const noexcept { return graph_; }
  int num_vertices() const noexcept { return static_cast<int>(nbrs_.size()); }
  /// Allowed values at v given its neighbours; for a valid configuration they
  /// coincide or differ by 2.
  int lower(const std::vector<int>& f, int v) const;
  int upper(const std::vector<int>& f, int v) const;
  /// coin = true picks the upper value.
  void update(std::vector<int>& f, int v, bool coin) const;
  /// Graph distance from 0 (pointwise maximum over Hom) and its negative.
  std::vector<int> top() const;
  std::vector<int> bottom() const;

 private:
  GraphSpec graph_;
  std::vector<std::vector<int>> nbrs_;
};

HeightFunction glauber_step(const HeightFunction& f, int site, std::mt19937_64& rng);
/// `steps` heat-bath updates at uniform sites in 1..N-1, started at the
/// zigzag flat(graph, +1).
HeightFunction run_glauber(const SamplerConfig& config);
HeightFunction run_glauber(const HeightFunction& start, std::uint64_t steps, std::mt19937_64& rng);

struct CftpResult {
  HeightFunction sample;
  std::uint64_t horizon = 0;  // T such that the run started at time -T
  std::uint64_t updates = 0;  // total across epochs
};

/// Monotone coupling from the past. The update at time -t depends only on
/// (seed, t). Throws NonCoalescence when the budget is spent.
CftpResult cftp(const GraphSpec& graph, std::uint64_t seed, std::uint64_t max_updates = kDefaultUpdateCap);
HeightFunction cftp_sample(const SamplerConfig& config);

/// Real-valued heat bath: f(site) is redrawn uniformly on the intersection
/// of [f(u) - 1, f(u) + 1] over neighbours u. With any_parity the neighbours
/// are all vertices within distance d+1.
struct LipschitzOptions {
  bool any_parity = false;
};
std::vector<double> lipschitz_glauber(int n, int d, std::uint64_t steps, std::mt19937_64& rng,
                                      LipschitzOptions options = {});
std::vector<double> lipschitz_glauber(std::vector<double> start, int d, std::uint64_t steps, std::mt19937_64& rng,
                                      LipschitzOptions options = {});
std::vector<std::vector<int>> lipschitz_neighbors(int n, int d, LipschitzOptions options);

/// Dispatches on config.method (all but LipschitzGlauber).
HeightFunction sample(const SamplerConfig& config);

}  // namespace homwalk::sampling
