#pragma once

// Graphs P_{n,d} (segment) and T_{n,d} (torus), integer homomorphisms on them,
// and the elementary statistics used throughout the library.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace homwalk {

enum class ErrorCode {
  InvalidGraph,
  WrongLength,
  RootNotZero,
  EdgeViolation,
  InfeasibleStructure,
  MalformedDecomposition,
  IndexOutOfRange,
  SignImbalance,
  WrongFluctuationCount,
  NonCanonical,
  EmptyStructure,
  TooLarge,
  InconsistentPrefix,
  NotInD,
  IllegalWord,
  WeightMismatch,
  NonCoalescence,
  InvalidParameter,
  Unsupported,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class Topology { Line, Torus };

/// Which graph: the segment {0..n} or the torus Z/nZ, with edges between
/// vertices at odd distance 1, 3, ..., 2d+1.
class GraphSpec {
 public:
  static GraphSpec line(int n, int d);
  static GraphSpec torus(int n, int d);

  Topology topology() const noexcept { return topology_; }
  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  bool is_line() const noexcept { return topology_ == Topology::Line; }
  bool is_torus() const noexcept { return topology_ == Topology::Torus; }

  /// n+1 on the line, n on the torus.
  int num_vertices() const noexcept { return is_line() ? n_ + 1 : n_; }

  /// Graph distance used by the edge rule (|i-j| on the line, cyclic on the torus).
  int distance(int i, int j) const noexcept;
  bool is_edge(int i, int j) const noexcept;

  /// Reduces a vertex index mod n on the torus; identity on the line.
  int canonical_vertex(long long v) const noexcept;

  /// Sorted neighbour list of v.
  std::vector<int> neighbors(int v) const;

  bool operator==(const GraphSpec&) const = default;

 private:
  GraphSpec(Topology t, int n, int d) : topology_(t), n_(n), d_(d) {}
  Topology topology_;
  int n_;
  int d_;
};

std::string describe(const GraphSpec& g);

/// First offending edge (lexicographically smallest i < j) or a shape problem.
struct Violation {
  ErrorCode code;
  int i = -1;
  int j = -1;
  std::string message() const;
};

/// An integer-valued function on the vertices with f(0) = 0 that changes by
/// exactly one along every edge. Only constructible through validation.
class HeightFunction {
 public:
  const GraphSpec& graph() const noexcept { return graph_; }
  std::span<const int> values() const noexcept { return values_; }
  int operator[](int v) const noexcept { return values_[static_cast<std::size_t>(v)]; }
  /// Value at v with torus indices reduced mod n.
  int at(long long v) const noexcept { return values_[static_cast<std::size_t>(graph_.canonical_vertex(v))]; }
  int size() const noexcept { return static_cast<int>(values_.size()); }

  bool operator==(const HeightFunction&) const = default;
  auto operator<=>(const HeightFunction& o) const { return values_ <=> o.values_; }

 private:
  friend HeightFunction validate(std::vector<int> values, const GraphSpec& graph);
  friend HeightFunction trusted_height_function(std::vector<int> values, const GraphSpec& graph);
  HeightFunction(GraphSpec g, std::vector<int> v) : graph_(g), values_(std::move(v)) {}
  GraphSpec graph_;
  std::vector<int> values_;
};

std::optional<Violation> find_violation(std::span<const int> values, const GraphSpec& graph);

/// Throws Error(WrongLength | RootNotZero | EdgeViolation) on failure.
HeightFunction validate(std::vector<int> values, const GraphSpec& graph);

/// Wraps values already known to be valid (enumeration and sampler internals).
HeightFunction trusted_height_function(std::vector<int> values, const GraphSpec& graph);

int range_size(const HeightFunction& f);

/// f(k) - f(k-1) for k = 1..n; on the torus the last step closes the cycle.
std::vector<int> derivative(const HeightFunction& f);
HeightFunction from_derivative(std::span<const int> steps, const GraphSpec& graph);

/// True when the +-1 sequence contains no three equal consecutive entries.
bool in_D(std::span<const int> steps);

/// The zigzag with f(odd) = sign, f(even) = 0.
HeightFunction flat(const GraphSpec& graph, int sign);

/// Pointwise max / min of two functions on the same graph.
std::vector<int> pointwise_max(const HeightFunction& f, const HeightFunction& g);
std::vector<int> pointwise_min(const HeightFunction& f, const HeightFunction& g);

}  // namespace homwalk
