#include "homwalk/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace homwalk {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::WrongLength: return "WrongLength";
    case ErrorCode::RootNotZero: return "RootNotZero";
    case ErrorCode::EdgeViolation: return "EdgeViolation";
    case ErrorCode::InfeasibleStructure: return "InfeasibleStructure";
    case ErrorCode::MalformedDecomposition: return "MalformedDecomposition";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SignImbalance: return "SignImbalance";
    case ErrorCode::WrongFluctuationCount: return "WrongFluctuationCount";
    case ErrorCode::NonCanonical: return "NonCanonical";
    case ErrorCode::EmptyStructure: return "EmptyStructure";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InconsistentPrefix: return "InconsistentPrefix";
    case ErrorCode::NotInD: return "NotInD";
    case ErrorCode::IllegalWord: return "IllegalWord";
    case ErrorCode::WeightMismatch: return "WeightMismatch";
    case ErrorCode::NonCoalescence: return "NonCoalescence";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

GraphSpec GraphSpec::line(int n, int d) {
  if (n < 1) throw Error(ErrorCode::InvalidGraph, "line graph needs n >= 1");
  if (d < 0) throw Error(ErrorCode::InvalidGraph, "constraint radius d must be >= 0");
  return GraphSpec(Topology::Line, n, d);
}

GraphSpec GraphSpec::torus(int n, int d) {
  if (n < 4 || n % 2 != 0) throw Error(ErrorCode::InvalidGraph, "torus needs even n >= 4");
  if (d < 1) throw Error(ErrorCode::InvalidGraph, "torus needs d >= 1");
  return GraphSpec(Topology::Torus, n, d);
}

int GraphSpec::distance(int i, int j) const noexcept {
  int diff = std::abs(i - j);
  if (is_torus()) diff = std::min(diff, n_ - diff);
  return diff;
}

bool GraphSpec::is_edge(int i, int j) const noexcept {
  int dist = distance(i, j);
  return dist % 2 == 1 && dist <= 2 * d_ + 1;
}

int GraphSpec::canonical_vertex(long long v) const noexcept {
  if (is_line()) return static_cast<int>(v);
  long long m = v % n_;
  if (m < 0) m += n_;
  return static_cast<int>(m);
}

std::vector<int> GraphSpec::neighbors(int v) const {
  std::vector<int> out;
  for (int off = 1; off <= 2 * d_ + 1; off += 2) {
    for (int sgn : {-1, 1}) {
      long long u = static_cast<long long>(v) + sgn * off;
      if (is_line()) {
        if (u >= 0 && u <= n_) out.push_back(static_cast<int>(u));
      } else {
        int cu = canonical_vertex(u);
        if (cu != v) out.push_back(cu);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string describe(const GraphSpec& g) {
  std::ostringstream os;
  os << (g.is_line() ? "P" : "T") << "_{" << g.n() << "," << g.d() << "}";
  return os.str();
}

std::string Violation::message() const {
  std::ostringstream os;
  os << to_string(code);
  if (code == ErrorCode::EdgeViolation) os << "(" << i << ", " << j << ")";
  return os.str();
}

std::optional<Violation> find_violation(std::span<const int> values, const GraphSpec& graph) {
  if (static_cast<int>(values.size()) != graph.num_vertices())
    return Violation{ErrorCode::WrongLength};
  if (values[0] != 0) return Violation{ErrorCode::RootNotZero};
  const int nv = graph.num_vertices();
  for (int i = 0; i < nv; ++i) {
    for (int j : graph.neighbors(i)) {
      if (j <= i) continue;
      if (std::abs(values[static_cast<std::size_t>(i)] - values[static_cast<std::size_t>(j)]) != 1)
        return Violation{ErrorCode::EdgeViolation, i, j};
    }
  }
  return std::nullopt;
}

HeightFunction validate(std::vector<int> values, const GraphSpec& graph) {
  if (auto v = find_violation(values, graph))
    throw Error(v->code, "not a homomorphism on " + describe(graph) + ": " + v->message());
  return HeightFunction(graph, std::move(values));
}

HeightFunction trusted_height_function(std::vector<int> values, const GraphSpec& graph) {
  return HeightFunction(graph, std::move(values));
}

int range_size(const HeightFunction& f) {
  auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
  return *hi - *lo + 1;
}

std::vector<int> derivative(const HeightFunction& f) {
  const int n = f.graph().n();
  std::vector<int> steps(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) steps[static_cast<std::size_t>(k - 1)] = f.at(k) - f.at(k - 1);
  return steps;
}

bool in_D(std::span<const int> steps) {
  for (std::size_t k = 2; k < steps.size(); ++k)
    if (steps[k] == steps[k - 1] && steps[k] == steps[k - 2]) return false;
  return true;
}

HeightFunction from_derivative(std::span<const int> steps, const GraphSpec& graph) {
  if (static_cast<int>(steps.size()) != graph.n())
    throw Error(ErrorCode::WrongLength, "derivative length must equal n");
  for (int s : steps)
    if (s != 1 && s != -1) throw Error(ErrorCode::InvalidParameter, "steps must be +-1");
  std::vector<int> values(static_cast<std::size_t>(graph.num_vertices()));
  values[0] = 0;
  for (int k = 1; k < graph.num_vertices(); ++k)
    values[static_cast<std::size_t>(k)] = values[static_cast<std::size_t>(k - 1)] + steps[static_cast<std::size_t>(k - 1)];
  if (graph.is_torus()) {
    // The closing step must bring f(n-1) back to f(0).
    int closing = values.back() + steps.back();
    if (closing != 0) {
      throw Error(ErrorCode::EdgeViolation,
                  "derivative does not close on " + describe(graph) + ": EdgeViolation(0, " +
                      std::to_string(graph.n() - 1) + ")");
    }
  }
  return validate(std::move(values), graph);
}

HeightFunction flat(const GraphSpec& graph, int sign) {
  std::vector<int> values(static_cast<std::size_t>(graph.num_vertices()));
  for (int v = 0; v < graph.num_vertices(); ++v) values[static_cast<std::size_t>(v)] = (v % 2 == 1) ? sign : 0;
  return validate(std::move(values), graph);
}

std::vector<int> pointwise_max(const HeightFunction& f, const HeightFunction& g) {
  std::vector<int> out(f.values().begin(), f.values().end());
  for (int v = 0; v < f.size(); ++v) out[static_cast<std::size_t>(v)] = std::max(f[v], g[v]);
  return out;
}

std::vector<int> pointwise_min(const HeightFunction& f, const HeightFunction& g) {
  std::vector<int> out(f.values().begin(), f.values().end());
  for (int v = 0; v < f.size(); ++v) out[static_cast<std::size_t>(v)] = std::min(f[v], g[v]);
  return out;
}

}  // namespace homwalk
