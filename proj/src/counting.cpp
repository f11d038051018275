#include "homwalk/counting.hpp"

#include <cstdlib>
#include <map>
#include <mutex>

namespace homwalk::counting {

using words::ChainState;
using words::Letter;

void for_each_hom(const GraphSpec& graph, const std::function<void(const HeightFunction&)>& visit,
                  std::uint64_t cap) {
  const int n = graph.n();
  if (n >= 63 || (std::uint64_t{1} << n) > cap)
    throw Error(ErrorCode::TooLarge, "enumeration of " + describe(graph) + " exceeds the search cap");
  const int nv = graph.num_vertices();
  const int reach = 2 * graph.d() + 1;
  std::vector<int> values(static_cast<std::size_t>(nv), 0);
  std::function<void(int)> rec = [&](int v) {
    if (v == nv) {
      if (graph.is_torus() && find_violation(values, graph)) return;
      visit(trusted_height_function(values, graph));
      return;
    }
    for (int step : {-1, 1}) {
      const int val = values[static_cast<std::size_t>(v - 1)] + step;
      bool ok = true;
      for (int j = 3; j <= reach && j <= v && ok; j += 2)
        ok = std::abs(val - values[static_cast<std::size_t>(v - j)]) == 1;
      if (!ok) continue;
      values[static_cast<std::size_t>(v)] = val;
      rec(v + 1);
    }
  };
  rec(1);
}

std::vector<HeightFunction> enumerate(const GraphSpec& graph, std::uint64_t cap) {
  std::vector<HeightFunction> out;
  for_each_hom(graph, [&](const HeightFunction& f) { out.push_back(f); }, cap);
  return out;
}

CompletionTable::CompletionTable(int d, int max_remaining) : d_(d), max_(max_remaining) {
  if (d < 1) throw Error(ErrorCode::InvalidParameter, "d must be >= 1");
  if (max_remaining < 0) throw Error(ErrorCode::InvalidParameter, "table size must be >= 0");
  const int ns = words::num_states(d);
  table_.assign(static_cast<std::size_t>(max_remaining) + 2, std::vector<BigCount>(static_cast<std::size_t>(ns)));
  for (int s = 0; s < ns; ++s) {
    table_[0][static_cast<std::size_t>(s)] = 1;  // remaining = -1
    table_[1][static_cast<std::size_t>(s)] = 1;  // remaining = 0
  }
  for (int m = 1; m <= max_remaining; ++m) {
    for (int s = 0; s < ns; ++s) {
      const ChainState st = words::state_from_id(s, d);
      BigCount acc = 0;
      for (Letter l : words::kLetters) {
        auto nx = words::next_state(st, l, d);
        if (!nx) continue;
        acc += count(m - words::letter_weight(l), words::state_id(*nx, d));
      }
      table_[static_cast<std::size_t>(m) + 1][static_cast<std::size_t>(s)] = std::move(acc);
    }
  }
}

const BigCount& CompletionTable::count(int remaining, int state_id) const {
  if (remaining < -1) return zero_;
  if (remaining > max_) throw Error(ErrorCode::IndexOutOfRange, "completion table too small");
  return table_[static_cast<std::size_t>(remaining) + 1][static_cast<std::size_t>(state_id)];
}

const BigCount& CompletionTable::count(int remaining, const ChainState& s) const {
  return count(remaining, words::state_id(s, d_));
}

BigCount CompletionTable::total(int n) const {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
  BigCount acc = 0;
  for (Letter l : words::kLetters) acc += count(n - words::letter_weight(l), words::initial_state(l, d_));
  return acc;
}

BigCount c_from_words(int n, int k, int d) {
  if (d < 1 || k < 0 || k > d - 1) throw Error(ErrorCode::IndexOutOfRange, "need 0 <= k <= d-1");
  BigCount count = 0;
  for (const words::Word& x : words::legal_words(n, d)) {
    bool ok = true;
    for (std::size_t i = 0; i < x.size() && ok; ++i) {
      if (static_cast<int>(i) < k && x[i] == Letter::A) ok = false;
      if (static_cast<int>(i) < d && x[i] == Letter::B) ok = false;
    }
    if (ok) ++count;
  }
  return count;
}

std::vector<std::vector<BigCount>> c_table(int n_max, int d) {
  if (d < 1) throw Error(ErrorCode::InvalidParameter, "d must be >= 1");
  if (n_max < 0) throw Error(ErrorCode::InvalidParameter, "n must be >= 0");
  std::vector<std::vector<BigCount>> c(static_cast<std::size_t>(n_max) + 1,
                                       std::vector<BigCount>(static_cast<std::size_t>(d)));
  for (int n = 0; n <= std::min(n_max, 2); ++n)
    for (int k = 0; k < d; ++k) c[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] = c_from_words(n, k, d);
  const auto top = static_cast<std::size_t>(d - 1);
  for (int n = 3; n <= n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    c[i][0] = c[i - 2][0] + c[i - 2][top] + c[i - 3][top];
    for (std::size_t k = 1; k < static_cast<std::size_t>(d); ++k) c[i][k] = c[i - 2][k - 1] + c[i - 2][top];
  }
  return c;
}

BigCount c_recursive(int n, int k, int d) {
  if (k < 0 || k > d - 1) throw Error(ErrorCode::IndexOutOfRange, "need 0 <= k <= d-1");
  return c_table(n, d)[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

BigCount hom_count_line(int n, int d) {
  if (d < 1) throw Error(ErrorCode::InvalidParameter, "d must be >= 1");
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
  if (n == 1) return 2;
  if (n == 2) return 4;
  const auto c = c_table(n - 2, d);
  return 2 * c[static_cast<std::size_t>(n - 2)][0] + 2 * c[static_cast<std::size_t>(n - 3)][static_cast<std::size_t>(d - 1)];
}

BigCount hom_count_torus(int n, int d, std::uint64_t cap) {
  BigCount count = 0;
  try {
    for_each_hom(GraphSpec::torus(n, d), [&](const HeightFunction&) { ++count; }, cap);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLarge) throw;
    throw Error(ErrorCode::Unsupported, "torus counts are only available by enumeration up to the cap");
  }
  return count;
}

HighReal LambdaConstants::residual() const {
  using boost::multiprecision::abs;
  using boost::multiprecision::pow;
  return abs(pow(lambda, HighReal(d) - HighReal(0.5)) * (lambda - 2) - 1);
}

namespace {

LambdaConstants solve_lambda(int d) {
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  const HighReal expo = HighReal(d) - HighReal(0.5);
  auto g = [&](const HighReal& x) { return pow(x, expo) * (x - 2) - 1; };
  LambdaConstants out;
  out.d = d;
  out.lo = 2;
  out.hi = 3;
  for (int it = 0; it < 540; ++it) {
    HighReal mid = (out.lo + out.hi) / 2;
    if (g(mid) > 0)
      out.hi = mid;
    else
      out.lo = mid;
  }
  out.lambda = (out.lo + out.hi) / 2;
  out.mu0 = sqrt(out.lambda);
  const HighReal& l = out.lambda;
  out.sigma_prime_sq = (l - 2) * (l - 1) / (4 + (2 * d + 1) * (l - 2));
  return out;
}

}  // namespace

const LambdaConstants& lambda_of_d(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidParameter, "d must be >= 1");
  static std::mutex mu;
  static std::map<int, LambdaConstants> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, solve_lambda(d)).first;
  return it->second;
}

PrefixMarginal prefix_marginal(const CompletionTable& table, int n, std::span<const int> prefix) {
  const int d = table.d();
  const int r = static_cast<int>(prefix.size());
  if (r > n) throw Error(ErrorCode::InconsistentPrefix, "prefix longer than n");
  PrefixMarginal out;
  out.total = table.total(n);
  if (r == 0) {
    out.count = out.total;
    out.probability = 1;
    return out;
  }
  try {
    from_derivative(prefix, GraphSpec::line(r, d));
  } catch (const Error& e) {
    throw Error(ErrorCode::InconsistentPrefix, std::string("prefix is not a homomorphism: ") + e.what());
  }
  words::Word x = words::encode_word(prefix);
  out.count = 0;
  if (words::weight(x) == r) {
    out.count = table.count(n - r, *words::final_state(x, d));
  } else {
    // The last letter overhangs the prefix; sum over the letters it can be.
    const Letter last = x.back();
    x.pop_back();
    std::vector<Letter> options;
    if (last == Letter::a) options = {Letter::a, Letter::A};
    if (last == Letter::b) options = {Letter::b, Letter::B};
    if (last == Letter::A) options = {Letter::A};
    if (last == Letter::B) options = {Letter::B};
    for (Letter l : options) {
      words::Word y = x;
      y.push_back(l);
      auto st = words::final_state(y, d);
      if (st) out.count += table.count(n - words::weight(y), *st);
    }
  }
  out.probability = Rational(out.count, out.total);
  return out;
}

PrefixMarginal prefix_marginal(int n, int d, std::span<const int> prefix) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
  return prefix_marginal(CompletionTable(d, n), n, prefix);
}

}  // namespace homwalk::counting
