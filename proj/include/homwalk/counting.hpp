#pragma once

// Exact counts of homomorphisms: brute-force enumeration, the word-automaton
// completion table, the c_n(k) recursions and lambda(d).

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "homwalk/core.hpp"
#include "homwalk/numeric.hpp"
#include "homwalk/words.hpp"

namespace homwalk::counting {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// Visits every homomorphism in lexicographic order of the derivative
/// (-1 before +1). Throws TooLarge when 2^n exceeds the cap.
void for_each_hom(const GraphSpec& graph, const std::function<void(const HeightFunction&)>& visit,
                  std::uint64_t cap = kDefaultEnumerationCap);
std::vector<HeightFunction> enumerate(const GraphSpec& graph, std::uint64_t cap = kDefaultEnumerationCap);

/// count(m, s): number of ways to finish a word in state s when m units of
/// weight remain, with an overhang of one allowed on the last letter.
class CompletionTable {
 public:
  CompletionTable(int d, int max_remaining);
  int d() const noexcept { return d_; }
  int max_remaining() const noexcept { return max_; }
  const BigCount& count(int remaining, const words::ChainState& s) const;
  const BigCount& count(int remaining, int state_id) const;
  /// |Hom(P_{n,d}, 0)| for 1 <= n <= max_remaining.
  BigCount total(int n) const;

 private:
  int d_;
  int max_;
  std::vector<std::vector<BigCount>> table_;  // [remaining + 1][state]
  BigCount zero_ = 0;
};

/// c_n(k) for 0 <= n <= n_max, 0 <= k <= d-1, from the recursions with
/// bases n <= 2 counted directly on words.
std::vector<std::vector<BigCount>> c_table(int n_max, int d);
BigCount c_recursive(int n, int k, int d);
/// c_n(k) as |Omega_{n,d}(k,d)| by listing words; small n only.
BigCount c_from_words(int n, int k, int d);

BigCount hom_count_line(int n, int d);
/// By enumeration; throws Unsupported above the cap.
BigCount hom_count_torus(int n, int d, std::uint64_t cap = kDefaultEnumerationCap);

struct LambdaConstants {
  int d = 1;
  HighReal lambda;  // midpoint of [lo, hi]
  HighReal lo;
  HighReal hi;
  HighReal mu0;  // sqrt(lambda)
  HighReal sigma_prime_sq;
  double lambda_d() const { return lambda.convert_to<double>(); }
  /// |lambda^{d-1/2}(lambda-2) - 1|
  HighReal residual() const;
};

/// Root of lambda^{d-1/2}(lambda-2) = 1 in (2, 3], by bisection. Cached.
const LambdaConstants& lambda_of_d(int d);

struct PrefixMarginal {
  BigCount count;
  BigCount total;
  Rational probability;
};

/// Homomorphisms of P_{n,d} whose first |prefix| steps equal prefix.
/// Throws InconsistentPrefix if the prefix is not a homomorphism of
/// P_{|prefix|,d} or is longer than n.
PrefixMarginal prefix_marginal(int n, int d, std::span<const int> prefix);
PrefixMarginal prefix_marginal(const CompletionTable& table, int n, std::span<const int> prefix);

}  // namespace homwalk::counting
