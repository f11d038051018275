#include <map>
#include <set>

#include "doctest.h"
#include "homwalk/counting.hpp"
#include "homwalk/line.hpp"
#include "oracle.hpp"

using namespace homwalk;
using namespace homwalk::line;

namespace {

LineJumpStructure js(int n, int d, std::vector<int> p) { return {n, d, std::move(p)}; }

std::vector<int> vals(const HeightFunction& f) { return {f.values().begin(), f.values().end()}; }

// FP(I) straight from the definition, with CP(I) built from the chain list.
std::vector<int> fp_oracle(const LineJumpStructure& s) {
  std::set<int> cp;
  // Chains: maximal runs at spacing exactly 2d+1.
  std::vector<std::pair<int, int>> chains;
  for (std::size_t j = 0; j < s.positions.size(); ++j) {
    if (j > 0 && s.positions[j] - s.positions[j - 1] == 2 * s.d + 1) {
      chains.back().first = s.positions[j];
      chains.back().second++;
    } else {
      chains.push_back({s.positions[j], 1});
    }
  }
  for (auto [k, t] : chains)
    for (int v = k - (2 * s.d + 1) * t - 1; v <= k; ++v) cp.insert(v);
  cp.insert(-1);
  std::vector<int> out;
  for (int k = 1; k <= s.n; ++k) {
    int i = 1;
    while (!cp.count(k - i)) ++i;
    if (i % 2 == 0) out.push_back(k);
  }
  return out;
}

}  // namespace

TEST_CASE("average height examples") {
  const auto f = validate({0, 1, 2, 1, 2}, GraphSpec::line(4, 1));
  const auto ah = average_height(f);
  CHECK(ah.h == std::vector<int>{0, 0, 1, 1, 1});
  CHECK(std::vector<int>(ah.delta.begin() + 1, ah.delta.end()) == std::vector<int>{0, 1, 0, 0});
  CHECK(jump_structure(f).positions == std::vector<int>{2});
  const auto z = flat(GraphSpec::line(9, 2), 1);
  CHECK(average_height(z).h == std::vector<int>(10, 0));
  CHECK(jump_structure(z).positions.empty());
}

TEST_CASE("average height stays within one of f") {
  for (int d = 1; d <= 2; ++d) {
    for (const auto& f : counting::enumerate(GraphSpec::line(8, d))) {
      const auto ah = average_height(f);
      CHECK(ah.h == oracle::line_h(vals(f)));
      for (int k = 0; k <= 8; ++k) CHECK(std::abs(f[k] - ah.h[k]) <= 1);
      for (int k = 1; k <= 8; ++k) CHECK(std::abs(ah.delta[k]) <= 1);
    }
  }
}

TEST_CASE("chain structure examples") {
  CHECK(chain_structure(js(5, 1, {2})).chains == std::vector<Chain>{{2, 1}});
  CHECK(chain_structure(js(10, 1, {2, 5})).chains == std::vector<Chain>{{5, 2}});
  CHECK(chain_structure(js(10, 1, {2, 7})).chains == std::vector<Chain>{{2, 1}, {7, 1}});
  CHECK(chain_structure(js(20, 1, {2, 5, 8, 13})).chains == std::vector<Chain>{{8, 3}, {13, 1}});
  // A sub-structure may start odd or skip a jump.
  CHECK(chain_structure(js(20, 1, {5})).chains == std::vector<Chain>{{5, 1}});
  CHECK(chain_structure(js(20, 1, {2, 8})).chains == std::vector<Chain>{{2, 1}, {8, 1}});
  auto bad = [](LineJumpStructure s) {
    try {
      chain_structure(s);
    } catch (const Error& e) {
      return e.code() == ErrorCode::InfeasibleStructure;
    }
    return false;
  };
  CHECK(bad(js(10, 1, {3})));
  CHECK(bad(js(10, 1, {2, 4})));
  CHECK(bad(js(10, 2, {2, 5})));
  CHECK(bad(js(10, 1, {2, 2})));
  CHECK(bad(js(10, 1, {2, 11})));
}

TEST_CASE("feasibility matches the realised jump structures") {
  for (int d = 1; d <= 2; ++d) {
    for (int n = 1; n <= 14; ++n) {
      std::set<std::vector<int>> realised;
      for (const auto& f : counting::enumerate(GraphSpec::line(n, d))) realised.insert(jump_structure(f).positions);
      // Every subset of {1..n} is a candidate.
      for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        std::vector<int> p;
        for (int k = 1; k <= n; ++k)
          if ((mask >> (k - 1)) & 1UL) p.push_back(k);
        CHECK(is_feasible(js(n, d, p)) == (realised.count(p) > 0));
      }
      CHECK(all_feasible_structures(n, d).size() == realised.size());
    }
  }
}

TEST_CASE("sub-structures are exactly subsets of feasible structures") {
  for (int d = 1; d <= 2; ++d) {
    const int n = 14;
    std::set<std::vector<int>> subs;
    for (const auto& s : all_feasible_structures(n, d)) {
      const std::size_t m = s.positions.size();
      for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
        std::vector<int> p;
        for (std::size_t j = 0; j < m; ++j)
          if ((mask >> j) & 1UL) p.push_back(s.positions[j]);
        subs.insert(p);
      }
    }
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
      std::vector<int> p;
      for (int k = 1; k <= n; ++k)
        if ((mask >> (k - 1)) & 1UL) p.push_back(k);
      CHECK(is_feasible_substructure(js(n, d, p)) == (subs.count(p) > 0));
    }
  }
}

TEST_CASE("fluctuation points") {
  CHECK(fluctuation_points(js(7, 1, {})) == std::vector<int>{1, 3, 5, 7});
  CHECK(fluctuation_points(js(8, 2, {})) == std::vector<int>{1, 3, 5, 7});
  CHECK(fluctuation_points(js(5, 1, {2})) == std::vector<int>{4});
  CHECK(fluctuation_count(js(5, 1, {2})) == 1);
  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 16; ++n) {
      for (const auto& s : all_feasible_structures(n, d)) {
        const auto fp = fluctuation_points(s);
        CHECK(fp == fp_oracle(s));
        CHECK(static_cast<int>(fp.size()) == fluctuation_count(s));
      }
    }
  }
}

TEST_CASE("decode examples") {
  LineDecomposition zig{js(6, 1, {}), {}, {1, 1, 1}};
  CHECK(vals(decode(zig)) == std::vector<int>{0, 1, 0, 1, 0, 1, 0});
  LineDecomposition ex{js(5, 1, {2}), {1}, {-1}};
  const auto f = decode(ex);
  CHECK(vals(f) == std::vector<int>{0, 1, 2, 1, 0, 1});
  // Independent confirmation from the definitions.
  CHECK(oracle::is_hom(false, 5, 1, vals(f)));
  const auto h = oracle::line_h(vals(f));
  std::vector<int> jumps;
  for (int k = 1; k <= 5; ++k)
    if (h[k] != h[k - 1]) jumps.push_back(k);
  CHECK(jumps == std::vector<int>{2});
  CHECK(encode(f) == ex);

  auto code = [](const LineDecomposition& dec) {
    try {
      decode(dec);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Unsupported;
  };
  CHECK(code({js(5, 1, {2}), {}, {-1}}) == ErrorCode::MalformedDecomposition);
  CHECK(code({js(5, 1, {2}), {1}, {-1, 1}}) == ErrorCode::MalformedDecomposition);
  CHECK(code({js(5, 1, {3}), {1}, {}}) == ErrorCode::InfeasibleStructure);
}

TEST_CASE("encode and decode are inverse on every homomorphism") {
  for (int d = 1; d <= 3; ++d) {
    const int n = d == 1 ? 12 : 10;
    std::map<std::vector<int>, int> per_structure;
    for (const auto& f : counting::enumerate(GraphSpec::line(n, d))) {
      const auto dec = encode(f);
      CHECK(decode(dec) == f);
      CHECK(dec.fluctuation_signs.size() == static_cast<std::size_t>(fluctuation_count(dec.structure)));
      per_structure[dec.structure.positions]++;
    }
    // Each class {S = I} has size 2^{|C(I)| + |FP(I)|}.
    for (const auto& s : all_feasible_structures(n, d)) {
      const int bits = static_cast<int>(chain_structure(s).chains.size()) + fluctuation_count(s);
      CHECK(per_structure[s.positions] == (1 << bits));
    }
  }
}

TEST_CASE("every sign choice decodes into its class") {
  const int n = 11, d = 1;
  for (const auto& s : all_feasible_structures(n, d)) {
    const int m = static_cast<int>(chain_structure(s).chains.size());
    const int k = fluctuation_count(s);
    for (unsigned long mask = 0; mask < (1UL << (m + k)); ++mask) {
      LineDecomposition dec{s, {}, {}};
      for (int j = 0; j < m; ++j) dec.chain_signs.push_back((mask >> j) & 1UL ? 1 : -1);
      for (int j = 0; j < k; ++j) dec.fluctuation_signs.push_back((mask >> (m + j)) & 1UL ? 1 : -1);
      const auto f = decode(dec);
      CHECK(jump_structure(f) == s);
      CHECK(encode(f) == dec);
    }
  }
}

TEST_CASE("structure counts") {
  CHECK(count_structures(10, 1, 1, 2) == 4);
  for (int d = 1; d <= 3; ++d) CHECK(count_structures(20, d, 0, d + 1) == 1);
  CHECK_THROWS_AS(count_structures(10, 1, 1, 0), Error);
  CHECK_THROWS_AS(count_structures(10, 1, 1, 3), Error);

  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 16; ++n) {
      std::map<std::pair<int, int>, long> tally;  // (r, i) -> #structures
      for (const auto& s : all_feasible_structures(n, d)) {
        const int lead = s.positions.empty() ? 2 * d + 2 : std::min(s.positions.front(), 2 * d + 2);
        tally[{jumps_after_window(s), lead / 2}]++;
      }
      BigCount total = 0;
      for (int r = 0; r <= n; ++r) {
        for (int i = 1; i <= d + 1; ++i) {
          const BigCount c = count_structures(n, d, r, i);
          CHECK(c == tally[{r, i}]);
          total += c * count_fluct_words(n, d, r, i);
        }
      }
      CHECK(total == static_cast<long>(oracle::homs(false, n, d).size()));
    }
  }
}

TEST_CASE("fluctuation-word counts match class sizes") {
  for (int d = 1; d <= 2; ++d) {
    const int n = 14;
    std::map<std::vector<int>, long> sizes;
    for (const auto& f : counting::enumerate(GraphSpec::line(n, d))) sizes[jump_structure(f).positions]++;
    for (const auto& s : all_feasible_structures(n, d)) {
      const int lead = s.positions.empty() ? 2 * d + 2 : std::min(s.positions.front(), 2 * d + 2);
      CHECK(count_fluct_words(n, d, jumps_after_window(s), lead / 2) == sizes[s.positions]);
    }
  }
}

TEST_CASE("chain signs are uniform given the jump structure") {
  for (int d = 1; d <= 2; ++d) {
    std::map<std::vector<int>, std::map<std::vector<int>, int>> law;
    for (const auto& f : counting::enumerate(GraphSpec::line(13, d))) {
      const auto dec = encode(f);
      law[dec.structure.positions][dec.chain_signs]++;
    }
    for (const auto& [pos, table] : law) {
      const std::size_t m = table.begin()->first.size();
      CHECK(table.size() == (std::size_t{1} << m));
      for (const auto& [x, count] : table) CHECK(count == table.begin()->second);
    }
  }
}

TEST_CASE("jump probabilities") {
  for (int d = 1; d <= 2; ++d) {
    for (int n : {10, 14}) {
      const auto all = oracle::homs(false, n, d);
      const double total = static_cast<double>(all.size());
      std::vector<std::vector<int>> jumps;
      for (const auto& f : all) {
        const auto h = oracle::line_h(f);
        std::vector<int> s;
        for (int k = 1; k <= n; ++k)
          if (h[k] != h[k - 1]) s.push_back(k);
        jumps.push_back(s);
      }
      auto prob = [&](const std::vector<int>& want) {
        long c = 0;
        for (const auto& s : jumps)
          if (std::includes(s.begin(), s.end(), want.begin(), want.end())) ++c;
        return c / total;
      };
      // First-window bounds.
      const double p2 = prob({2});
      CHECK(p2 >= 0.25);
      CHECK(p2 <= 0.5);
      long early = 0;
      for (const auto& s : jumps)
        if (!s.empty() && s.front() <= 2 * d + 1) ++early;
      CHECK(early / total >= 1.0 / 3);
      CHECK(early / total <= 2.0 / 3);
      // Joint jump bound for sets of up to three positions past the first window.
      for (int a = 2 * d + 2; a <= n; ++a) {
        CHECK(prob({a}) <= std::pow(2.0, -d) + 1e-12);
        for (int b = a + 1; b <= n; ++b) {
          CHECK(prob({a, b}) <= std::pow(2.0, -2 * d) + 1e-12);
          for (int c = b + 1; c <= n; ++c) CHECK(prob({a, b, c}) <= std::pow(2.0, -3 * d) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("range is at most the number of jumps plus three") {
  for (int d = 1; d <= 2; ++d)
    for (const auto& f : counting::enumerate(GraphSpec::line(14, d)))
      CHECK(range_size(f) <= static_cast<int>(jump_structure(f).positions.size()) + 3);
}
