#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "homwalk/counting.hpp"
#include "homwalk/torus.hpp"
#include "oracle.hpp"

using namespace homwalk;
using namespace homwalk::torus;

namespace {

std::vector<int> vals(const HeightFunction& f) { return {f.values().begin(), f.values().end()}; }

ErrorCode decode_error(const TorusDecomposition& dec) {
  try {
    decode_torus(dec);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Unsupported;
}

std::vector<int> jumps_of(const std::vector<int>& h) {
  const int n = static_cast<int>(h.size());
  std::vector<int> s;
  for (int x = 0; x < n; ++x)
    if (h[x] != h[(x + n - 1) % n]) s.push_back(x);
  return s;
}

}  // namespace

TEST_CASE("distances") {
  CHECK(rho_plus(10, 2, 12) == 4);
  CHECK(rho(0, 9, 12) == 3);
  CHECK(rho(5, 5, 12) == 0);
  for (int x = 0; x < 12; ++x)
    for (int y = 0; y < 12; ++y) {
      if (x != y) CHECK(rho_plus(x, y, 12) + rho_plus(y, x, 12) == 12);
      CHECK(rho(x, y, 12) == std::min(rho_plus(x, y, 12), rho_plus(y, x, 12)));
    }
}

TEST_CASE("average height on the torus") {
  const auto g = GraphSpec::torus(8, 1);
  const auto ah = average_height_torus(flat(g, 1));
  CHECK(ah.h == std::vector<int>(8, 0));
  CHECK(ah.structure.positions.empty());
  for (int n : {8, 10}) {
    for (int d = 1; d <= 2; ++d) {
      for (const auto& f : counting::enumerate(GraphSpec::torus(n, d))) {
        const auto a = average_height_torus(f);
        CHECK(a.h == oracle::torus_h(vals(f)));
        if (range_size(f) >= 3)
          for (int x = 0; x < n; ++x) CHECK(std::abs(f[x] - a.h[x]) <= 1);
        CHECK(std::accumulate(a.delta.begin(), a.delta.end(), 0) == 0);
        const long ups = std::count(a.structure.signs.begin(), a.structure.signs.end(), 1);
        CHECK(2 * ups == static_cast<long>(a.structure.signs.size()));
      }
    }
  }
}

TEST_CASE("empty jump structure class size") {
  for (int n : {8, 10, 12}) {
    long empty = 0;
    for (const auto& f : oracle::homs(true, n, 1))
      if (jumps_of(oracle::torus_h(f)).empty()) ++empty;
    CHECK(empty == (1L << (n / 2 + 1)) - 2);
  }
}

TEST_CASE("feasible structures are exactly the realised ones") {
  for (int d = 1; d <= 2; ++d) {
    for (int n : {8, 10, 12, 14}) {
      std::set<std::vector<int>> realised;
      for (const auto& f : oracle::homs(true, n, d)) {
        const auto h = oracle::torus_h(f);
        const auto s = jumps_of(h);
        realised.insert(s);
      }
      const auto sets = all_feasible_position_sets(n, d);
      CHECK(std::set<std::vector<int>>(sets.begin(), sets.end()) == realised);
    }
  }
}

TEST_CASE("fluctuation count formula") {
  for (int d = 1; d <= 2; ++d)
    for (int n = 4; n <= 14; n += 2)
      for (const auto& p : all_feasible_position_sets(n, d)) {
        const auto fp = fluctuation_points(n, d, p);
        CHECK(static_cast<int>(fp.size()) == fluctuation_count(n, d, p));
        // Direct definition: clockwise distance to the next jump odd and >= 2d+3.
        if (!p.empty()) {
          std::vector<int> want;
          for (int y = 0; y < n; ++y) {
            int best = n;
            for (int s : p) best = std::min(best, ((s - y) % n + n) % n);
            if (best % 2 == 1 && best >= 2 * d + 3) want.push_back(y);
          }
          CHECK(fp == want);
        }
      }
}

TEST_CASE("torus encode and decode are inverse") {
  for (int d = 1; d <= 2; ++d) {
    const int n = d == 1 ? 12 : 14;
    std::map<std::pair<std::vector<int>, std::vector<int>>, long> classes;
    for (const auto& f : counting::enumerate(GraphSpec::torus(n, d))) {
      const auto dec = encode_torus(f);
      CHECK(decode_torus(dec) == f);
      classes[{dec.structure.positions, dec.structure.signs}]++;
    }
    // Each signed class has 2^{|FP|} members.
    for (const auto& [key, count] : classes) {
      if (key.first.empty()) {
        CHECK(count == (1L << (n / 2 + 1)) - 2);
        continue;
      }
      CHECK(count == (1L << fluctuation_count(n, d, key.first)));
    }
  }
}

TEST_CASE("every feasible structure and sign choice decodes") {
  const int n = 14, d = 1;
  for (const auto& p : all_feasible_position_sets(n, d)) {
    if (p.empty()) continue;
    const auto chains = chain_structure(n, d, p);
    for (const auto& eps : feasible_sign_vectors(n, d, p)) {
      TorusJumpStructure s{n, d, p, std::vector<int>(p.size())};
      for (std::size_t j = 0; j < chains.size(); ++j)
        for (int i = 0; i < chains[j].length; ++i) {
          const int v = ((chains[j].end - (2 * d + 1) * i) % n + n) % n;
          s.signs[std::lower_bound(p.begin(), p.end(), v) - p.begin()] = eps[j];
        }
      const int k = fluctuation_count(n, d, p);
      for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
        TorusDecomposition dec{s, {}, false};
        for (int j = 0; j < k; ++j) dec.fluctuation_signs.push_back((mask >> j) & 1UL ? 1 : -1);
        const auto f = decode_torus(dec);
        CHECK(encode_torus(f) == dec);
      }
    }
  }
}

TEST_CASE("torus decode errors") {
  const int n = 12, d = 1;
  CHECK(decode_error({{n, d, {0, 3}, {1, -1}}, {}, false}) == ErrorCode::InfeasibleStructure);  // signs differ inside a chain
  CHECK(decode_error({{n, d, {0, 4}, {1, -1}}, {}, false}) == ErrorCode::InfeasibleStructure);
  CHECK(decode_error({{n, d, {0, 5}, {1, 1}}, {1}, false}) == ErrorCode::SignImbalance);
  CHECK(decode_error({{n, d, {0, 5}, {1, -1}}, {}, false}) == ErrorCode::WrongFluctuationCount);
  CHECK(decode_error({{n, d, {}, {}}, std::vector<int>(6, 1), true}) == ErrorCode::NonCanonical);
  CHECK(decode_error({{n, d, {}, {}}, {1, 1}, false}) == ErrorCode::WrongFluctuationCount);
}

TEST_CASE("signed chains and rotation classes") {
  const int n = 12, d = 1;
  // One up chain and one down chain of length one.
  TorusDecomposition dec{{n, d, {0, 5}, {1, -1}}, {1}, false};
  const auto f = decode_torus(dec);
  CHECK(necklace_W(f).representative == std::vector<int>{-1, 1});
  CHECK(necklace_W(f).period == 2);
  CHECK(range_from_W(f) == 4);
  CHECK(range_of_vector({1, -1}) == 2);
  CHECK(range_of_vector({2, -1, -1}) == 3);
  CHECK_THROWS_AS(necklace_W(flat(GraphSpec::torus(n, d), 1)), Error);
  try {
    necklace_Z(flat(GraphSpec::torus(n, d), -1));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyStructure);
  }

  CHECK(period(std::vector<int>{1, 2, 1, 2}) == 2);
  CHECK(period(std::vector<int>{1, 1, 1}) == 1);
  CHECK(period(std::vector<int>{1, 2, 3}) == 3);
  CHECK(necklace(std::vector<int>{3, 1, 2}).representative == std::vector<int>{1, 2, 3});
  // per(x v w) = lcm(per(x), per(w)).
  const std::vector<int> x = {0, 1, 0, 1, 0, 1};
  const std::vector<int> w = {1, 1, -1, 1, 1, -1};
  std::vector<std::pair<int, int>> xw;
  for (std::size_t i = 0; i < x.size(); ++i) xw.emplace_back(x[i], w[i]);
  CHECK(period(xw) == std::lcm(period(x), period(w)));
}

TEST_CASE("range identity and class counts") {
  for (int d = 1; d <= 2; ++d) {
    const int n = 12;
    std::map<std::vector<std::pair<int, int>>, long> z_counts;
    for (const auto& f : counting::enumerate(GraphSpec::torus(n, d))) {
      if (average_height_torus(f).structure.positions.empty()) continue;
      CHECK(range_from_W(f) == range_size(f));
      const auto sc = signed_chains(f);
      long sum = 0;
      for (const auto& e : sc.entries) sum += e.w;
      CHECK(sum == 0);
      z_counts[necklace_Z(f).representative]++;
      // W is determined by Z.
      std::vector<int> wz;
      for (const auto& [xi, wi] : necklace_Z(f).representative) wz.push_back(wi);
      CHECK(necklace(wz).representative == necklace_W(f).representative);
    }
    for (const auto& [z, count] : z_counts) {
      const long m = static_cast<long>(z.size());
      long xs = 0;
      for (const auto& [xi, wi] : z) xs += xi;
      CHECK(count * m == static_cast<long>(n) * period(z) * (1L << xs));
    }
  }
}

TEST_CASE("range law given the multiset of chain lengths") {
  const int n = 12, d = 1;
  std::map<std::vector<int>, std::map<int, long>> by_multiset;
  std::map<std::vector<int>, long> totals;
  for (const auto& f : counting::enumerate(GraphSpec::torus(n, d))) {
    if (average_height_torus(f).structure.positions.empty()) continue;
    const auto wbar = w_multiset(f);
    by_multiset[wbar][range_size(f)]++;
    totals[wbar]++;
  }
  for (const auto& [wbar, law] : by_multiset) {
    // Uniform permutations of the multiset, counted with multiplicity.
    std::vector<int> perm = wbar;
    std::map<int, long> perm_law;
    long perms = 0;
    do {
      perm_law[2 + range_of_vector(perm)]++;
      ++perms;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& [r, c] : law) CHECK(c * perms == perm_law[r] * totals[wbar]);
    long covered = 0;
    for (const auto& [r, c] : perm_law) covered += law.count(r) ? 1 : 0;
    CHECK(covered == static_cast<long>(perm_law.size()));
  }
}

TEST_CASE("chain and opposite-jump probabilities") {
  for (int d = 1; d <= 2; ++d) {
    for (int n : {10, 14}) {
      const auto all = oracle::homs(true, n, d);
      const double total = static_cast<double>(all.size());
      std::vector<std::vector<int>> deltas;
      for (const auto& f : all) {
        const auto h = oracle::torus_h(f);
        std::vector<int> dl(n);
        for (int x = 0; x < n; ++x) dl[x] = h[x] - h[(x + n - 1) % n];
        deltas.push_back(dl);
      }
      // Chains of t jumps at spacing 2d+1 ending at x.
      for (int x = 0; x < n; ++x)
        for (int t = 1; t * (2 * d + 1) < n; ++t) {
          long c = 0;
          for (const auto& dl : deltas) {
            bool all_jump = true;
            for (int i = 0; i < t && all_jump; ++i) all_jump = dl[((x - (2 * d + 1) * i) % n + n) % n] != 0;
            if (all_jump) ++c;
          }
          CHECK(c / total <= 9.0 * std::pow(2.0, -d * t) + 1e-12);
        }
      // Opposite jumps: m = 1 and m = 2.
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (x == y) continue;
          long c1 = 0;
          for (const auto& dl : deltas)
            if (dl[x] != 0 && dl[x] == -dl[y]) ++c1;
          CHECK(c1 / total <= std::pow(2.0, -(2 * d - 1)) + 1e-12);
        }
      for (int x1 = 0; x1 < n; ++x1)
        for (int x2 = x1 + 1; x2 < n; ++x2)
          for (int y1 = 0; y1 < n; ++y1)
            for (int y2 = y1 + 1; y2 < n; ++y2) {
              if (x1 == y1 || x1 == y2 || x2 == y1 || x2 == y2) continue;
              long c2 = 0;
              for (const auto& dl : deltas)
                if (dl[x1] != 0 && dl[x2] == dl[x1] && dl[y1] == -dl[x1] && dl[y2] == -dl[x1]) ++c2;
              CHECK(c2 / total <= std::pow(2.0, -2 * (2 * d - 1)) + 1e-12);
            }
    }
  }
}

TEST_CASE("one-chain structure counts") {
  CHECK(count_one_chains(12, 1, 1) == 12);
  CHECK(count_one_chains(8, 1, 1) == 0);
  CHECK(count_one_chains(12, 1, 2) == 0);
  for (int d = 1; d <= 2; ++d)
    for (int n = 8; n <= 20; n += 2) {
      std::map<int, long> tally;
      for (const auto& p : all_feasible_position_sets(n, d)) {
        if (p.empty()) continue;
        const auto chains = chain_structure(n, d, p);
        if (chains.size() == p.size()) tally[static_cast<int>(p.size()) / 2]++;
      }
      for (int r = 1; r <= n / 2; ++r) CHECK(count_one_chains(n, d, r) == tally[r]);
    }
}
