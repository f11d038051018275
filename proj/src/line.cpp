#include "homwalk/line.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>

namespace homwalk::line {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

// Entry j of the padding sequence 0,1,..,0 | 1,2,..,1 | 2,3,..,2 | ...
int padding(int j, int d) {
  const int block = 2 * d + 1;
  return j / block + ((j % block) % 2);
}

void require_feasible_sub(const LineJumpStructure& s) {
  if (!is_feasible_substructure(s))
    throw Error(ErrorCode::InfeasibleStructure, "not a feasible jump sub-structure");
}

void require_feasible(const LineJumpStructure& s) {
  if (!is_feasible(s)) throw Error(ErrorCode::InfeasibleStructure, "not a feasible jump structure");
}

bool increasing_in_range(const LineJumpStructure& s) {
  for (std::size_t j = 0; j < s.positions.size(); ++j) {
    int p = s.positions[j];
    if (p < 1 || p > s.n) return false;
    if (j > 0 && p <= s.positions[j - 1]) return false;
  }
  return true;
}

}  // namespace

AverageHeight average_height(const HeightFunction& f) {
  const int n = f.graph().n();
  AverageHeight out;
  out.h.assign(static_cast<std::size_t>(n) + 1, 0);
  out.delta.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 1; k <= n; ++k) {
    const int prev = out.h[static_cast<std::size_t>(k - 1)];
    const int hk = std::abs(f[k] - prev) <= 1 ? prev : f[k - 1];
    out.h[static_cast<std::size_t>(k)] = hk;
    out.delta[static_cast<std::size_t>(k)] = hk - prev;
  }
  return out;
}

LineJumpStructure jump_structure(const HeightFunction& f) {
  LineJumpStructure s{f.graph().n(), f.graph().d(), {}};
  const AverageHeight ah = average_height(f);
  for (int k = 1; k <= s.n; ++k)
    if (ah.delta[static_cast<std::size_t>(k)] != 0) s.positions.push_back(k);
  return s;
}

bool is_feasible(const LineJumpStructure& s) {
  if (s.n < 1 || s.d < 0 || !increasing_in_range(s)) return false;
  if (s.positions.empty()) return true;
  if (s.positions.front() % 2 != 0) return false;
  for (std::size_t j = 1; j < s.positions.size(); ++j) {
    int gap = s.positions[j] - s.positions[j - 1];
    if (gap % 2 == 0 || gap < 2 * s.d + 1) return false;
  }
  return true;
}

bool is_feasible_substructure(const LineJumpStructure& s) {
  if (s.n < 1 || s.d < 0 || !increasing_in_range(s)) return false;
  if (s.positions.empty()) return true;
  // An odd first jump needs an even jump in front of it; an even gap needs
  // one jump inserted in the middle.
  const int first = s.positions.front();
  if (first % 2 != 0 && first < 2 * s.d + 3) return false;
  for (std::size_t j = 1; j < s.positions.size(); ++j) {
    int gap = s.positions[j] - s.positions[j - 1];
    if (gap % 2 == 1 ? gap < 2 * s.d + 1 : gap < 4 * s.d + 2) return false;
  }
  return true;
}

ChainStructure chain_structure(const LineJumpStructure& s) {
  require_feasible_sub(s);
  ChainStructure out;
  for (std::size_t j = 0; j < s.positions.size(); ++j) {
    if (j > 0 && s.positions[j] - s.positions[j - 1] == 2 * s.d + 1) {
      out.chains.back().end = s.positions[j];
      ++out.chains.back().length;
    } else {
      out.chains.push_back({s.positions[j], 1});
    }
  }
  return out;
}

std::vector<int> chain_points(const LineJumpStructure& s) {
  std::vector<int> out;
  for (const Chain& c : chain_structure(s).chains)
    for (int v = chain_first_point(c, s.d); v <= c.end; ++v) out.push_back(v);
  return out;
}

std::vector<int> fluctuation_points(const LineJumpStructure& s) {
  require_feasible(s);
  std::set<int> marks;
  for (int v : chain_points(s)) marks.insert(v);
  marks.insert(-1);
  std::vector<int> out;
  for (int k = 1; k <= s.n; ++k) {
    auto it = marks.lower_bound(k);  // first mark >= k; predecessor is the nearest below
    int below = *std::prev(it);
    if ((k - below) % 2 == 0) out.push_back(k);
  }
  return out;
}

int fluctuation_count(const LineJumpStructure& s) {
  require_feasible(s);
  const long long size = static_cast<long long>(s.positions.size());
  const long long min_i = s.positions.empty() ? 2LL * s.d + 2 : s.positions.front();
  const long long head = std::max(0LL, s.d + 1 - min_i / 2);
  const long long chains = static_cast<long long>(chain_structure(s).chains.size());
  return static_cast<int>(head + ceil_div(s.n - size, 2) - s.d * size - chains);
}

LineDecomposition encode(const HeightFunction& f) {
  LineDecomposition dec;
  dec.structure = jump_structure(f);
  for (const Chain& c : chain_structure(dec.structure).chains) dec.chain_signs.push_back(f[c.end] - f[c.end - 1]);
  for (int k : fluctuation_points(dec.structure)) dec.fluctuation_signs.push_back(f[k] - f[k - 1]);
  return dec;
}

HeightFunction decode(const LineDecomposition& dec) {
  const LineJumpStructure& s = dec.structure;
  require_feasible(s);
  const ChainStructure cs = chain_structure(s);
  const int fp_count = fluctuation_count(s);
  if (dec.chain_signs.size() != cs.chains.size())
    throw Error(ErrorCode::MalformedDecomposition,
                "expected " + std::to_string(cs.chains.size()) + " chain signs, got " +
                    std::to_string(dec.chain_signs.size()));
  if (static_cast<int>(dec.fluctuation_signs.size()) != fp_count)
    throw Error(ErrorCode::MalformedDecomposition,
                "expected " + std::to_string(fp_count) + " fluctuation signs, got " +
                    std::to_string(dec.fluctuation_signs.size()));
  for (int x : dec.chain_signs)
    if (x != 1 && x != -1) throw Error(ErrorCode::MalformedDecomposition, "chain sign must be +-1");
  for (int y : dec.fluctuation_signs)
    if (y != 1 && y != -1) throw Error(ErrorCode::MalformedDecomposition, "fluctuation sign must be +-1");

  const int n = s.n;
  const int d = s.d;
  std::vector<int> values(static_cast<std::size_t>(n) + 1, 0);
  std::size_t next_y = 0;
  int base = 0;
  int prev_end = -1;
  auto fill_gap = [&](int from, int to) {
    for (int v = std::max(from, 0); v <= std::min(to, n); ++v) {
      int val = base;
      if ((v - prev_end) % 2 == 0) val += dec.fluctuation_signs[next_y++];
      values[static_cast<std::size_t>(v)] = val;
    }
  };
  for (std::size_t j = 0; j < cs.chains.size(); ++j) {
    const Chain& c = cs.chains[j];
    const int first = chain_first_point(c, d);
    fill_gap(prev_end + 1, first - 1);
    const int x = dec.chain_signs[j];
    for (int v = std::max(first, 0); v <= c.end; ++v) values[static_cast<std::size_t>(v)] = base + x * padding(v - first, d);
    base += x * c.length;
    prev_end = c.end;
  }
  fill_gap(prev_end + 1, n);
  return validate(std::move(values), GraphSpec::line(n, d));
}

BigCount count_structures(int n, int d, int r, int i) {
  if (i < 1 || i > d + 1) throw Error(ErrorCode::IndexOutOfRange, "structure index i must lie in [1, d+1]");
  if (r < 0) throw Error(ErrorCode::InvalidParameter, "r must be >= 0");
  const long long rr = r;
  if (i == d + 1) return binomial(floor_div(n - rr - 1, 2) - (d - 1LL) * rr, rr);
  return binomial(floor_div(n - rr, 2) - (d - 1LL) * rr - i, rr);
}

BigCount count_fluct_words(int n, int d, int r, int i) {
  if (i < 1 || i > d + 1) throw Error(ErrorCode::IndexOutOfRange, "structure index i must lie in [1, d+1]");
  if (r < 0) throw Error(ErrorCode::InvalidParameter, "r must be >= 0");
  const long long rr = r;
  const long long e = (i == d + 1) ? ceil_div(n - rr, 2) - d * rr : ceil_div(n - rr - 1, 2) - d * rr - i + 1;
  if (e < 0) return 0;
  return pow2(e);
}

int jumps_after_window(const LineJumpStructure& s) {
  return static_cast<int>(std::count_if(s.positions.begin(), s.positions.end(),
                                        [&](int p) { return p > 2 * s.d + 1; }));
}

std::vector<LineJumpStructure> all_feasible_structures(int n, int d) {
  std::vector<LineJumpStructure> out;
  LineJumpStructure cur{n, d, {}};
  std::function<void()> rec = [&]() {
    out.push_back(cur);
    int start = cur.positions.empty() ? 2 : cur.positions.back() + 2 * d + 1;
    for (int p = start; p <= n; p += 2) {
      cur.positions.push_back(p);
      rec();
      cur.positions.pop_back();
    }
  };
  rec();
  return out;
}

}  // namespace homwalk::line
