#include "homwalk/torus.hpp"

#include <functional>
#include <string>

namespace homwalk::torus {

namespace {

int padding(int j, int d) {
  const int block = 2 * d + 1;
  return j / block + ((j % block) % 2);
}

std::vector<int> chain_signs_of(const TorusJumpStructure& s, const std::vector<Chain>& chains) {
  std::vector<int> out;
  for (const Chain& c : chains) {
    auto it = std::lower_bound(s.positions.begin(), s.positions.end(), c.end);
    out.push_back(s.signs[static_cast<std::size_t>(it - s.positions.begin())]);
  }
  return out;
}

}  // namespace

int rho_plus(int x, int y, int n) {
  int r = (y - x) % n;
  return r < 0 ? r + n : r;
}

int rho(int x, int y, int n) { return std::min(rho_plus(x, y, n), rho_plus(y, x, n)); }

AverageHeight average_height_torus(const HeightFunction& f) {
  const int n = f.graph().n();
  AverageHeight out;
  out.h.assign(static_cast<std::size_t>(n), 0);
  std::vector<char> known(static_cast<std::size_t>(n), 0);
  // h(x) is the middle value of the shortest look-back window holding three
  // values. It is f(x-1) or f(x-2) unless f repeats with period two just
  // before x, in which case h(x) = h(x-2).
  auto base_rule = [&](int x, int& value) {
    if (f.at(x) != f.at(x - 2)) { value = f.at(x - 1); return true; }
    if (f.at(x - 1) != f.at(x - 3)) { value = f.at(x - 2); return true; }
    return false;
  };
  for (int x = 0; x < n; ++x) {
    if (known[static_cast<std::size_t>(x)]) continue;
    std::vector<int> pending;
    int y = x;
    int value = 0;
    bool found = false;
    for (int steps = 0; steps < n / 2; ++steps) {
      if (known[static_cast<std::size_t>(y)]) { value = out.h[static_cast<std::size_t>(y)]; found = true; break; }
      if (base_rule(y, value)) {
        out.h[static_cast<std::size_t>(y)] = value;
        known[static_cast<std::size_t>(y)] = 1;
        found = true;
        break;
      }
      pending.push_back(y);
      y = static_cast<int>(f.graph().canonical_vertex(y - 2));
    }
    // A whole parity class without a base case means f takes two values.
    if (!found) value = 0;
    for (int p : pending) {
      out.h[static_cast<std::size_t>(p)] = value;
      known[static_cast<std::size_t>(p)] = 1;
    }
  }
  if (range_size(f) == 2) std::fill(out.h.begin(), out.h.end(), 0);

  out.delta.assign(static_cast<std::size_t>(n), 0);
  out.structure = {n, f.graph().d(), {}, {}};
  for (int x = 0; x < n; ++x) {
    int dx = out.h[static_cast<std::size_t>(x)] - out.h[static_cast<std::size_t>((x + n - 1) % n)];
    out.delta[static_cast<std::size_t>(x)] = dx;
    if (dx != 0) {
      out.structure.positions.push_back(x);
      out.structure.signs.push_back(dx);
    }
  }
  return out;
}

bool satisfies_gap_condition(int n, int d, const std::vector<int>& positions) {
  const std::size_t m = positions.size();
  for (std::size_t j = 0; j < m; ++j) {
    if (positions[j] < 0 || positions[j] >= n) return false;
    if (j > 0 && positions[j] <= positions[j - 1]) return false;
  }
  if (m == 0) return true;
  for (std::size_t j = 0; j < m; ++j) {
    int gap = rho_plus(positions[(j + m - 1) % m], positions[j], n);
    if (gap == 0) gap = n;
    if (gap % 2 == 0 || gap < 2 * d + 1) return false;
  }
  return true;
}

std::vector<Chain> chain_structure(int n, int d, const std::vector<int>& positions) {
  if (!satisfies_gap_condition(n, d, positions))
    throw Error(ErrorCode::InfeasibleStructure, "jump gaps must be odd and at least 2d+1");
  const std::size_t m = positions.size();
  std::vector<Chain> out;
  if (m == 0) return out;
  auto tight = [&](std::size_t j) {
    return rho_plus(positions[(j + m - 1) % m], positions[j], n) == 2 * d + 1;
  };
  std::size_t start = m;
  for (std::size_t j = 0; j < m; ++j)
    if (!tight(j)) { start = j; break; }
  if (start == m) throw Error(ErrorCode::InfeasibleStructure, "jumps form a closed chain around the torus");
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t j = (start + step) % m;
    if (step > 0 && tight(j)) {
      out.back().end = positions[j];
      ++out.back().length;
    } else {
      out.push_back({positions[j], 1});
    }
  }
  std::sort(out.begin(), out.end(), [](const Chain& a, const Chain& b) { return a.end < b.end; });
  return out;
}

int chain_first_point(const Chain& c, int n, int d) {
  return rho_plus(0, c.end - (2 * d + 1) * c.length - 1, n);
}

std::vector<std::vector<int>> feasible_sign_vectors(int n, int d, const std::vector<int>& positions) {
  const std::vector<Chain> chains = chain_structure(n, d, positions);
  const std::size_t m = chains.size();
  std::vector<std::vector<int>> out;
  if (m == 0) return {{}};
  if (m > 24) throw Error(ErrorCode::TooLarge, "too many chains to enumerate sign vectors");
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    std::vector<int> eps(m);
    long total = 0;
    for (std::size_t j = 0; j < m; ++j) {
      eps[j] = (mask >> (m - 1 - j)) & 1UL ? 1 : -1;
      total += eps[j] * chains[j].length;
    }
    if (total == 0) out.push_back(std::move(eps));
  }
  return out;
}

std::vector<std::vector<int>> all_feasible_position_sets(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    if (satisfies_gap_condition(n, d, cur)) {
      bool ok = cur.empty();
      if (!ok) {
        try {
          ok = !feasible_sign_vectors(n, d, cur).empty();
        } catch (const Error&) {
          ok = false;
        }
      }
      if (ok) out.push_back(cur);
    }
    for (int p = next; p < n; ++p) {
      if (!cur.empty()) {
        int gap = p - cur.back();
        if (gap % 2 == 0 || gap < 2 * d + 1) continue;
      }
      cur.push_back(p);
      rec(p + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

void check_structure(const TorusJumpStructure& s) {
  if (s.signs.size() != s.positions.size())
    throw Error(ErrorCode::MalformedDecomposition, "one sign per jump position required");
  for (int e : s.signs)
    if (e != 1 && e != -1) throw Error(ErrorCode::MalformedDecomposition, "jump signs must be +-1");
  const std::vector<Chain> chains = chain_structure(s.n, s.d, s.positions);
  // Signs must be constant along each chain.
  for (const Chain& c : chains) {
    auto it = std::lower_bound(s.positions.begin(), s.positions.end(), c.end);
    const int sign = s.signs[static_cast<std::size_t>(it - s.positions.begin())];
    for (int i = 0; i < c.length; ++i) {
      int p = rho_plus(0, c.end - (2 * s.d + 1) * i, s.n);
      auto jt = std::lower_bound(s.positions.begin(), s.positions.end(), p);
      if (s.signs[static_cast<std::size_t>(jt - s.positions.begin())] != sign)
        throw Error(ErrorCode::InfeasibleStructure, "jump signs differ inside a chain");
    }
  }
  long total = 0;
  for (int e : s.signs) total += e;
  if (total != 0) throw Error(ErrorCode::SignImbalance, "numbers of up and down jumps differ");
}

std::vector<int> fluctuation_points(int n, int d, const std::vector<int>& positions) {
  if (!satisfies_gap_condition(n, d, positions))
    throw Error(ErrorCode::InfeasibleStructure, "jump gaps must be odd and at least 2d+1");
  std::vector<int> out;
  if (positions.empty()) {
    for (int y = 1; y < n; y += 2) out.push_back(y);
    return out;
  }
  for (int y = 0; y < n; ++y) {
    int best = n;
    for (int s : positions) best = std::min(best, rho_plus(y, s, n));
    if (best % 2 == 1 && best >= 2 * d + 3) out.push_back(y);
  }
  return out;
}

int fluctuation_count(int n, int d, const std::vector<int>& positions) {
  const int chains = static_cast<int>(chain_structure(n, d, positions).size());
  const int size = static_cast<int>(positions.size());
  return (n - (2 * d + 1) * size - 2 * chains) / 2;
}

TorusDecomposition encode_torus(const HeightFunction& f) {
  TorusDecomposition dec;
  dec.structure = average_height_torus(f).structure;
  const int n = f.graph().n();
  if (dec.structure.positions.empty()) {
    bool even_zero = true;
    for (int y = 0; y < n; y += 2) even_zero = even_zero && f[y] == 0;
    dec.odd_class_constant = !even_zero;
  }
  for (int y : fluctuation_points(n, f.graph().d(), dec.structure.positions))
    dec.fluctuation_signs.push_back(f.at(y) - f.at(y - 1));
  return dec;
}

HeightFunction decode_torus(const TorusDecomposition& dec) {
  const TorusJumpStructure& s = dec.structure;
  const GraphSpec graph = GraphSpec::torus(s.n, s.d);
  check_structure(s);
  const int n = s.n;
  const int d = s.d;
  const int expected = fluctuation_count(n, d, s.positions);
  if (static_cast<int>(dec.fluctuation_signs.size()) != expected)
    throw Error(ErrorCode::WrongFluctuationCount,
                "expected " + std::to_string(expected) + " fluctuation signs, got " +
                    std::to_string(dec.fluctuation_signs.size()));
  for (int y : dec.fluctuation_signs)
    if (y != 1 && y != -1) throw Error(ErrorCode::MalformedDecomposition, "fluctuation sign must be +-1");

  std::vector<int> values(static_cast<std::size_t>(n), 0);
  if (s.positions.empty()) {
    if (!dec.odd_class_constant) {
      for (int j = 0; j < n / 2; ++j) values[static_cast<std::size_t>(2 * j + 1)] = dec.fluctuation_signs[static_cast<std::size_t>(j)];
      return validate(std::move(values), graph);
    }
    const auto& ys = dec.fluctuation_signs;
    if (std::all_of(ys.begin(), ys.end(), [&](int y) { return y == ys.front(); }))
      throw Error(ErrorCode::NonCanonical, "flat functions are encoded with the even class constant");
    const int c = ys.front();
    for (int j = 0; j < n / 2; ++j) {
      values[static_cast<std::size_t>(2 * j + 1)] = c;
      values[static_cast<std::size_t>(2 * j)] = c - ys[static_cast<std::size_t>(j)];
    }
    return validate(std::move(values), graph);
  }
  if (dec.odd_class_constant)
    throw Error(ErrorCode::MalformedDecomposition, "parity flag only applies to the empty structure");

  const std::vector<Chain> chains = chain_structure(n, d, s.positions);
  const std::vector<int> eps = chain_signs_of(s, chains);
  const std::vector<int> fp = fluctuation_points(n, d, s.positions);
  std::vector<int> fp_index(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < fp.size(); ++i) fp_index[static_cast<std::size_t>(fp[i])] = static_cast<int>(i);

  const std::size_t m = chains.size();
  int base = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const Chain& c = chains[j];
    const int first = chain_first_point(c, n, d);
    for (int i = 0; i <= (2 * d + 1) * c.length + 1; ++i)
      values[static_cast<std::size_t>((first + i) % n)] = base + eps[j] * padding(i, d);
    base += eps[j] * c.length;
    const int next_first = chain_first_point(chains[(j + 1) % m], n, d);
    const int gap = rho_plus(c.end, next_first, n) - 1;
    for (int dist = 1; dist <= gap; ++dist) {
      const int v = (c.end + dist) % n;
      int val = base;
      if (dist % 2 == 0) val += dec.fluctuation_signs[static_cast<std::size_t>(fp_index[static_cast<std::size_t>(v)])];
      values[static_cast<std::size_t>(v)] = val;
    }
  }
  const int shift = values[0];
  for (int& v : values) v -= shift;
  return validate(std::move(values), graph);
}

SignedChainStructure signed_chains(const HeightFunction& f) {
  const TorusJumpStructure s = average_height_torus(f).structure;
  const std::vector<Chain> chains = chain_structure(s.n, s.d, s.positions);
  const std::vector<int> eps = chain_signs_of(s, chains);
  SignedChainStructure out;
  for (std::size_t j = 0; j < chains.size(); ++j) out.entries.push_back({chains[j].end, eps[j] * chains[j].length});
  return out;
}

namespace {

SignedChainStructure nonempty_chains(const HeightFunction& f) {
  SignedChainStructure sc = signed_chains(f);
  if (sc.entries.empty()) throw Error(ErrorCode::EmptyStructure, "no jumps: W, Z and D are undefined");
  return sc;
}

std::vector<int> gap_halves(const SignedChainStructure& sc, int n, int d) {
  const std::size_t m = sc.entries.size();
  std::vector<int> x(m);
  for (std::size_t i = 0; i < m; ++i) {
    const SignedChain& prev = sc.entries[(i + m - 1) % m];
    const SignedChain& cur = sc.entries[i];
    x[i] = rho_plus(prev.end, cur.end - (2 * d + 1) * std::abs(cur.w) - 2, n) / 2;
  }
  return x;
}

}  // namespace

NecklaceClass<int> necklace_W(const HeightFunction& f) {
  const SignedChainStructure sc = nonempty_chains(f);
  std::vector<int> w;
  for (const SignedChain& e : sc.entries) w.push_back(e.w);
  return necklace(w);
}

NecklaceClass<std::pair<int, int>> necklace_Z(const HeightFunction& f) {
  const SignedChainStructure sc = nonempty_chains(f);
  const std::vector<int> x = gap_halves(sc, f.graph().n(), f.graph().d());
  std::vector<std::pair<int, int>> z;
  for (std::size_t i = 0; i < x.size(); ++i) z.emplace_back(x[i], sc.entries[i].w);
  return necklace(z);
}

NecklaceClass<int> necklace_D(const HeightFunction& f) {
  return necklace(gap_halves(nonempty_chains(f), f.graph().n(), f.graph().d()));
}

std::vector<int> w_multiset(const HeightFunction& f) {
  std::vector<int> w;
  for (const SignedChain& e : signed_chains(f).entries) w.push_back(e.w);
  std::sort(w.begin(), w.end());
  return w;
}

int range_of_vector(const std::vector<int>& w) {
  int sum = 0, lo = 0, hi = 0;
  for (int x : w) {
    sum += x;
    lo = std::min(lo, sum);
    hi = std::max(hi, sum);
  }
  return 1 + hi - lo;
}

int range_from_W(const HeightFunction& f) { return 2 + range_of_vector(necklace_W(f).representative); }

BigCount count_one_chains(int n, int d, int r) {
  if (r < 1) throw Error(ErrorCode::InvalidParameter, "r must be >= 1");
  if (n % 2 != 0) throw Error(ErrorCode::InvalidParameter, "n must be even");
  BigCount b = binomial(n / 2 - (2LL * d + 1) * r - 1, 2LL * r - 1);
  return b * n / (2 * r);
}

}  // namespace homwalk::torus
