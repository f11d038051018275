#pragma once

// Brute-force reference implementations used only by the tests. They follow
// the definitions directly and share no code with the library.

#include <algorithm>
#include <cstdlib>
#include <set>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace oracle {

inline bool is_edge(bool torus, int n, int d, int i, int j) {
  int diff = std::abs(i - j);
  if (torus) diff = std::min(diff, n - diff);
  return diff % 2 == 1 && diff <= 2 * d + 1;
}

inline bool is_hom(bool torus, int n, int d, const std::vector<int>& f) {
  const int nv = static_cast<int>(f.size());
  if (f[0] != 0) return false;
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      if (is_edge(torus, n, d, i, j) && std::abs(f[i] - f[j]) != 1) return false;
  return true;
}

/// All homomorphisms, ordered lexicographically by derivative with -1 first.
inline std::vector<std::vector<int>> homs(bool torus, int n, int d) {
  std::vector<std::vector<int>> out;
  const int nv = torus ? n : n + 1;
  for (unsigned long mask = 0; mask < (1UL << (nv - 1)); ++mask) {
    std::vector<int> f(static_cast<std::size_t>(nv), 0);
    for (int k = 1; k < nv; ++k) f[k] = f[k - 1] + (((mask >> (nv - 1 - k)) & 1UL) ? 1 : -1);
    if (is_hom(torus, n, d, f)) out.push_back(f);
  }
  return out;
}

inline int range(const std::vector<int>& f) {
  return *std::max_element(f.begin(), f.end()) - *std::min_element(f.begin(), f.end()) + 1;
}

/// Torus average height by scanning back from x until three values appear.
inline std::vector<int> torus_h(const std::vector<int>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<int> h(n, 0);
  if (range(f) == 2) return h;
  for (int x = 0; x < n; ++x) {
    std::set<int> seen;
    for (int i = 0;; ++i) {
      seen.insert(f[((x - i) % n + n) % n]);
      if (seen.size() == 3) {
        h[x] = *std::next(seen.begin());
        break;
      }
    }
  }
  return h;
}

inline std::vector<int> line_h(const std::vector<int>& f) {
  std::vector<int> h(f.size(), 0);
  for (std::size_t k = 1; k < f.size(); ++k) h[k] = std::abs(f[k] - h[k - 1]) <= 1 ? h[k - 1] : f[k - 1];
  return h;
}

inline unsigned long fib(int k) {
  unsigned long a = 0, b = 1;
  for (int i = 0; i < k; ++i) {
    unsigned long t = a + b;
    a = b;
    b = t;
  }
  return a;
}

/// Enough digits to resolve gaps like lambda^{-n/2} at n = 400.
using WideReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<600>>;

/// Root of lambda^{d-1/2}(lambda-2) = 1 by plain bisection on [2, 3].
inline WideReal wide_lambda(int d) {
  WideReal lo = 2, hi = 3;
  for (int i = 0; i < 2100; ++i) {
    const WideReal mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, WideReal(d) - WideReal(0.5)) * (mid - 2) < 1)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

inline WideReal wide(const boost::multiprecision::mpq_rational& q) {
  return WideReal(boost::multiprecision::numerator(q)) / WideReal(boost::multiprecision::denominator(q));
}

}  // namespace oracle
