#pragma once

// Homomorphisms on the torus T_{n,d}: average height, signed chain
// structures, the (structure, fluctuation) bijection and the rotation
// classes W, Z, D that govern the range.

#include <algorithm>
#include <utility>
#include <vector>

#include "homwalk/core.hpp"
#include "homwalk/line.hpp"
#include "homwalk/numeric.hpp"

namespace homwalk::torus {

using line::Chain;

/// Clockwise distance (y - x) mod n.
int rho_plus(int x, int y, int n);
/// Cyclic graph distance.
int rho(int x, int y, int n);

/// Jump positions (sorted vertices in [0, n)) with the sign of each jump.
struct TorusJumpStructure {
  int n = 0;
  int d = 0;
  std::vector<int> positions;
  std::vector<int> signs;
  bool operator==(const TorusJumpStructure&) const = default;
};

struct SignedChain {
  int end = 0;
  int w = 0;  // sign * length
  bool operator==(const SignedChain&) const = default;
};

struct SignedChainStructure {
  std::vector<SignedChain> entries;  // ends increasing in [0, n)
  bool operator==(const SignedChainStructure&) const = default;
};

/// A rotation class, stored as its lexicographically least rotation.
template <typename T>
struct NecklaceClass {
  std::vector<T> representative;
  int period = 0;
  bool operator==(const NecklaceClass&) const = default;
};

/// Smallest k >= 1 with rotation by k fixing x (|x| for the empty vector).
template <typename T>
int period(const std::vector<T>& x) {
  const std::size_t m = x.size();
  for (std::size_t k = 1; k < m; ++k) {
    if (m % k != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) ok = x[i] == x[(i + k) % m];
    if (ok) return static_cast<int>(k);
  }
  return static_cast<int>(m);
}

template <typename T>
NecklaceClass<T> necklace(const std::vector<T>& x) {
  std::vector<T> best = x;
  std::vector<T> rot = x;
  for (std::size_t k = 1; k < x.size(); ++k) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return {best, period(x)};
}

struct AverageHeight {
  std::vector<int> h;      // h[x] for x in [0, n)
  std::vector<int> delta;  // h[x] - h[x-1] cyclically
  TorusJumpStructure structure;
};

AverageHeight average_height_torus(const HeightFunction& f);

/// Cyclic gaps between consecutive positions all odd and >= 2d+1.
bool satisfies_gap_condition(int n, int d, const std::vector<int>& positions);

/// Chains ordered by end vertex. Throws InfeasibleStructure when the gap
/// condition fails or the positions form one closed chain around the torus.
std::vector<Chain> chain_structure(int n, int d, const std::vector<int>& positions);

/// First chain point k - (2d+1)t - 1 reduced mod n.
int chain_first_point(const Chain& c, int n, int d);

/// All sign vectors (one per chain) with sum of sign * length equal to zero.
std::vector<std::vector<int>> feasible_sign_vectors(int n, int d, const std::vector<int>& positions);

/// Every position set satisfying the gap condition with a feasible sign vector.
std::vector<std::vector<int>> all_feasible_position_sets(int n, int d);

/// Throws InfeasibleStructure, SignImbalance or MalformedDecomposition.
void check_structure(const TorusJumpStructure& s);

/// Vertices whose clockwise distance to the next jump is odd and >= 2d+3;
/// for I empty, the odd vertices.
std::vector<int> fluctuation_points(int n, int d, const std::vector<int>& positions);
/// n/2 - (d+1/2)|I| - |C(I)|.
int fluctuation_count(int n, int d, const std::vector<int>& positions);

/// For S = {} the fluctuation signs are f(y) - f(y-1) at the odd vertices y,
/// and `odd_class_constant` tells which parity class of f is constant. The
/// flat functions are always encoded with the even class constant.
struct TorusDecomposition {
  TorusJumpStructure structure;
  std::vector<int> fluctuation_signs;
  bool odd_class_constant = false;
  bool operator==(const TorusDecomposition&) const = default;
};

TorusDecomposition encode_torus(const HeightFunction& f);
/// Throws InfeasibleStructure, SignImbalance, WrongFluctuationCount,
/// MalformedDecomposition or NonCanonical.
HeightFunction decode_torus(const TorusDecomposition& dec);

SignedChainStructure signed_chains(const HeightFunction& f);
/// Throw EmptyStructure when S = {}.
NecklaceClass<int> necklace_W(const HeightFunction& f);
NecklaceClass<std::pair<int, int>> necklace_Z(const HeightFunction& f);
NecklaceClass<int> necklace_D(const HeightFunction& f);
/// The multiset of signed lengths, sorted.
std::vector<int> w_multiset(const HeightFunction& f);

/// 1 + max partial sum - min partial sum (partial sums include the empty one).
int range_of_vector(const std::vector<int>& w);
/// 2 + |Rng(W)|; throws EmptyStructure.
int range_from_W(const HeightFunction& f);

/// c(n,d,r) = n/(2r) * binom(n/2 - (2d+1)r - 1, 2r - 1).
BigCount count_one_chains(int n, int d, int r);

}  // namespace homwalk::torus
