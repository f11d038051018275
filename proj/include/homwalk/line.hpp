#pragma once

// Structure of homomorphisms on the segment P_{n,d}: the lazily-following
// average height, jumps and their chains, fluctuation points, and the
// encoding of a homomorphism as (jump structure, chain signs, fluctuation signs).

#include <vector>

#include "homwalk/core.hpp"
#include "homwalk/numeric.hpp"

namespace homwalk::line {

/// Positions of the jumps, strictly increasing in [1, n].
struct LineJumpStructure {
  int n = 0;
  int d = 0;
  std::vector<int> positions;
  bool operator==(const LineJumpStructure&) const = default;
};

/// A run of t jumps spaced exactly 2d+1 apart, ending at vertex `end`.
struct Chain {
  int end = 0;
  int length = 0;
  bool operator==(const Chain&) const = default;
};

struct ChainStructure {
  std::vector<Chain> chains;  // ends strictly increasing
  bool operator==(const ChainStructure&) const = default;
};

/// First jump of the chain.
inline int chain_start(const Chain& c, int d) { return c.end - (2 * d + 1) * (c.length - 1); }
/// First chain point k' = k - (2d+1)t - 1; may be negative.
inline int chain_first_point(const Chain& c, int d) { return c.end - (2 * d + 1) * c.length - 1; }

struct LineDecomposition {
  LineJumpStructure structure;
  std::vector<int> chain_signs;        // one per chain, in chain order
  std::vector<int> fluctuation_signs;  // one per fluctuation point, ascending
  bool operator==(const LineDecomposition&) const = default;
};

struct AverageHeight {
  std::vector<int> h;      // h[0..n], h[0] = 0
  std::vector<int> delta;  // delta[k] = h[k] - h[k-1] for k >= 1; delta[0] = 0
};

AverageHeight average_height(const HeightFunction& f);
LineJumpStructure jump_structure(const HeightFunction& f);

/// s_1 even, consecutive gaps odd and >= 2d+1, all positions in [1, n].
bool is_feasible(const LineJumpStructure& s);
/// Subset of some feasible structure.
bool is_feasible_substructure(const LineJumpStructure& s);

/// Throws InfeasibleStructure unless I is a feasible jump sub-structure.
ChainStructure chain_structure(const LineJumpStructure& s);

/// The chain points CP(I), sorted; may contain negative indices.
std::vector<int> chain_points(const LineJumpStructure& s);

/// FP(I) by its definition; throws InfeasibleStructure.
std::vector<int> fluctuation_points(const LineJumpStructure& s);
/// |FP(I)| by the closed formula.
int fluctuation_count(const LineJumpStructure& s);

LineDecomposition encode(const HeightFunction& f);
/// Throws InfeasibleStructure or MalformedDecomposition.
HeightFunction decode(const LineDecomposition& dec);

/// c_i(r): feasible structures with r jumps after vertex 2d+1 and
/// min(I u {2d+2}) = 2i. Throws IndexOutOfRange unless 1 <= i <= d+1.
BigCount count_structures(int n, int d, int r, int i);
/// b_i(r) = |{S = I}| for any such structure; zero when no structure exists.
BigCount count_fluct_words(int n, int d, int r, int i);

/// Number of jumps after vertex 2d+1.
int jumps_after_window(const LineJumpStructure& s);

/// Every feasible jump structure on P_{n,d}, in lexicographic order.
std::vector<LineJumpStructure> all_feasible_structures(int n, int d);

}  // namespace homwalk::line
