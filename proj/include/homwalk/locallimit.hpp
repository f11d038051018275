#pragma once

// The Markov chain on streak states whose letter sequence, read through the
// word bijection, is the local limit f_inf of a uniform homomorphism of P_{n,d}.

#include <random>
#include <span>
#include <vector>

#include "homwalk/core.hpp"
#include "homwalk/numeric.hpp"
#include "homwalk/words.hpp"

namespace homwalk::locallimit {

using words::ChainState;

struct ChainLaw {
  int d = 1;
  HighReal lambda;
  std::vector<std::vector<HighReal>> p;  // [from id][to id]
  std::vector<HighReal> pi;              // by state id

  int num_states() const { return static_cast<int>(pi.size()); }
  HighReal transition(const ChainState& from, const ChainState& to) const;
  HighReal initial(const ChainState& s) const;
  double transition_d(const ChainState& from, const ChainState& to) const {
    return transition(from, to).convert_to<double>();
  }
  double initial_d(const ChainState& s) const { return initial(s).convert_to<double>(); }
};

ChainLaw build_chain(int d);

/// p(a_k, b_1) for k = 1..d.
std::vector<HighReal> turn_probabilities(const ChainLaw& law);

/// Runs the chain until the word covers r steps; returns the first r steps
/// of the expansion together with the word.
struct ChainRun {
  words::Word word;
  std::vector<ChainState> states;
  std::vector<int> steps;  // exactly r entries
};
ChainRun run_chain(const ChainLaw& law, int r, std::mt19937_64& rng);

/// f_inf restricted to {0..r} as a homomorphism of P_{r,d}.
HeightFunction sample_prefix(const ChainLaw& law, int r, std::mt19937_64& rng);

/// pi(s_1) p(s_1, s_2) ... along the unique state path of x; zero if x is
/// not d-legal.
HighReal word_probability(const ChainLaw& law, const words::Word& x);

/// Closed form for Pr(f_inf on {0..r} = f) when L_r(f) has weight r.
/// Throws WeightMismatch when the word overhangs by one step.
HighReal exact_marginal(const ChainLaw& law, const HeightFunction& f);

/// Pr(first steps of f_inf = prefix), any prefix: sums word_probability
/// over the minimal words whose expansion starts with prefix.
/// Throws InconsistentPrefix if prefix is not a homomorphism of P_{r,d}.
HighReal prefix_probability(const ChainLaw& law, std::span<const int> prefix);

}  // namespace homwalk::locallimit
