#pragma once

// Words over {a, b, A, B}: a = (1,-1), b = (-1,1), A = (1,1,-1), B = (-1,-1,1).
// A homomorphism on the segment is read left to right as such a word.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homwalk/core.hpp"

namespace homwalk::words {

enum class Letter : std::uint8_t { a = 0, b = 1, A = 2, B = 3 };
using Word = std::vector<Letter>;

inline constexpr Letter kLetters[4] = {Letter::a, Letter::b, Letter::A, Letter::B};

int letter_weight(Letter l);
std::span<const int> letter_steps(Letter l);
char letter_char(Letter l);

int weight(const Word& x);

/// T: greedy left-to-right parse. Throws NotInD on a triple repeat or a
/// step other than +-1.
Word encode_word(std::span<const int> steps);
/// T': concatenated step sequences.
std::vector<int> expand(const Word& x);

bool is_d_legal(const Word& x, int d);

/// L_n = T o D_n.
Word L(const HeightFunction& f);
/// Inverse of L_n on Omega_{n,d}. Throws IllegalWord.
HeightFunction L_inverse(const Word& x, int n, int d);

std::string to_text(const Word& x);
/// Throws InvalidParameter on characters outside "abAB".
Word from_text(std::string_view text);

/// Every d-legal word of weight n or n+1, in lexicographic letter order.
std::vector<Word> legal_words(int n, int d);

/// A state of the streak automaton: a_k / b_k (k in 1..d) or A / B.
struct ChainState {
  Letter letter = Letter::a;
  int index = 0;  // streak length for a/b, 0 for A/B
  bool operator==(const ChainState&) const = default;
};

int num_states(int d);
/// a_1..a_d -> 0..d-1, b_1..b_d -> d..2d-1, A -> 2d, B -> 2d+1.
int state_id(const ChainState& s, int d);
ChainState state_from_id(int id, int d);
std::string state_name(const ChainState& s);

ChainState initial_state(Letter l, int d);
/// The state after appending l, or nullopt if that breaks legality.
std::optional<ChainState> next_state(const ChainState& s, Letter l, int d);
/// Final state of a non-empty word; nullopt if the word is not d-legal.
std::optional<ChainState> final_state(const Word& x, int d);
/// i-1 for a_i / b_i, 0 for A / B.
int streak_offset(const ChainState& s);

}  // namespace homwalk::words
