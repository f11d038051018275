#include "homwalk/words.hpp"

#include <array>
#include <functional>

namespace homwalk::words {

namespace {

constexpr std::array<int, 2> kStepsA2 = {1, -1};
constexpr std::array<int, 2> kStepsB2 = {-1, 1};
constexpr std::array<int, 3> kStepsA3 = {1, 1, -1};
constexpr std::array<int, 3> kStepsB3 = {-1, -1, 1};

bool is_up(Letter l) { return l == Letter::a || l == Letter::A; }

}  // namespace

int letter_weight(Letter l) { return (l == Letter::a || l == Letter::b) ? 2 : 3; }

std::span<const int> letter_steps(Letter l) {
  switch (l) {
    case Letter::a: return kStepsA2;
    case Letter::b: return kStepsB2;
    case Letter::A: return kStepsA3;
    case Letter::B: return kStepsB3;
  }
  return {};
}

char letter_char(Letter l) {
  static constexpr char chars[4] = {'a', 'b', 'A', 'B'};
  return chars[static_cast<int>(l)];
}

int weight(const Word& x) {
  int w = 0;
  for (Letter l : x) w += letter_weight(l);
  return w;
}

Word encode_word(std::span<const int> steps) {
  for (int s : steps)
    if (s != 1 && s != -1) throw Error(ErrorCode::NotInD, "steps must be +-1");
  if (!in_D(steps)) throw Error(ErrorCode::NotInD, "step sequence contains three equal steps in a row");
  Word out;
  std::size_t p = 0;
  while (p < steps.size()) {
    const int s = steps[p];
    const Letter single = s == 1 ? Letter::a : Letter::b;
    const Letter triple = s == 1 ? Letter::A : Letter::B;
    if (p + 1 == steps.size() || steps[p + 1] != s) {
      out.push_back(single);
      p += 2;
    } else {
      out.push_back(triple);
      p += 3;
    }
  }
  return out;
}

std::vector<int> expand(const Word& x) {
  std::vector<int> out;
  for (Letter l : x)
    for (int s : letter_steps(l)) out.push_back(s);
  return out;
}

bool is_d_legal(const Word& x, int d) {
  const int len = static_cast<int>(x.size());
  for (int m = 1; m <= len; ++m) {
    const Letter cur = x[static_cast<std::size_t>(m - 1)];
    if (cur != Letter::A && cur != Letter::B) continue;
    const Letter small = cur == Letter::A ? Letter::a : Letter::b;
    for (int i = 1; i <= d - 1 && i < m; ++i)
      if (x[static_cast<std::size_t>(m - i - 1)] != small) return false;
    if (m > d) {
      const Letter back = x[static_cast<std::size_t>(m - d - 1)];
      if (back != small && back != cur) return false;
    }
  }
  return true;
}

Word L(const HeightFunction& f) {
  if (!f.graph().is_line()) throw Error(ErrorCode::InvalidParameter, "word encoding needs a line homomorphism");
  return encode_word(derivative(f));
}

HeightFunction L_inverse(const Word& x, int n, int d) {
  const int w = weight(x);
  if (w != n && w != n + 1)
    throw Error(ErrorCode::IllegalWord, "word weight " + std::to_string(w) + " is not n or n+1");
  if (!is_d_legal(x, d)) throw Error(ErrorCode::IllegalWord, to_text(x) + " is not " + std::to_string(d) + "-legal");
  std::vector<int> steps = expand(x);
  steps.resize(static_cast<std::size_t>(n));
  try {
    return from_derivative(steps, GraphSpec::line(n, d));
  } catch (const Error& e) {
    throw Error(ErrorCode::IllegalWord, std::string("word does not decode: ") + e.what());
  }
}

std::string to_text(const Word& x) {
  std::string out;
  for (Letter l : x) out.push_back(letter_char(l));
  return out;
}

Word from_text(std::string_view text) {
  Word out;
  for (char c : text) {
    switch (c) {
      case 'a': out.push_back(Letter::a); break;
      case 'b': out.push_back(Letter::b); break;
      case 'A': out.push_back(Letter::A); break;
      case 'B': out.push_back(Letter::B); break;
      default: throw Error(ErrorCode::InvalidParameter, std::string("unknown letter '") + c + "'");
    }
  }
  return out;
}

std::vector<Word> legal_words(int n, int d) {
  std::vector<Word> out;
  Word cur;
  std::function<void(int)> rec = [&](int w) {
    if (w == n || w == n + 1) {
      if (is_d_legal(cur, d)) out.push_back(cur);
      return;
    }
    if (w > n) return;
    for (Letter l : kLetters) {
      cur.push_back(l);
      rec(w + letter_weight(l));
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

int num_states(int d) { return 2 * d + 2; }

int state_id(const ChainState& s, int d) {
  switch (s.letter) {
    case Letter::a: return s.index - 1;
    case Letter::b: return d + s.index - 1;
    case Letter::A: return 2 * d;
    case Letter::B: return 2 * d + 1;
  }
  return -1;
}

ChainState state_from_id(int id, int d) {
  if (id < d) return {Letter::a, id + 1};
  if (id < 2 * d) return {Letter::b, id - d + 1};
  return {id == 2 * d ? Letter::A : Letter::B, 0};
}

std::string state_name(const ChainState& s) {
  std::string out(1, letter_char(s.letter));
  if (s.index > 0) out += std::to_string(s.index);
  return out;
}

ChainState initial_state(Letter l, int d) {
  if (l == Letter::a || l == Letter::b) return {l, d};
  return {l, 0};
}

std::optional<ChainState> next_state(const ChainState& s, Letter l, int d) {
  const bool up = is_up(l);
  const Letter small = up ? Letter::a : Letter::b;
  const Letter big = up ? Letter::A : Letter::B;
  const bool same_side = is_up(s.letter) == up;
  if (l == small) {
    if (!same_side) return ChainState{small, 1};
    if (s.letter == big) return ChainState{small, d >= 2 ? 2 : 1};
    return ChainState{small, std::min(s.index + 1, d)};
  }
  // A jump needs a full streak on its own side, or d = 1 right after a jump.
  if (same_side && ((s.letter == small && s.index == d) || (s.letter == big && d == 1))) return ChainState{big, 0};
  return std::nullopt;
}

std::optional<ChainState> final_state(const Word& x, int d) {
  if (x.empty()) return std::nullopt;
  ChainState s = initial_state(x.front(), d);
  for (std::size_t i = 1; i < x.size(); ++i) {
    auto nx = next_state(s, x[i], d);
    if (!nx) return std::nullopt;
    s = *nx;
  }
  return s;
}

int streak_offset(const ChainState& s) { return s.index > 0 ? s.index - 1 : 0; }

}  // namespace homwalk::words
