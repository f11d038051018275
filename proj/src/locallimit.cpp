#include "homwalk/locallimit.hpp"

#include <functional>

#include "homwalk/counting.hpp"

namespace homwalk::locallimit {

using words::Letter;
namespace mp = boost::multiprecision;

namespace {

bool up_side(Letter l) { return l == Letter::a || l == Letter::A; }

Letter mirror(Letter l) {
  switch (l) {
    case Letter::a: return Letter::b;
    case Letter::b: return Letter::a;
    case Letter::A: return Letter::B;
    case Letter::B: return Letter::A;
  }
  return l;
}

ChainState mirror(const ChainState& s) { return ChainState{mirror(s.letter), s.index}; }

// Row of an up-side state; the down side is its mirror image.
void fill_up_row(ChainLaw& law, const ChainState& s) {
  const int d = law.d;
  const HighReal& lam = law.lambda;
  auto& row = law.p[static_cast<std::size_t>(words::state_id(s, d))];
  const ChainState b1{Letter::b, 1};
  HighReal explicit_mass = 0;
  auto set = [&](const ChainState& to, const HighReal& v) {
    row[static_cast<std::size_t>(words::state_id(to, d))] = v;
    explicit_mass += v;
  };
  std::optional<ChainState> residual_target;
  if (s.letter == Letter::a) {
    set(b1, (lam - 1) / (mp::pow(lam, s.index) * (lam - 2) + lam));
    if (s.index == d) {
      set(ChainState{Letter::a, d}, 1 / lam);
      residual_target = ChainState{Letter::A, 0};
    } else {
      residual_target = ChainState{Letter::a, s.index + 1};
    }
  } else {
    set(b1, 1 / lam);
    if (d == 1) {
      set(ChainState{Letter::a, 1}, 1 / lam);
      residual_target = ChainState{Letter::A, 0};
    } else {
      residual_target = ChainState{Letter::a, 2};
    }
  }
  row[static_cast<std::size_t>(words::state_id(*residual_target, d))] = 1 - explicit_mass;
}

}  // namespace

HighReal ChainLaw::transition(const ChainState& from, const ChainState& to) const {
  return p[static_cast<std::size_t>(words::state_id(from, d))][static_cast<std::size_t>(words::state_id(to, d))];
}

HighReal ChainLaw::initial(const ChainState& s) const {
  return pi[static_cast<std::size_t>(words::state_id(s, d))];
}

ChainLaw build_chain(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidParameter, "local limit chain needs d >= 1");
  ChainLaw law;
  law.d = d;
  law.lambda = counting::lambda_of_d(d).lambda;
  const int ns = words::num_states(d);
  law.p.assign(static_cast<std::size_t>(ns), std::vector<HighReal>(static_cast<std::size_t>(ns), HighReal(0)));
  law.pi.assign(static_cast<std::size_t>(ns), HighReal(0));

  for (int id = 0; id < ns; ++id) {
    const ChainState s = words::state_from_id(id, d);
    if (up_side(s.letter)) fill_up_row(law, s);
  }
  for (int id = 0; id < ns; ++id) {
    const ChainState s = words::state_from_id(id, d);
    if (up_side(s.letter)) continue;
    const auto& src = law.p[static_cast<std::size_t>(words::state_id(mirror(s), d))];
    for (int to = 0; to < ns; ++to) {
      const ChainState t = mirror(words::state_from_id(to, d));
      law.p[static_cast<std::size_t>(id)][static_cast<std::size_t>(words::state_id(t, d))] =
          src[static_cast<std::size_t>(to)];
    }
  }

  const HighReal inv_sqrt = 1 / mp::sqrt(law.lambda);
  law.pi[static_cast<std::size_t>(words::state_id({Letter::a, d}, d))] = inv_sqrt / 2;
  law.pi[static_cast<std::size_t>(words::state_id({Letter::b, d}, d))] = inv_sqrt / 2;
  law.pi[static_cast<std::size_t>(words::state_id({Letter::A, 0}, d))] = (1 - inv_sqrt) / 2;
  law.pi[static_cast<std::size_t>(words::state_id({Letter::B, 0}, d))] = (1 - inv_sqrt) / 2;
  return law;
}

std::vector<HighReal> turn_probabilities(const ChainLaw& law) {
  std::vector<HighReal> out;
  for (int k = 1; k <= law.d; ++k) out.push_back(law.transition({Letter::a, k}, {Letter::b, 1}));
  return out;
}

namespace {

int draw(const std::vector<double>& weights, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = u(rng);
  int last = -1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    last = static_cast<int>(i);
    if (x < weights[i]) return last;
    x -= weights[i];
  }
  return last;
}

}  // namespace

ChainRun run_chain(const ChainLaw& law, int r, std::mt19937_64& rng) {
  if (r < 1) throw Error(ErrorCode::InvalidParameter, "prefix length must be >= 1");
  const int ns = law.num_states();
  std::vector<double> pi(static_cast<std::size_t>(ns));
  for (int i = 0; i < ns; ++i) pi[static_cast<std::size_t>(i)] = law.pi[static_cast<std::size_t>(i)].convert_to<double>();
  std::vector<std::vector<double>> p(static_cast<std::size_t>(ns), std::vector<double>(static_cast<std::size_t>(ns)));
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j)
      p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          law.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].convert_to<double>();

  ChainRun run;
  int state = draw(pi, rng);
  for (;;) {
    const ChainState s = words::state_from_id(state, law.d);
    run.states.push_back(s);
    run.word.push_back(s.letter);
    for (int step : words::letter_steps(s.letter)) run.steps.push_back(step);
    if (static_cast<int>(run.steps.size()) >= r) break;
    state = draw(p[static_cast<std::size_t>(state)], rng);
  }
  run.steps.resize(static_cast<std::size_t>(r));
  return run;
}

HeightFunction sample_prefix(const ChainLaw& law, int r, std::mt19937_64& rng) {
  const ChainRun run = run_chain(law, r, rng);
  return from_derivative(run.steps, GraphSpec::line(r, law.d));
}

HighReal word_probability(const ChainLaw& law, const words::Word& x) {
  if (x.empty()) return 1;
  ChainState s = words::initial_state(x.front(), law.d);
  HighReal prob = law.initial(s);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const auto nx = words::next_state(s, x[i], law.d);
    if (!nx) return 0;
    prob *= law.transition(s, *nx);
    s = *nx;
  }
  return prob;
}

HighReal exact_marginal(const ChainLaw& law, const HeightFunction& f) {
  if (!f.graph().is_line() || f.graph().d() != law.d)
    throw Error(ErrorCode::InvalidParameter, "marginal needs a segment function with the chain's d");
  const int r = f.graph().n();
  const words::Word x = words::L(f);
  if (words::weight(x) != r)
    throw Error(ErrorCode::WeightMismatch, "word of the prefix overhangs by one step; use prefix_probability");
  const auto state = words::final_state(x, law.d);
  if (!state) throw Error(ErrorCode::IllegalWord, "prefix word is not d-legal");
  const int m = words::streak_offset(*state);
  const HighReal& lam = law.lambda;
  return mp::pow(lam, 1 - HighReal(r) / 2) * (mp::pow(lam, m) * (lam - 2) + 1) / (mp::sqrt(lam) + 1) / 2;
}

HighReal prefix_probability(const ChainLaw& law, std::span<const int> prefix) {
  const int r = static_cast<int>(prefix.size());
  if (r == 0) return 1;
  std::vector<int> f(static_cast<std::size_t>(r + 1), 0);
  for (int k = 0; k < r; ++k) {
    const int s = prefix[static_cast<std::size_t>(k)];
    if (s != 1 && s != -1) throw Error(ErrorCode::InconsistentPrefix, "prefix steps must be +-1");
    f[static_cast<std::size_t>(k + 1)] = f[static_cast<std::size_t>(k)] + s;
  }
  if (find_violation(f, GraphSpec::line(r, law.d)))
    throw Error(ErrorCode::InconsistentPrefix, "prefix is not a homomorphism of the segment");

  // Expansions parse uniquely, so at most one letter matches at each point
  // except the last, which may overhang the prefix.
  HighReal total = 0;
  std::function<void(int, std::optional<ChainState>, const HighReal&)> extend =
      [&](int covered, std::optional<ChainState> s, const HighReal& prob) {
        if (covered >= r) {
          total += prob;
          return;
        }
        for (Letter l : words::kLetters) {
          const auto steps = words::letter_steps(l);
          bool match = true;
          for (std::size_t i = 0; i < steps.size() && covered + static_cast<int>(i) < r; ++i)
            if (steps[i] != prefix[static_cast<std::size_t>(covered) + i]) match = false;
          if (!match) continue;
          const auto nx = s ? words::next_state(*s, l, law.d) : words::initial_state(l, law.d);
          if (!nx) continue;
          const HighReal next = s ? HighReal(prob * law.transition(*s, *nx)) : law.initial(*nx);
          extend(covered + static_cast<int>(steps.size()), nx, next);
        }
      };
  extend(0, std::nullopt, HighReal(1));
  return total;
}

}  // namespace homwalk::locallimit
