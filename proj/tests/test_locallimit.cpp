#include <cmath>
#include <random>

#include "doctest.h"
#include "homwalk/counting.hpp"
#include "homwalk/locallimit.hpp"
#include "oracle.hpp"

using namespace homwalk;
using namespace homwalk::locallimit;
using words::Letter;

namespace {

double golden_sq() { return (3 + std::sqrt(5.0)) / 2; }

std::vector<int> steps_of(const std::vector<int>& f) {
  std::vector<int> s;
  for (std::size_t k = 1; k < f.size(); ++k) s.push_back(f[k] - f[k - 1]);
  return s;
}

}  // namespace

TEST_CASE("d = 1 entries") {
  const auto law = build_chain(1);
  const double lam = golden_sq();
  CHECK(std::abs(law.transition_d({Letter::a, 1}, {Letter::b, 1}) - 1 / lam) < 1e-13);
  CHECK(std::abs(law.transition_d({Letter::a, 1}, {Letter::b, 1}) - 0.381966) < 1e-6);
  CHECK(std::abs(law.transition_d({Letter::a, 1}, {Letter::A, 0}) - 0.236068) < 1e-6);
  CHECK(std::abs(law.initial_d({Letter::a, 1}) - 0.309017) < 1e-6);
  CHECK(std::abs(law.transition_d({Letter::A, 0}, {Letter::a, 1}) - 1 / lam) < 1e-13);
  CHECK(std::abs(law.transition_d({Letter::B, 0}, {Letter::a, 1}) - 1 / lam) < 1e-13);
}

TEST_CASE("rows, support and initial law") {
  for (int d = 1; d <= 8; ++d) {
    const auto law = build_chain(d);
    const int ns = law.num_states();
    HighReal pi_sum = 0;
    for (int i = 0; i < ns; ++i) {
      const auto s = words::state_from_id(i, d);
      HighReal row = 0;
      for (int j = 0; j < ns; ++j) {
        const auto t = words::state_from_id(j, d);
        const HighReal pij = law.transition(s, t);
        bool legal = false;
        for (Letter l : words::kLetters) {
          const auto nx = words::next_state(s, l, d);
          if (nx && *nx == t) legal = true;
        }
        CHECK(pij >= 0);
        CHECK((pij > 0) == legal);
        row += pij;
      }
      CHECK(boost::multiprecision::abs(row - 1) < HighReal("1e-12"));
      const HighReal pi = law.initial(s);
      const bool start = (s.letter == Letter::A || s.letter == Letter::B || s.index == d);
      CHECK((pi > 0) == start);
      pi_sum += pi;
    }
    CHECK(boost::multiprecision::abs(pi_sum - 1) < HighReal("1e-12"));
  }
}

TEST_CASE("turn probabilities decrease") {
  for (int d = 1; d <= 12; ++d) {
    const auto law = build_chain(d);
    const auto t = turn_probabilities(law);
    const HighReal& lam = law.lambda;
    CHECK(t.front() < HighReal(0.5));
    CHECK(boost::multiprecision::abs(t.front() - 1 / lam) < HighReal("1e-40"));
    for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] < t[k - 1]);
    CHECK(boost::multiprecision::abs(t.back() - (lam - 1) / (lam + boost::multiprecision::sqrt(lam))) < HighReal("1e-40"));
    CHECK(t.back() > 1 / (2 + boost::multiprecision::sqrt(HighReal(2))));
  }
}

TEST_CASE("sampled prefixes are homomorphisms") {
  std::mt19937_64 rng(3);
  for (int d = 1; d <= 5; ++d) {
    const auto law = build_chain(d);
    for (int trial = 0; trial < 2000; ++trial) {
      const int r = 1 + static_cast<int>(rng() % 60);
      const auto run = run_chain(law, r, rng);
      CHECK(words::is_d_legal(run.word, d));
      const auto f = sample_prefix(law, r, rng);
      CHECK_FALSE(find_violation(f.values(), GraphSpec::line(r, d)).has_value());
    }
  }
}

TEST_CASE("first-letter and f(2) frequencies") {
  const auto law = build_chain(1);
  std::mt19937_64 rng(2024);
  const int draws = 1000000;
  int first_a = 0, two = 0;
  for (int i = 0; i < draws; ++i) {
    const auto run = run_chain(law, 2, rng);
    if (run.word.front() == Letter::a) ++first_a;
    if (run.steps[0] + run.steps[1] == 2) ++two;
  }
  auto within = [&](int hits, double p) {
    const double sd = std::sqrt(p * (1 - p) / draws);
    return std::abs(static_cast<double>(hits) / draws - p) < 3 * sd;
  };
  CHECK(within(first_a, law.initial_d({Letter::a, 1})));
  const double p2 = prefix_probability(law, std::vector<int>{1, 1}).convert_to<double>();
  CHECK(std::abs(p2 - (1 - 1 / std::sqrt(golden_sq())) / 2) < 1e-12);
  CHECK(within(two, p2));
}

TEST_CASE("closed form marginal") {
  const auto law1 = build_chain(1);
  const auto f = validate({0, 1, 0}, GraphSpec::line(2, 1));
  const double v = exact_marginal(law1, f).convert_to<double>();
  CHECK(std::abs(v - 0.309017) < 1e-6);
  CHECK(std::abs(v - law1.initial_d({Letter::a, 1})) < 1e-14);
  try {
    exact_marginal(law1, validate({0, 1, 2}, GraphSpec::line(2, 1)));
    FAIL("expected WeightMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WeightMismatch);
  }

  // Against the product of chain probabilities along the word, and total mass.
  for (int d = 1; d <= 3; ++d) {
    const auto law = build_chain(d);
    for (int r = 1; r <= 12; ++r) {
      HighReal all = 0, exact_part = 0, overhang_part = 0;
      for (const auto& vals : oracle::homs(false, r, d)) {
        const auto g = validate(vals, GraphSpec::line(r, d));
        const auto x = words::L(g);
        const HighReal pp = prefix_probability(law, steps_of(vals));
        all += pp;
        if (words::weight(x) == r) {
          const HighReal em = exact_marginal(law, g);
          CHECK(boost::multiprecision::abs(em - word_probability(law, x)) < HighReal("1e-40"));
          CHECK(boost::multiprecision::abs(em - pp) < HighReal("1e-40"));
          exact_part += em;
        } else {
          overhang_part += pp;
        }
      }
      CHECK(boost::multiprecision::abs(all - 1) < HighReal("1e-40"));
      CHECK(boost::multiprecision::abs(exact_part - (1 - overhang_part)) < HighReal("1e-40"));
    }
  }
  CHECK_THROWS_AS(prefix_probability(law1, std::vector<int>{1, 1, 1}), Error);
}

TEST_CASE("finite-n marginals approach the limit") {
  for (int d = 1; d <= 2; ++d) {
    const auto law = build_chain(d);
    const counting::CompletionTable table(d, 400);
    const std::vector<int> a{1, -1};
    const oracle::WideReal pi_a = 1 / boost::multiprecision::sqrt(oracle::wide_lambda(d)) / 2;
    CHECK(boost::multiprecision::abs(HighReal(pi_a) - law.initial({Letter::a, d})) < HighReal("1e-100"));
    oracle::WideReal prev = 1;
    for (int n : {50, 100, 200, 400}) {
      const oracle::WideReal gap = boost::multiprecision::abs(oracle::wide(counting::prefix_marginal(table, n, a).probability) - pi_a);
      CHECK(gap < prev);
      CHECK(gap > 0);
      prev = gap;
    }
    CHECK(prev < 1e-3);
  }
  const auto law = build_chain(1);
  const counting::CompletionTable table(1, 400);
  for (const auto& vals : oracle::homs(false, 6, 1)) {
    const auto steps = steps_of(vals);
    const double lim = prefix_probability(law, steps).convert_to<double>();
    CHECK(std::abs(to_double(counting::prefix_marginal(table, 200, steps).probability) - lim) < 1e-3);
    CHECK(std::abs(to_double(counting::prefix_marginal(table, 400, steps).probability) - lim) < 1e-6);
  }
}
