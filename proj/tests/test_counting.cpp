#include <cmath>
#include <map>

#include "doctest.h"
#include "homwalk/counting.hpp"
#include "oracle.hpp"

using namespace homwalk;
using namespace homwalk::counting;

TEST_CASE("small c values") {
  CHECK(c_recursive(0, 0, 1) == 1);
  CHECK(c_recursive(1, 0, 1) == 2);
  CHECK(c_recursive(2, 0, 1) == 3);
}

TEST_CASE("recursion agrees with direct word counts") {
  for (int d = 1; d <= 3; ++d) {
    const auto table = c_table(14, d);
    for (int n = 0; n <= 14; ++n)
      for (int k = 0; k < d; ++k) CHECK(table[n][k] == c_from_words(n, k, d));
  }
}

TEST_CASE("line counts") {
  CHECK(hom_count_line(3, 1) == 6);
  CHECK(hom_count_line(4, 1) == 10);
  for (int n = 1; n <= 8; ++n) CHECK(hom_count_line(n, 1) == 2 * oracle::fib(n + 1));
  for (int d = 1; d <= 3; ++d) {
    const CompletionTable table(d, 18);
    for (int n = 1; n <= 18; ++n) {
      const BigCount want = static_cast<unsigned long>(enumerate(GraphSpec::line(n, d)).size());
      CHECK(hom_count_line(n, d) == want);
      CHECK(table.total(n) == want);
    }
  }
}

TEST_CASE("completion table matches the recursion at large n") {
  for (int d = 1; d <= 4; ++d) {
    const CompletionTable table(d, 600);
    for (int n : {100, 301, 600}) CHECK(table.total(n) == hom_count_line(n, d));
  }
}

TEST_CASE("torus counts by enumeration") {
  CHECK(hom_count_torus(4, 1) == 6);
  CHECK(hom_count_torus(12, 1) == static_cast<unsigned long>(oracle::homs(true, 12, 1).size()));
  try {
    hom_count_torus(40, 1);
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
}

TEST_CASE("lambda") {
  const auto& l1 = lambda_of_d(1);
  CHECK(std::abs(l1.lambda_d() - (3 + std::sqrt(5.0)) / 2) < 1e-14);
  HighReal golden_sq = (3 + boost::multiprecision::sqrt(HighReal(5))) / 2;
  CHECK(boost::multiprecision::abs(l1.lambda - golden_sq) < HighReal("1e-100"));
  double prev = 0;
  for (int d = 1; d <= 40; ++d) {
    const auto& l = lambda_of_d(d);
    CHECK(l.residual() < HighReal("1e-12"));
    CHECK(l.lambda > 2);
    CHECK(l.lambda <= 3);
    const double scaled = ((l.lambda - 2) * boost::multiprecision::pow(HighReal(2), HighReal(d) - HighReal(0.5))).convert_to<double>();
    CHECK(scaled > 0);
    CHECK(scaled <= 1);
    // Dips from d = 1 to d = 2, increasing afterwards.
    if (d == 2) CHECK(scaled < prev);
    if (d > 2) CHECK(scaled > prev);
    prev = scaled;
    const double lam = l.lambda_d();
    CHECK(std::abs(l.sigma_prime_sq.convert_to<double>() - (lam - 2) * (lam - 1) / (4 + (2 * d + 1) * (lam - 2))) < 1e-12);
  }
  const double s30 = ((lambda_of_d(30).lambda - 2) * boost::multiprecision::pow(HighReal(2), HighReal(29.5))).convert_to<double>();
  CHECK(s30 >= 0.99);
  CHECK(s30 <= 1.0);
}

TEST_CASE("growth ratio settles") {
  const auto& l = lambda_of_d(1);
  auto ratio = [&](int n) {
    HighReal c(hom_count_line(n, 1).str());
    return (c / boost::multiprecision::pow(l.lambda, HighReal(n) / 2)).convert_to<double>();
  };
  const double r198 = ratio(198), r200 = ratio(200);
  CHECK(std::abs(r200 - r198) / r200 < 5e-5);
}

TEST_CASE("prefix marginals") {
  const auto empty = prefix_marginal(10, 1, std::vector<int>{});
  CHECK(empty.count == hom_count_line(10, 1));
  CHECK(empty.probability == 1);
  const auto pa = prefix_marginal(10, 1, std::vector<int>{1, -1});
  CHECK(pa.count == c_recursive(8, 0, 1));
  CHECK(pa.probability == Rational(c_recursive(8, 0, 1), hom_count_line(10, 1)));
  try {
    prefix_marginal(10, 1, std::vector<int>{1, 1, 1});
    FAIL("expected InconsistentPrefix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentPrefix);
  }
  CHECK_THROWS_AS(prefix_marginal(3, 1, std::vector<int>{1, -1, 1, -1}), Error);

  // Against brute force: every prefix of every length.
  for (int d = 1; d <= 3; ++d) {
    for (int n : {7, 12}) {
      const auto all = oracle::homs(false, n, d);
      const CompletionTable table(d, n);
      for (int r = 1; r <= n; ++r) {
        std::map<std::vector<int>, long> counts;
        for (const auto& f : all) {
          std::vector<int> steps;
          for (int k = 1; k <= r; ++k) steps.push_back(f[k] - f[k - 1]);
          counts[steps]++;
        }
        for (const auto& [p, c] : counts) {
          CHECK(prefix_marginal(table, n, p).count == c);
          if (r < n) {
            // The two one-step extensions partition the prefix.
            BigCount sum = 0;
            for (int s : {-1, 1}) {
              auto q = p;
              q.push_back(s);
              try {
                sum += prefix_marginal(table, n, q).count;
              } catch (const Error&) {
              }
            }
            CHECK(sum == c);
          }
        }
      }
    }
  }
}
