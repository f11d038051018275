#pragma once

// Limit laws for the range in the critical regime and the statistics used to
// compare samples against them.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "homwalk/numeric.hpp"

namespace homwalk::refdist {

inline constexpr double kDefaultTruncation = 1e-10;

/// Probabilities on a finite support plus the mass that was cut off.
struct PMF {
  std::map<int, double> probs;
  double truncation_mass = 0;

  double at(int k) const;
  double total() const;  // sum of probs (without truncation_mass)
  double mean() const;
};

/// pmf(r) proportional to alpha(r) lambda^r / r!, alpha(r) = alpha for even r
/// and 1 for odd r.
PMF parity_biased_poisson(double lambda, double alpha, double truncation = kDefaultTruncation);
/// The same law as the tanh-weighted mixture of Poisson conditioned even / odd.
PMF parity_biased_poisson_mixture(double lambda, double alpha, double truncation = kDefaultTruncation);
PMF poisson(double lambda, double truncation = kDefaultTruncation);

/// pmf(k) proportional to lambda'^{2k} / (k!)^2: X given X = Y for i.i.d.
/// Poisson(lambda').
PMF equality_biased_poisson(double lambda_prime, double truncation = kDefaultTruncation);
/// Z(lambda') = sum_k lambda'^{2k} / (k!)^2.
double equality_normalizer(double lambda_prime);

/// Law of |Rng(S_k)| for a k-step simple random walk, exactly.
std::map<int, Rational> srw_range_exact(int k);
PMF srw_range_pmf(int k);
/// Law of |Rng(B)| for a uniform bridge of length two_n (even), exactly.
std::map<int, Rational> bridge_range_exact(int two_n);
PMF bridge_range_pmf(int two_n);

/// Parameters of the jump-count law on the segment: N^+ for even n (sign = +1),
/// N^- for odd n (sign = -1).
double stopped_poisson_rate(double lambda);
double stopped_parity_bias(int sign);

/// Law of |Rng(S_N)| with N ~ parity-biased Poisson for the given sign.
PMF stopped_range_pmf(double lambda, int sign, double truncation = kDefaultTruncation);
/// Law of |Rng(B^{2N})| with N ~ equality_biased_poisson(lambda / (4 sqrt 2)).
PMF bridge_mixture_range_pmf(double lambda, double truncation = kDefaultTruncation);
double torus_lambda_prime(double lambda);

PMF shift(const PMF& p, int by);

/// Empirical law of integer samples.
PMF empirical(const std::vector<int>& samples);
PMF empirical(const std::map<int, std::uint64_t>& histogram);

/// 1/2 sum |p - q| + 1/2 (p.truncation_mass + q.truncation_mass).
double tv_distance(const PMF& p, const PMF& q);

struct ChiSquared {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
};
/// Pearson test of observed counts against expected probabilities (same
/// order); cells with zero expected mass must be empty.
ChiSquared chi_squared(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected);

/// sigma'(d)^2 = (lambda-2)(lambda-1) / (4 + (2d+1)(lambda-2)).
HighReal sigma_prime_sq(int d);
double sigma_prime(int d);

/// value,probability rows and a trailing "#truncation_mass=..." line.
void write_csv(std::ostream& out, const PMF& p);

}  // namespace homwalk::refdist
