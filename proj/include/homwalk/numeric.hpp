#pragma once

// Exact integers/rationals (GMP) and a high-precision real (MPFR) shared by
// the counting, local-limit and reference-distribution code.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace homwalk {

using BigCount = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
/// ~160 decimal digits.
using HighReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<160>>;

/// binom(top, k); zero when k < 0 or top < k (including negative top).
BigCount binomial(long long top, long long k);

/// 2^e for e >= 0.
BigCount pow2(long long e);

double to_double(const Rational& q);
double to_double(const BigCount& a, const BigCount& b);

}  // namespace homwalk
