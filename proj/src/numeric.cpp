#include "homwalk/numeric.hpp"

namespace homwalk {

BigCount binomial(long long top, long long k) {
  if (k < 0 || top < k) return 0;
  BigCount out = 1;
  // Multiplicative form keeps every intermediate an exact integer.
  for (long long j = 1; j <= k; ++j) {
    out *= (top - k + j);
    out /= j;
  }
  return out;
}

BigCount pow2(long long e) {
  BigCount out = 1;
  out <<= static_cast<unsigned>(e);
  return out;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

double to_double(const BigCount& a, const BigCount& b) { return to_double(Rational(a, b)); }

}  // namespace homwalk
