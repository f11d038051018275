#include "homwalk/refdist.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "homwalk/core.hpp"
#include "homwalk/counting.hpp"

namespace homwalk::refdist {

namespace mp = boost::multiprecision;

double PMF::at(int k) const {
  auto it = probs.find(k);
  return it == probs.end() ? 0.0 : it->second;
}

double PMF::total() const {
  double s = 0;
  for (const auto& [k, p] : probs) s += p;
  return s;
}

double PMF::mean() const {
  double s = 0;
  for (const auto& [k, p] : probs) s += k * p;
  return s;
}

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0) || !std::isfinite(x)) throw Error(ErrorCode::InvalidParameter, std::string(what) + " must be positive");
}

void require_truncation(double t) {
  if (!(t > 0 && t < 1)) throw Error(ErrorCode::InvalidParameter, "truncation bound must lie in (0, 1)");
}

// Adds weights w(r)/z for r = 0, 1, ... until the unseen mass drops below the
// bound. Terms must eventually decrease.
template <typename Weight>
PMF from_weights(Weight w, const HighReal& z, double truncation) {
  PMF out;
  HighReal seen = 0;
  for (int r = 0;; ++r) {
    const HighReal p = w(r) / z;
    seen += p;
    out.probs[r] = p.convert_to<double>();
    const HighReal rest = 1 - seen;
    if (rest < truncation && r > 0) {
      out.truncation_mass = rest > 0 ? rest.convert_to<double>() : 0.0;
      return out;
    }
    if (r > 100000) throw Error(ErrorCode::TooLarge, "distribution tail too heavy to truncate");
  }
}

Rational exact_ratio(const BigCount& num, const BigCount& den) { return Rational(num, den); }

}  // namespace

PMF parity_biased_poisson(double lambda, double alpha, double truncation) {
  require_positive(lambda, "lambda");
  require_positive(alpha, "alpha");
  require_truncation(truncation);
  const HighReal lam = lambda;
  const HighReal a = alpha;
  const HighReal z = a * mp::cosh(lam) + mp::sinh(lam);
  HighReal term = 1;  // lambda^r / r!
  int at = 0;
  auto w = [&](int r) {
    while (at < r) {
      ++at;
      term = term * lam / at;
    }
    return r % 2 == 0 ? HighReal(a * term) : term;
  };
  return from_weights(w, z, truncation);
}

PMF parity_biased_poisson_mixture(double lambda, double alpha, double truncation) {
  require_positive(lambda, "lambda");
  require_positive(alpha, "alpha");
  require_truncation(truncation);
  const HighReal lam = lambda;
  const HighReal a = alpha;
  const HighReal th = mp::tanh(lam);
  const HighReal w_even = a / (a + th);
  const HighReal w_odd = th / (a + th);
  const HighReal c = mp::cosh(lam);
  const HighReal s = mp::sinh(lam);
  auto w = [&](int r) {
    const HighReal base = mp::pow(lam, r) / mp::tgamma(HighReal(r + 1));
    return r % 2 == 0 ? HighReal(w_even * base / c) : HighReal(w_odd * base / s);
  };
  return from_weights(w, HighReal(1), truncation);
}

PMF poisson(double lambda, double truncation) { return parity_biased_poisson(lambda, 1.0, truncation); }

namespace {

HighReal equality_z(const HighReal& lp) {
  HighReal z = 0;
  HighReal term = 1;
  for (int k = 0;; ++k) {
    if (k > 0) term = term * lp * lp / (HighReal(k) * k);
    z += term;
    if (k > 2 * lp && term < z * HighReal("1e-60")) return z;
  }
}

}  // namespace

double equality_normalizer(double lambda_prime) {
  require_positive(lambda_prime, "lambda'");
  return equality_z(HighReal(lambda_prime)).convert_to<double>();
}

PMF equality_biased_poisson(double lambda_prime, double truncation) {
  require_positive(lambda_prime, "lambda'");
  require_truncation(truncation);
  const HighReal lp = lambda_prime;
  const HighReal z = equality_z(lp);
  HighReal term = 1;
  int at = 0;
  auto w = [&](int k) {
    while (at < k) {
      ++at;
      term = term * lp * lp / (HighReal(at) * at);
    }
    return term;
  };
  return from_weights(w, z, truncation);
}

std::map<int, Rational> srw_range_exact(int k) {
  if (k < 0) throw Error(ErrorCode::InvalidParameter, "walk length must be >= 0");
  // State: (position - min, max - min).
  const int sz = k + 1;
  std::vector<BigCount> cur(static_cast<std::size_t>(sz * sz)), next(cur.size());
  auto at = [sz](int pos, int width) { return static_cast<std::size_t>(pos * sz + width); };
  cur[at(0, 0)] = 1;
  for (int step = 0; step < k; ++step) {
    for (auto& x : next) x = 0;
    for (int width = 0; width <= step; ++width)
      for (int pos = 0; pos <= width; ++pos) {
        const BigCount& c = cur[at(pos, width)];
        if (c == 0) continue;
        if (pos == width)
          next[at(pos + 1, width + 1)] += c;
        else
          next[at(pos + 1, width)] += c;
        if (pos == 0)
          next[at(0, width + 1)] += c;
        else
          next[at(pos - 1, width)] += c;
      }
    std::swap(cur, next);
  }
  std::map<int, BigCount> by_range;
  for (int width = 0; width <= k; ++width)
    for (int pos = 0; pos <= width; ++pos)
      if (cur[at(pos, width)] != 0) by_range[width + 1] += cur[at(pos, width)];
  std::map<int, Rational> out;
  const BigCount all = pow2(k);
  for (const auto& [r, c] : by_range) out[r] = exact_ratio(c, all);
  return out;
}

std::map<int, Rational> bridge_range_exact(int two_n) {
  if (two_n < 0 || two_n % 2 != 0) throw Error(ErrorCode::InvalidParameter, "bridge length must be even and >= 0");
  const int k = two_n;
  // State: (position - min, start - min, max - min).
  const int sz = k / 2 + 1;
  std::map<int, BigCount> by_range;
  std::vector<BigCount> cur(static_cast<std::size_t>(sz * sz * sz)), next(cur.size());
  auto at = [sz](int pos, int start, int width) {
    return static_cast<std::size_t>((pos * sz + start) * sz + width);
  };
  cur[at(0, 0, 0)] = 1;
  for (int step = 0; step < k; ++step) {
    for (auto& x : next) x = 0;
    const int remaining = k - step - 1;
    for (int width = 0; width < sz; ++width)
      for (int start = 0; start <= width; ++start)
        for (int pos = 0; pos <= width; ++pos) {
          const BigCount& c = cur[at(pos, start, width)];
          if (c == 0) continue;
          // Up.
          {
            const int np = pos + 1;
            const int nw = std::max(width, np);
            if (nw < sz && std::abs(np - start) <= remaining) next[at(np, start, nw)] += c;
          }
          // Down.
          if (pos == 0) {
            if (width + 1 < sz && std::abs(0 - (start + 1)) <= remaining) next[at(0, start + 1, width + 1)] += c;
          } else if (std::abs(pos - 1 - start) <= remaining) {
            next[at(pos - 1, start, width)] += c;
          }
        }
    std::swap(cur, next);
  }
  BigCount all = 0;
  for (int width = 0; width < sz; ++width)
    for (int start = 0; start <= width; ++start) {
      const BigCount& c = cur[at(start, start, width)];
      if (c == 0) continue;
      by_range[width + 1] += c;
      all += c;
    }
  std::map<int, Rational> out;
  for (const auto& [r, c] : by_range) out[r] = exact_ratio(c, all);
  return out;
}

namespace {

PMF to_pmf(const std::map<int, Rational>& exact) {
  PMF out;
  for (const auto& [r, q] : exact) out.probs[r] = to_double(q);
  return out;
}

PMF mix(const PMF& weights, const std::function<std::map<int, Rational>(int)>& law) {
  PMF out;
  out.truncation_mass = weights.truncation_mass;
  std::map<int, HighReal> acc;
  for (const auto& [k, w] : weights.probs) {
    if (w == 0) continue;
    for (const auto& [r, q] : law(k))
      acc[r] += HighReal(w) * HighReal(mp::numerator(q)) / HighReal(mp::denominator(q));
  }
  for (const auto& [r, p] : acc) out.probs[r] = p.convert_to<double>();
  return out;
}

}  // namespace

PMF srw_range_pmf(int k) { return to_pmf(srw_range_exact(k)); }
PMF bridge_range_pmf(int two_n) { return to_pmf(bridge_range_exact(two_n)); }

double stopped_poisson_rate(double lambda) { return lambda / (2 * std::sqrt(2.0)); }

double stopped_parity_bias(int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidParameter, "sign must be +1 or -1");
  const double b = 3 / (2 * std::sqrt(2.0));
  return sign == 1 ? b : 1 / b;
}

double torus_lambda_prime(double lambda) { return lambda / (4 * std::sqrt(2.0)); }

PMF stopped_range_pmf(double lambda, int sign, double truncation) {
  require_positive(lambda, "lambda");
  const PMF n_law = parity_biased_poisson(stopped_poisson_rate(lambda), stopped_parity_bias(sign), truncation);
  return mix(n_law, [](int k) { return srw_range_exact(k); });
}

PMF bridge_mixture_range_pmf(double lambda, double truncation) {
  require_positive(lambda, "lambda");
  const PMF n_law = equality_biased_poisson(torus_lambda_prime(lambda), truncation);
  return mix(n_law, [](int k) { return bridge_range_exact(2 * k); });
}

PMF shift(const PMF& p, int by) {
  PMF out;
  out.truncation_mass = p.truncation_mass;
  for (const auto& [k, v] : p.probs) out.probs[k + by] = v;
  return out;
}

PMF empirical(const std::map<int, std::uint64_t>& histogram) {
  std::uint64_t total = 0;
  for (const auto& [k, c] : histogram) total += c;
  if (total == 0) throw Error(ErrorCode::InvalidParameter, "empty sample");
  PMF out;
  for (const auto& [k, c] : histogram) out.probs[k] = static_cast<double>(c) / static_cast<double>(total);
  return out;
}

PMF empirical(const std::vector<int>& samples) {
  std::map<int, std::uint64_t> h;
  for (int s : samples) ++h[s];
  return empirical(h);
}

double tv_distance(const PMF& p, const PMF& q) {
  double s = 0;
  for (const auto& [k, v] : p.probs) s += std::abs(v - q.at(k));
  for (const auto& [k, v] : q.probs)
    if (!p.probs.count(k)) s += std::abs(v);
  return std::min(1.0, 0.5 * s + 0.5 * (p.truncation_mass + q.truncation_mass));
}

ChiSquared chi_squared(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw Error(ErrorCode::InvalidParameter, "observed and expected must have the same nonzero length");
  double n = 0;
  for (auto o : observed) n += static_cast<double>(o);
  ChiSquared out;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected[i] * n;
    if (e <= 0) {
      if (observed[i] > 0) {
        out.statistic = std::numeric_limits<double>::infinity();
        out.p_value = 0;
        return out;
      }
      continue;
    }
    const double diff = static_cast<double>(observed[i]) - e;
    out.statistic += diff * diff / e;
    ++cells;
  }
  out.dof = cells - 1;
  out.p_value = out.dof > 0 ? boost::math::gamma_q(out.dof / 2.0, out.statistic / 2.0) : 1.0;
  return out;
}

HighReal sigma_prime_sq(int d) { return counting::lambda_of_d(d).sigma_prime_sq; }

double sigma_prime(int d) { return mp::sqrt(sigma_prime_sq(d)).convert_to<double>(); }

void write_csv(std::ostream& out, const PMF& p) {
  const auto old = out.precision(17);
  out << "value,probability\n";
  for (const auto& [k, v] : p.probs) out << k << ',' << v << '\n';
  out << "#truncation_mass=" << p.truncation_mass << '\n';
  out.precision(old);
}

}  // namespace homwalk::refdist
