#include "homwalk/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <boost/multiprecision/mpfr.hpp>

#include "homwalk/core.hpp"
#include "homwalk/counting.hpp"
#include "homwalk/line.hpp"
#include "homwalk/locallimit.hpp"
#include "homwalk/parallel.hpp"
#include "homwalk/refdist.hpp"
#include "homwalk/sampling.hpp"
#include "homwalk/torus.hpp"
#include "homwalk/words.hpp"

namespace homwalk::verify {

namespace {

using Vals = std::vector<int>;
// Gaps in the local-limit suite fall far below HighReal resolution.
using WideReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<600>>;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string num(const WideReal& x) {
  std::ostringstream out;
  out << std::setprecision(3) << std::scientific << x;
  return out.str();
}

void check(CriterionReport& r, bool ok, const std::string& what, const std::string& known = {}) {
  r.checks.push_back({what, ok, ok ? std::string() : known});
}

std::uint64_t scaled(double base, const Options& o) {
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(base * o.scale)));
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(sampling::replication_seed(seed, index));
}

Vals vals(const HeightFunction& f) { return {f.values().begin(), f.values().end()}; }

GraphSpec graph_of(bool torus, int n, int d) { return torus ? GraphSpec::torus(n, d) : GraphSpec::line(n, d); }

// Chi-squared p-value of sampled functions against uniform on `support`.
double uniformity_p(const HomList& support, const std::vector<Vals>& draws, std::uint64_t& outside) {
  std::map<Vals, std::size_t> index;
  for (std::size_t i = 0; i < support.size(); ++i) index[support[i]] = i;
  std::vector<std::uint64_t> counts(support.size(), 0);
  outside = 0;
  for (const auto& v : draws) {
    const auto it = index.find(v);
    if (it == index.end())
      ++outside;
    else
      ++counts[it->second];
  }
  return refdist::chi_squared(counts, std::vector<double>(support.size(), 1.0 / static_cast<double>(support.size())))
      .p_value;
}

double sample_variance(const std::vector<double>& x) {
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double s = 0;
  for (double v : x) s += (v - mean) * (v - mean);
  return s / static_cast<double>(x.size() - 1);
}

// ---------------------------------------------------------------------------

void counting_suite(CriterionReport& r, const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  int agree = 0, total = 0;
  std::string first_bad;
  for (int d = 1; d <= 3; ++d)
    for (int n = 1; n <= 18; ++n) {
      ++total;
      const auto want = o.reference.homs(false, n, d).size();
      if (counting::hom_count_line(n, d) == want)
        ++agree;
      else if (first_bad.empty())
        first_bad = " (first mismatch at n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")";
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  check(r, agree == total,
        "line counts equal enumeration for n<=18, d<=3: " + std::to_string(agree) + "/" + std::to_string(total) + first_bad);
  check(r, secs < 60, "line counting with enumeration took " + num(secs) + " s (< 60 s)");

  int ok = 0, cases = 0;
  for (int d = 1; d <= 2; ++d)
    for (int n = 4; n <= 14; n += 2) {
      ++cases;
      const BigCount want = o.reference.homs(true, n, d).size();
      BigCount sum = pow2(n / 2 + 1) - 2;
      for (const auto& p : torus::all_feasible_position_sets(n, d)) {
        if (p.empty()) continue;
        sum += BigCount(torus::feasible_sign_vectors(n, d, p).size()) * pow2(torus::fluctuation_count(n, d, p));
      }
      if (sum == want && counting::hom_count_torus(n, d) == want) ++ok;
    }
  check(r, ok == cases,
        "torus partition sum equals enumeration for even n<=14, d<=2: " + std::to_string(ok) + "/" +
            std::to_string(cases));
}

void bijections_suite(CriterionReport& r, const Options& o) {
  long checked = 0, bad_line = 0, bad_words = 0, bad_deriv = 0;
  for (int d = 1; d <= 3; ++d)
    for (int n = 1; n <= 18; ++n) {
      const GraphSpec g = GraphSpec::line(n, d);
      const auto all = o.reference.homs(false, n, d);
      for (const auto& v : all) {
        ++checked;
        try {
          const HeightFunction f = validate(v, g);
          if (line::decode(line::encode(f)) != f) ++bad_line;
          if (words::L_inverse(words::L(f), n, d) != f) ++bad_words;
          if (from_derivative(derivative(f), g) != f) ++bad_deriv;
        } catch (const Error&) {
          ++bad_line;
        }
      }
      // The word side: every legal word comes from exactly one function.
      const auto legal = words::legal_words(n, d);
      if (legal.size() != all.size()) ++bad_words;
      for (const auto& x : legal) {
        try {
          if (words::L(words::L_inverse(x, n, d)) != x) ++bad_words;
        } catch (const Error&) {
          ++bad_words;
        }
      }
    }
  check(r, bad_line == 0, "line encode/decode on " + std::to_string(checked) + " functions: " +
                              std::to_string(bad_line) + " failures");
  check(r, bad_words == 0, "L and its inverse (both directions): " + std::to_string(bad_words) + " failures");

  long tchecked = 0, bad_torus = 0;
  for (int d = 1; d <= 2; ++d)
    for (int n = 4; n <= 14; n += 2) {
      const GraphSpec g = GraphSpec::torus(n, d);
      for (const auto& v : o.reference.homs(true, n, d)) {
        ++tchecked;
        try {
          const HeightFunction f = validate(v, g);
          if (torus::decode_torus(torus::encode_torus(f)) != f) ++bad_torus;
          if (from_derivative(derivative(f), g) != f) ++bad_deriv;
        } catch (const Error&) {
          ++bad_torus;
        }
      }
    }
  check(r, bad_torus == 0, "torus encode/decode on " + std::to_string(tchecked) + " functions: " +
                               std::to_string(bad_torus) + " failures");
  check(r, bad_deriv == 0, "derivative round trips: " + std::to_string(bad_deriv) + " failures");
}

void structures_suite(CriterionReport& r, const Options& o) {
  long cells = 0, bad_cells = 0, bad_totals = 0;
  for (int d = 1; d <= 3; ++d)
    for (int n = 1; n <= 16; ++n) {
      std::map<std::pair<int, int>, long> tally;
      for (const auto& s : line::all_feasible_structures(n, d)) {
        const int lead = s.positions.empty() ? 2 * d + 2 : std::min(s.positions.front(), 2 * d + 2);
        tally[{line::jumps_after_window(s), lead / 2}]++;
      }
      BigCount sum = 0;
      for (int rr = 0; rr <= n; ++rr)
        for (int i = 1; i <= d + 1; ++i) {
          ++cells;
          const BigCount c = line::count_structures(n, d, rr, i);
          const auto it = tally.find({rr, i});
          if (c != (it == tally.end() ? 0 : it->second)) ++bad_cells;
          sum += c * line::count_fluct_words(n, d, rr, i);
        }
      if (sum != o.reference.homs(false, n, d).size()) ++bad_totals;
    }
  check(r, bad_cells == 0, "line c_i(r) vs structure generation, n<=16, d<=3: " + std::to_string(bad_cells) + "/" +
                               std::to_string(cells) + " cells differ");
  check(r, bad_totals == 0, "sum of c_i(r) b_i(r) equals the count: " + std::to_string(bad_totals) + " mismatches");

  long tcells = 0, tbad = 0;
  for (int d = 1; d <= 2; ++d)
    for (int n = 4; n <= 16; n += 2) {
      std::map<int, long> tally;
      for (const auto& p : torus::all_feasible_position_sets(n, d)) {
        if (p.empty()) continue;
        if (torus::chain_structure(n, d, p).size() == p.size()) tally[static_cast<int>(p.size()) / 2]++;
      }
      for (int rr = 1; rr <= n / 2; ++rr) {
        ++tcells;
        if (torus::count_one_chains(n, d, rr) != tally[rr]) ++tbad;
      }
    }
  check(r, tbad == 0, "torus c(n,d,r) vs structure generation, even n<=16, d<=2: " + std::to_string(tbad) + "/" +
                          std::to_string(tcells) + " differ");
}

void exact_suite(CriterionReport& r, const Options& o) {
  const int n = 12, d = 1;
  const auto support = o.reference.homs(false, n, d);
  const std::uint64_t draws = scaled(1e5, o);
  r.notes.push_back("support size " + std::to_string(support.size()) + ", " + std::to_string(draws) + " draws each");

  const sampling::ExactLineSampler dp(n, d);
  const auto dp_draws = parallel_map<Vals>(draws, o.jobs, [&](std::size_t i) {
    auto rng = stream(o.seed, i);
    return vals(dp(rng));
  });
  std::uint64_t outside = 0;
  const double p_dp = uniformity_p(support, dp_draws, outside);
  check(r, p_dp > 0.01 && outside == 0, "DP chi-squared p = " + num(p_dp) + " (> 0.01)");

  const GraphSpec g = GraphSpec::line(n, d);
  struct Draw {
    Vals v;
    std::uint64_t horizon = 0;
    bool coalesced = false;
  };
  const auto cftp_draws = parallel_map<Draw>(draws, o.jobs, [&](std::size_t i) {
    try {
      const auto res = sampling::cftp(g, sampling::replication_seed(o.seed ^ 0x9e3779b97f4a7c15ULL, i));
      return Draw{vals(res.sample), res.horizon, true};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonCoalescence) throw;
      return Draw{};
    }
  });
  std::vector<Vals> cv;
  std::uint64_t failures = 0, max_horizon = 0;
  for (const auto& dr : cftp_draws) {
    if (!dr.coalesced) {
      ++failures;
      continue;
    }
    cv.push_back(dr.v);
    max_horizon = std::max(max_horizon, dr.horizon);
  }
  const double p_cftp = uniformity_p(support, cv, outside);
  check(r, p_cftp > 0.01 && outside == 0, "CFTP chi-squared p = " + num(p_cftp) + " (> 0.01)");
  check(r, failures == 0, "CFTP runs without coalescence: " + std::to_string(failures));
  r.notes.push_back("largest CFTP horizon " + std::to_string(max_horizon));
  bool refused = false;
  try {
    sampling::cftp(g, o.seed, 4);
  } catch (const Error& e) {
    refused = e.code() == ErrorCode::NonCoalescence;
  }
  check(r, refused, "CFTP with a 4-update budget reports NonCoalescence instead of returning");
}

void supercritical_suite(CriterionReport& r, const Options& o) {
  const std::uint64_t draws = scaled(1e4, o);
  for (int n : {50, 51}) {
    const int d = 15;
    const sampling::ExactLineSampler s(n, d);
    struct Stat {
      int range = 0;
      bool omega0 = false;
    };
    const auto stats = parallel_map<Stat>(draws, o.jobs, [&](std::size_t i) {
      auto rng = stream(o.seed + static_cast<std::uint64_t>(n), i);
      const auto f = s(rng);
      bool even_const = true;
      for (int v = 0; v <= n; v += 2) even_const = even_const && f[v] == 0;
      return Stat{range_size(f), even_const};
    });
    std::uint64_t three = 0, at_most_three = 0, omega0 = 0;
    for (const auto& st : stats) {
      three += st.range == 3;
      at_most_three += st.range <= 3;
      omega0 += st.omega0;
    }
    const double f3 = static_cast<double>(three) / static_cast<double>(draws);
    const double p0 = static_cast<double>(omega0) / static_cast<double>(draws);
    const double want = n % 2 == 0 ? 1.0 / 3 : 0.5;
    if (n == 50) check(r, f3 >= 0.995, "(50,15): range exactly 3 in " + num(100 * f3) + "% (>= 99.5%)");
    else r.notes.push_back("(51,15): range exactly 3 in " + num(100 * f3) + "%");
    check(r, std::abs(p0 - want) <= 0.02,
          "(" + std::to_string(n) + ",15): Pr(Omega_0) = " + num(p0) + " (target " + num(want) + " +- 0.02)");
    r.notes.push_back("(" + std::to_string(n) + ",15): range <= 3 in " +
                      num(100.0 * static_cast<double>(at_most_three) / static_cast<double>(draws)) + "%");
  }
}

void subcritical_suite(CriterionReport& r, const Options& o) {
  const int n = 4096, d = 4;
  const std::uint64_t draws = scaled(1e4, o);
  const sampling::ExactLineSampler s(n, d);
  const std::vector<int> ks{n / 4, n / 2, n};
  const auto rows = parallel_map<std::vector<double>>(draws, o.jobs, [&](std::size_t i) {
    auto rng = stream(o.seed, i);
    const auto f = s(rng);
    std::vector<double> out;
    for (int k : ks) out.push_back(f[k]);
    return out;
  });
  r.notes.push_back(std::to_string(draws) + " exact DP samples (CFTP horizon extrapolates to about 3e10 updates at this size)");
  for (std::size_t j = 0; j < ks.size(); ++j) {
    std::vector<double> x;
    for (const auto& row : rows) x.push_back(row[j]);
    const double var = sample_variance(x);
    const double scale = ks[j] * std::ldexp(1.0, -d);
    check(r, var >= scale / 64 && var <= 64 * scale + 4,
          "Var f(" + std::to_string(ks[j]) + ") = " + num(var) + " in [" + num(scale / 64) + ", " +
              num(64 * scale + 4) + "], ratio " + num(var / scale));
  }

  // The same law from CFTP at a size where it runs.
  const int m = 64;
  const std::uint64_t cdraws = scaled(2000, o);
  const GraphSpec g = GraphSpec::line(m, d);
  const auto c = parallel_map<double>(cdraws, o.jobs, [&](std::size_t i) {
    return static_cast<double>(sampling::cftp(g, sampling::replication_seed(o.seed + 1, i)).sample[m]);
  });
  const sampling::ExactLineSampler small(m, d);
  const auto e = parallel_map<double>(cdraws * 5, o.jobs, [&](std::size_t i) {
    auto rng = stream(o.seed + 2, i);
    return static_cast<double>(small(rng)[m]);
  });
  const double vc = sample_variance(c), ve = sample_variance(e);
  // Standard error of a sample variance for near-Gaussian data.
  const double se = std::sqrt(2 * vc * vc / static_cast<double>(cdraws) + 2 * ve * ve / static_cast<double>(e.size()));
  check(r, std::abs(vc - ve) <= 5 * se,
        "cross-check at (64,4): CFTP Var f(64) = " + num(vc) + ", DP " + num(ve) + " (within 5 s.e.)");
}

void critical_suite(CriterionReport& r, const Options& o) {
  if (!(o.lambda > 0)) throw Error(ErrorCode::InvalidParameter, "lambda must be positive");
  auto n_for = [&](int d) {
    const long long n = 2 * std::llround(o.lambda * std::ldexp(1.0, d - 1));
    if (n < 4) throw Error(ErrorCode::InvalidParameter, "lambda too small for d = " + std::to_string(d));
    return static_cast<int>(n);
  };
  const std::uint64_t draws = scaled(1e5, o);
  auto line_tv = [&](int d) {
    const int n = n_for(d);
    const double lam = n * std::ldexp(1.0, -d);
    const sampling::ExactLineSampler s(n, d);
    const auto ranges = parallel_map<int>(draws, o.jobs, [&](std::size_t i) {
      auto rng = stream(o.seed + static_cast<std::uint64_t>(d), i);
      return range_size(s(rng));
    });
    const auto ref = refdist::shift(refdist::stopped_range_pmf(lam, 1, 1e-12), 2);
    const double tv = refdist::tv_distance(refdist::empirical(ranges), ref);
    r.notes.push_back("line (" + std::to_string(n) + "," + std::to_string(d) + ") mean range " +
                      num(refdist::empirical(ranges).mean()) + " vs limit " + num(ref.mean()));
    return std::pair{n, tv};
  };
  const auto [n8, tv8] = line_tv(8);
  const auto [n9, tv9] = line_tv(9);
  check(r, tv8 < 0.08, "line (" + std::to_string(n8) + ",8) TV " + num(tv8) + " (< 0.08)");
  check(r, tv9 <= tv8, "line (" + std::to_string(n9) + ",9) TV " + num(tv9) + " (not above " + num(tv8) + ")");

  const std::uint64_t tdraws = scaled(2e4, o);
  const double lam = n8 * std::ldexp(1.0, -8);
  const sampling::PeriodicTorusSampler ts(n8, 8);
  const auto ranges = parallel_map<int>(tdraws, o.jobs, [&](std::size_t i) {
    auto rng = stream(o.seed + 100, i);
    return range_size(ts(rng));
  });
  const auto ref = refdist::shift(refdist::bridge_mixture_range_pmf(lam, 1e-12), 2);
  const double tv = refdist::tv_distance(refdist::empirical(ranges), ref);
  check(r, tv < 0.10, "torus (" + std::to_string(n8) + ",8) TV " + num(tv) + " (< 0.10) over " +
                          std::to_string(tdraws) + " exact periodic-rejection samples");
}

WideReal wide_lambda(int d) {
  WideReal lo = 2, hi = 3;
  const WideReal e = WideReal(d) - WideReal(0.5);
  for (int i = 0; i < 2100; ++i) {
    const WideReal mid = (lo + hi) / 2;
    const WideReal v = boost::multiprecision::pow(mid, e) * (mid - 2);
    (v < 1 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

WideReal wide(const Rational& q) {
  return WideReal(boost::multiprecision::numerator(q)) / WideReal(boost::multiprecision::denominator(q));
}

void locallimit_suite(CriterionReport& r, const Options&) {
  const std::vector<int> a{1, -1};
  for (int d = 1; d <= 2; ++d) {
    const counting::CompletionTable table(d, 400);
    const WideReal limit = 1 / boost::multiprecision::sqrt(wide_lambda(d)) / 2;
    WideReal prev = 1;
    bool decreasing = true;
    std::string gaps;
    for (int n : {50, 100, 200, 400}) {
      const WideReal gap = boost::multiprecision::abs(wide(counting::prefix_marginal(table, n, a).probability) - limit);
      decreasing = decreasing && gap < prev;
      gaps += (gaps.empty() ? "" : ", ") + num(gap);
      prev = gap;
    }
    if (d == 1) {
      check(r, boost::multiprecision::abs(limit - WideReal("0.309017")) < WideReal("1e-6"),
            "d=1 limit Pr(W(1)=a) = " + std::to_string(limit.convert_to<double>()) + " (0.309017)");
      check(r, decreasing, "d=1 gaps at n=50,100,200,400 decrease: " + gaps);
      check(r, prev < WideReal("1e-3"), "d=1 gap at n=400 below 1e-3");
    } else {
      check(r, decreasing && prev < WideReal("1e-3"), "d=2 gaps at n=50,100,200,400 decrease: " + gaps);
    }
  }
  double worst = 0, closed_form = 0;
  for (int d = 1; d <= 3; ++d) {
    const auto law = locallimit::build_chain(d);
    const counting::CompletionTable table(d, 400);
    for (const auto& f : counting::enumerate(GraphSpec::line(6, d))) {
      const auto steps = derivative(f);
      const HighReal lim = locallimit::prefix_probability(law, steps);
      worst = std::max(worst, std::abs(to_double(counting::prefix_marginal(table, 400, steps).probability) -
                                       lim.convert_to<double>()));
      if (words::weight(words::L(f)) == 6)
        closed_form = std::max(closed_form, boost::multiprecision::abs(locallimit::exact_marginal(law, f) - lim)
                                                .convert_to<double>());
    }
  }
  check(r, worst < 1e-3, "all length-6 prefixes, d<=3, n=400: max |finite - limit| = " + num(worst));
  check(r, closed_form < 1e-40, "closed-form marginal vs chain path sums: max difference " + num(closed_form));
}

void lambda_suite(CriterionReport& r, const Options&) {
  HighReal worst = 0;
  for (int d = 1; d <= 40; ++d) worst = std::max(worst, counting::lambda_of_d(d).residual());
  check(r, worst < HighReal("1e-12"), "residual of the defining equation for d<=40: max " + num(worst.convert_to<double>()));
  const HighReal golden = (3 + boost::multiprecision::sqrt(HighReal(5))) / 2;
  const HighReal diff = boost::multiprecision::abs(counting::lambda_of_d(1).lambda - golden);
  check(r, diff < HighReal("1e-12"), "lambda(1) = (3+sqrt 5)/2 to 12 digits (difference " + num(diff.convert_to<double>()) + ")");

  std::vector<HighReal> s;
  for (int d = 1; d <= 40; ++d) {
    const HighReal lam = counting::lambda_of_d(d).lambda;
    s.push_back((lam - 2) * boost::multiprecision::pow(HighReal(2), HighReal(d) - HighReal(0.5)));
  }
  int first_drop = 0;
  for (std::size_t i = 1; i < s.size() && first_drop == 0; ++i)
    if (!(s[i] > s[i - 1])) first_drop = static_cast<int>(i) + 1;
  check(r, first_drop == 0,
        "(lambda-2) 2^{d-1/2} increasing on d=1..40: values " + num(s[0].convert_to<double>()) + ", " +
            num(s[1].convert_to<double>()) + ", " + num(s[2].convert_to<double>()) + ", ..., " +
            num(s.back().convert_to<double>()),
        "the quantity equals (2/lambda)^{d-1/2}, which falls from d=1 to d=2 before rising to 1");
  bool tail = true;
  for (std::size_t i = 2; i < s.size(); ++i) tail = tail && s[i] > s[i - 1] && s[i] < 1;
  check(r, tail && s.back() > HighReal("0.999999"), "increasing from d=2 on and tending to 1 (d=40: 1 - " +
                                                        num((1 - s.back()).convert_to<double>()) + ")");
}

double poisson_pmf(double lam, int k) { return std::exp(-lam + k * std::log(lam) - std::lgamma(k + 1.0)); }

void refdist_suite(CriterionReport& r, const Options&) {
  double mu_diff = 0;
  for (double alpha : {3 / (2 * std::sqrt(2.0)), 2 * std::sqrt(2.0) / 3, 0.2, 1.0, 7.0})
    for (double lam : {0.05, 0.5, 1.0, 2.0, 5.0}) {
      const auto p = refdist::parity_biased_poisson(lam, alpha, 1e-15);
      const auto q = refdist::parity_biased_poisson_mixture(lam, alpha, 1e-15);
      for (int k = 0; k <= 60; ++k) mu_diff = std::max(mu_diff, std::abs(p.at(k) - q.at(k)));
    }
  check(r, mu_diff < 1e-12, "two forms of mu(lambda, alpha) agree: max difference " + num(mu_diff));

  double nu_diff = 0;
  for (double lp : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    const auto nu = refdist::equality_biased_poisson(lp, 1e-15);
    std::vector<double> joint;
    double diag = 0;
    for (int k = 0; k < 120; ++k) {
      joint.push_back(poisson_pmf(lp, k) * poisson_pmf(lp, k));
      diag += joint.back();
    }
    for (int k = 0; k < 120; ++k) nu_diff = std::max(nu_diff, std::abs(nu.at(k) - joint[static_cast<std::size_t>(k)] / diag));
  }
  check(r, nu_diff < 1e-12, "nu(lambda') vs conditioning two Poisson variables: max difference " + num(nu_diff));

  double step_diff = 0;
  for (double mu : {0.3, 1.0, 3.0}) {
    std::vector<double> w;
    double z = 0;
    for (int j = 0; j < 80; ++j) {
      const int k = 2 * j;
      w.push_back(poisson_pmf(mu, k) *
                  std::exp(std::lgamma(k + 1.0) - 2 * std::lgamma(j + 1.0) - k * std::log(2.0)));
      z += w.back();
    }
    const auto nu = refdist::equality_biased_poisson(mu / 2, 1e-12);
    for (int j = 0; j < 80; ++j) step_diff = std::max(step_diff, std::abs(w[static_cast<std::size_t>(j)] / z - nu.at(j)));
  }
  check(r, step_diff < 1e-10, "returning Poisson walk has half-length nu(mu/2): max difference " + num(step_diff));
}

void torus_range_suite(CriterionReport& r, const Options& o) {
  long checked = 0, bad = 0;
  for (int d = 1; d <= 2; ++d)
    for (int n = 4; n <= 14; n += 2) {
      const GraphSpec g = GraphSpec::torus(n, d);
      for (const auto& v : o.reference.homs(true, n, d)) {
        const HeightFunction f = validate(v, g);
        if (torus::average_height_torus(f).structure.positions.empty()) continue;
        ++checked;
        const int direct = *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end()) + 1;
        if (torus::range_from_W(f) != direct) ++bad;
      }
    }
  check(r, bad == 0 && checked > 0, "|Rng f| = 2 + |Rng W| on " + std::to_string(checked) +
                                        " torus functions with jumps: " + std::to_string(bad) + " failures");
}

void properties_suite(CriterionReport& r, const Options& o) {
  const int cases = static_cast<int>(scaled(1e4, o));
  std::mt19937_64 rng(o.seed);
  const GraphSpec g = GraphSpec::line(10, 2);
  const auto all = o.reference.homs(false, 10, 2);
  auto pick = [&]() -> const Vals& { return all[sampling::uniform_below(rng, all.size())]; };

  int closure_bad = 0;
  for (int t = 0; t < cases; ++t) {
    const Vals &f = pick(), &h = pick();
    Vals hi(f.size()), lo(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
      hi[k] = std::max(f[k], h[k]);
      lo[k] = std::min(f[k], h[k]);
    }
    if (find_violation(hi, g) || find_violation(lo, g)) ++closure_bad;
  }
  check(r, closure_bad == 0, "pointwise max/min closure on P_{10,2}: " + std::to_string(closure_bad) + "/" +
                                 std::to_string(cases) + " failures");

  const sampling::HeatBath hb(g);
  int mono_bad = 0;
  for (int t = 0; t < cases; ++t) {
    const Vals &f = pick(), &h = pick();
    Vals lo(f.size()), hi(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
      lo[k] = std::min(f[k], h[k]);
      hi[k] = std::max(f[k], h[k]);
    }
    const int v = static_cast<int>(sampling::uniform_below(rng, static_cast<std::uint64_t>(hb.num_vertices())));
    const bool coin = rng() & 1;
    hb.update(lo, v, coin);
    hb.update(hi, v, coin);
    bool ordered = true;
    for (std::size_t k = 0; k < lo.size(); ++k) ordered = ordered && lo[k] <= hi[k];
    if (!ordered || find_violation(lo, g) || find_violation(hi, g)) ++mono_bad;
  }
  check(r, mono_bad == 0, "shared heat-bath update keeps f <= g: " + std::to_string(mono_bad) + "/" +
                              std::to_string(cases) + " failures");

  std::map<std::pair<int, int>, sampling::ExactLineSampler> samplers;
  std::map<int, locallimit::ChainLaw> laws;
  int word_bad = 0;
  for (int t = 0; t < cases; ++t) {
    const int d = 1 + static_cast<int>(sampling::uniform_below(rng, 4));
    const int n = 1 + static_cast<int>(sampling::uniform_below(rng, 60));
    auto it = samplers.find({n, d});
    if (it == samplers.end()) it = samplers.emplace(std::pair{n, d}, sampling::ExactLineSampler(n, d)).first;
    if (!words::is_d_legal(words::L(it->second(rng)), d)) ++word_bad;
    if (!laws.count(d)) laws.emplace(d, locallimit::build_chain(d));
    if (!words::is_d_legal(locallimit::run_chain(laws.at(d), n, rng).word, d)) ++word_bad;
  }
  check(r, word_bad == 0, "d-legality of words from exact samples and from the limit chain: " +
                              std::to_string(word_bad) + "/" + std::to_string(2 * cases) + " failures");

  int pmf_bad = 0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < cases; ++t) {
    const double lam = 0.01 + 3 * unit(rng);
    refdist::PMF p;
    switch (t % 6) {
      case 0: p = refdist::parity_biased_poisson(lam, 0.1 + 10 * unit(rng)); break;
      case 1: p = refdist::equality_biased_poisson(lam); break;
      case 2: p = refdist::stopped_range_pmf(lam, rng() & 1 ? 1 : -1); break;
      case 3: p = refdist::bridge_mixture_range_pmf(lam); break;
      case 4: p = refdist::srw_range_pmf(static_cast<int>(sampling::uniform_below(rng, 40))); break;
      default: p = refdist::bridge_range_pmf(2 * static_cast<int>(sampling::uniform_below(rng, 20))); break;
    }
    bool ok = std::abs(p.total() + p.truncation_mass - 1) < 1e-9 && p.truncation_mass <= refdist::kDefaultTruncation;
    for (const auto& [k, q] : p.probs) ok = ok && q >= 0;
    if (!ok) ++pmf_bad;
  }
  check(r, pmf_bad == 0, "PMF normalization over random parameters: " + std::to_string(pmf_bad) + "/" +
                             std::to_string(cases) + " failures");
}

using SuiteFn = void (*)(CriterionReport&, const Options&);

struct Entry {
  SuiteInfo info;
  SuiteFn fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e{
      {{1, "counting", "exact counts and the torus partition"}, counting_suite},
      {{2, "bijections", "round trips of every bijection"}, bijections_suite},
      {{3, "structures", "structure-count formulas"}, structures_suite},
      {{4, "exact", "exact samplers at (12,1)"}, exact_suite},
      {{5, "supercritical", "range 3 and Omega_0 at d=15"}, supercritical_suite},
      {{6, "subcritical", "endpoint variance at (4096,4)"}, subcritical_suite},
      {{7, "critical", "range law at n 2^{-d} = lambda"}, critical_suite},
      {{8, "locallimit", "finite-n prefixes approach the chain"}, locallimit_suite},
      {{9, "lambda", "lambda(d)"}, lambda_suite},
      {{10, "refdist", "reference distributions"}, refdist_suite},
      {{11, "torus-range", "torus range identity"}, torus_range_suite},
      {{12, "properties", "randomized property suites"}, properties_suite},
  };
  return e;
}

CriterionReport run_entry(const Entry& e, const Options& o) {
  CriterionReport r;
  r.id = e.info.id;
  r.suite = e.info.name;
  r.title = e.info.title;
  const auto t0 = std::chrono::steady_clock::now();
  e.fn(r, o);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

Reference library_reference() {
  return {[](bool torus, int n, int d) {
    HomList out;
    counting::for_each_hom(graph_of(torus, n, d), [&](const HeightFunction& f) { out.push_back(vals(f)); });
    return out;
  }};
}

bool CriterionReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool CriterionReport::acceptable() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || !c.known_deviation.empty(); });
}

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> s = [] {
    std::vector<SuiteInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return s;
}

CriterionReport run_suite(const std::string& name, const Options& options) {
  for (const auto& e : entries())
    if (name == e.info.name) return run_entry(e, options);
  throw Error(ErrorCode::InvalidParameter, "unknown suite '" + name + "'");
}

CriterionReport run_criterion(int id, const Options& options) {
  for (const auto& e : entries())
    if (id == e.info.id) return run_entry(e, options);
  throw Error(ErrorCode::InvalidParameter, "unknown criterion " + std::to_string(id));
}

std::string format_line(const CriterionReport& report) {
  std::ostringstream out;
  out << "criterion " << report.id << " [" << report.suite << "] ";
  if (report.passed())
    out << "PASS";
  else if (report.acceptable())
    out << "FAIL (known deviation)";
  else
    out << "FAIL";
  out << " (" << num(report.seconds) << " s):";
  bool first = true;
  for (const auto& c : report.checks) {
    out << (first ? " " : "; ") << (c.passed ? "" : "FAILED ") << c.what;
    if (!c.passed && !c.known_deviation.empty()) out << " [known: " << c.known_deviation << "]";
    first = false;
  }
  for (const auto& n : report.notes) out << "; " << n;
  return out.str();
}

}  // namespace homwalk::verify
