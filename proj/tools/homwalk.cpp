// homwalk: counts, samplers, statistics and verification suites for
// homomorphism height functions on P_{n,d} and T_{n,d}.
//
// Exit codes: 0 ok, 1 failed check or runtime error, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "homwalk/core.hpp"
#include "homwalk/counting.hpp"
#include "homwalk/io.hpp"
#include "homwalk/locallimit.hpp"
#include "homwalk/parallel.hpp"
#include "homwalk/sampling.hpp"
#include "homwalk/stats.hpp"
#include "homwalk/verify.hpp"
#include "homwalk/words.hpp"
#include "json.hpp"
#include "manifest.hpp"

namespace {

using namespace homwalk;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// Replications are generated and written in batches of this size.
constexpr std::size_t kBatch = 256;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_usage_code(ErrorCode c) {
  return c == ErrorCode::InvalidParameter || c == ErrorCode::InvalidGraph || c == ErrorCode::Unsupported;
}

/// An output file or stdout, hashed for the manifest.
class Output {
 public:
  explicit Output(const std::string& path) : name_(path.empty() || path == "-" ? "stdout" : path) {
    std::streambuf* target = std::cout.rdbuf();
    if (name_ != "stdout") {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
      target = file_.rdbuf();
    }
    buf_ = std::make_unique<cli::DigestBuf>(target);
    stream_ = std::make_unique<std::ostream>(buf_.get());
  }
  std::ostream& stream() { return *stream_; }
  cli::OutputDigest close() {
    stream_->flush();
    cli::OutputDigest d{name_, buf_->bytes(), buf_->finish()};
    if (file_.is_open()) file_.close();
    return d;
  }

 private:
  std::string name_;
  std::ofstream file_;
  std::unique_ptr<cli::DigestBuf> buf_;
  std::unique_ptr<std::ostream> stream_;
};

std::uint64_t effective_seed(std::uint64_t flag_value) {
  const char* env = std::getenv("HOMWALK_SEED");
  if (env == nullptr || *env == '\0') return flag_value;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used, 0);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("HOMWALK_SEED is not an unsigned integer: ") + env);
  }
}

GraphSpec make_graph(const std::string& topology, int n, int d) {
  return io::parse_topology(topology) == Topology::Line ? GraphSpec::line(n, d) : GraphSpec::torus(n, d);
}

// ---------------------------------------------------------------------------

struct CountArgs {
  std::string graph = "line";
  int n = 0;
  int d = 1;
  std::string range;
  std::string out;
};

int cmd_count(const CountArgs& a, cli::RunManifest& manifest) {
  int lo = a.n, hi = a.n;
  if (!a.range.empty()) {
    const auto colon = a.range.find(':');
    if (colon == std::string::npos) throw UsageError("--range expects LO:HI");
    try {
      lo = std::stoi(a.range.substr(0, colon));
      hi = std::stoi(a.range.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("--range expects LO:HI");
    }
  }
  if (lo < 1 || hi < lo) throw UsageError("need 1 <= n (and LO <= HI)");
  const bool torus = io::parse_topology(a.graph) == Topology::Torus;
  Output out(a.out);
  out.stream() << "n,d,count\n";
  for (int n = lo; n <= hi; ++n) {
    if (torus && !a.range.empty() && n % 2 == 1) continue;
    const GraphSpec g = make_graph(a.graph, n, a.d);
    const BigCount c = torus ? counting::hom_count_torus(n, a.d) : counting::hom_count_line(n, a.d);
    out.stream() << g.n() << ',' << g.d() << ',' << c << '\n';
  }
  manifest.add_output(out.close());
  return kOk;
}

// ---------------------------------------------------------------------------

struct SampleArgs {
  std::string graph = "line";
  int n = 0;
  int d = 1;
  std::string method = "dp";
  std::uint64_t steps = 0;
  std::uint64_t reps = 1;
  std::uint64_t seed = 0;
  std::uint64_t max_updates = sampling::kDefaultUpdateCap;
  bool any_parity = false;
  unsigned jobs = 1;
  std::string out;
};

std::string lipschitz_json(int n, int d, bool any_parity, const std::vector<double>& values) {
  nlohmann::json j;
  j["model"] = "lipschitz";
  j["topology"] = "line";
  j["n"] = n;
  j["d"] = d;
  j["any_parity"] = any_parity;
  j["values"] = values;
  return j.dump();
}

int cmd_sample(const SampleArgs& a, cli::RunManifest& manifest) {
  const std::uint64_t seed = effective_seed(a.seed);
  manifest.set_seed(seed);
  sampling::SamplerConfig config;
  config.graph = make_graph(a.graph, a.n, a.d);
  config.method = sampling::parse_method(a.method);
  config.steps = a.steps;
  config.seed = seed;
  config.max_updates = a.max_updates;
  config.check();

  // Samplers with a precomputed table are built once and shared.
  std::optional<sampling::ExactLineSampler> dp;
  std::optional<sampling::TableSampler> table;
  std::optional<sampling::PeriodicTorusSampler> periodic;
  switch (config.method) {
    case sampling::Method::ExactDP: dp.emplace(a.n, a.d); break;
    case sampling::Method::ExactTable: table.emplace(config.graph); break;
    case sampling::Method::ExactPeriodic: periodic.emplace(a.n, a.d); break;
    default: break;
  }

  auto one = [&](std::size_t i) -> std::string {
    const std::uint64_t s = sampling::replication_seed(seed, i);
    std::mt19937_64 rng(s);
    switch (config.method) {
      case sampling::Method::ExactDP: return io::to_json((*dp)(rng));
      case sampling::Method::ExactTable: return io::to_json((*table)(rng));
      case sampling::Method::ExactPeriodic: return io::to_json((*periodic)(rng));
      case sampling::Method::Glauber: {
        auto c = config;
        c.seed = s;
        return io::to_json(sampling::run_glauber(c));
      }
      case sampling::Method::CFTP: return io::to_json(sampling::cftp(config.graph, s, config.max_updates).sample);
      case sampling::Method::LipschitzGlauber:
        return lipschitz_json(a.n, a.d, a.any_parity,
                              sampling::lipschitz_glauber(a.n, a.d, a.steps, rng, {a.any_parity}));
    }
    return {};
  };

  Output out(a.out);
  for (std::uint64_t start = 0; start < a.reps; start += kBatch) {
    const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, a.reps - start));
    const auto lines = parallel_map<std::string>(count, a.jobs, [&](std::size_t k) { return one(start + k); });
    for (const auto& line : lines) out.stream() << line << '\n';
  }
  manifest.add_output(out.close());
  return kOk;
}

// ---------------------------------------------------------------------------

struct StatsArgs {
  std::string in;
  std::string what = "range";
  std::string out;
};

int cmd_stats(const StatsArgs& a, cli::RunManifest& manifest) {
  std::vector<HeightFunction> samples;
  if (a.in.empty() || a.in == "-") {
    samples = io::read_jsonl(std::cin);
  } else {
    std::ifstream in(a.in);
    if (!in) throw std::runtime_error("cannot open " + a.in);
    samples = io::read_jsonl(in);
  }
  if (samples.empty()) throw std::runtime_error("no samples in input");
  Output out(a.out);
  if (a.what == "range")
    stats::write_range_csv(out.stream(), stats::range_histogram(samples));
  else
    stats::write_moments_csv(out.stream() << std::setprecision(12), stats::pointwise_moments(samples));
  manifest.add_output(out.close());
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> suites;
  double lambda = 1.0;
  double scale = 1.0;
  std::uint64_t seed = verify::Options{}.seed;
  unsigned jobs = 1;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, cli::RunManifest& manifest) {
  verify::Options options;
  options.seed = effective_seed(a.seed);
  options.lambda = a.lambda;
  options.scale = a.scale;
  options.jobs = a.jobs;
  manifest.set_seed(options.seed);
  if (!(a.scale > 0)) throw UsageError("--scale must be positive");

  std::vector<std::string> names;
  for (const auto& s : a.suites) {
    if (s == "all") {
      for (const auto& info : verify::suites()) names.push_back(info.name);
      continue;
    }
    bool known = false;
    for (const auto& info : verify::suites()) known = known || s == info.name || s == std::to_string(info.id);
    if (!known) throw UsageError("unknown suite '" + s + "'");
    names.push_back(s);
  }

  Output out(a.out);
  bool ok = true;
  for (const auto& name : names) {
    const bool numeric = name.find_first_not_of("0123456789") == std::string::npos;
    const auto report = numeric ? verify::run_criterion(std::stoi(name), options) : verify::run_suite(name, options);
    out.stream() << verify::format_line(report) << std::endl;
    ok = ok && report.acceptable();
  }
  manifest.add_output(out.close());
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

struct LocalLimitArgs {
  int d = 1;
  int len = 10;
  std::uint64_t reps = 1;
  std::uint64_t seed = 0;
  bool matrix = false;
  unsigned jobs = 1;
  std::string out;
};

int cmd_locallimit(const LocalLimitArgs& a, cli::RunManifest& manifest) {
  if (a.len < 1) throw UsageError("--len must be at least 1");
  const auto law = locallimit::build_chain(a.d);
  Output out(a.out);
  if (a.matrix) {
    out.stream() << "from,to,probability\n" << std::setprecision(17);
    for (int i = 0; i < law.num_states(); ++i)
      for (int j = 0; j < law.num_states(); ++j) {
        const double p = law.p[i][j].convert_to<double>();
        if (p == 0) continue;
        out.stream() << words::state_name(words::state_from_id(i, a.d)) << ','
                     << words::state_name(words::state_from_id(j, a.d)) << ',' << p << '\n';
      }
    manifest.add_output(out.close());
    return kOk;
  }
  const std::uint64_t seed = effective_seed(a.seed);
  manifest.set_seed(seed);
  for (std::uint64_t start = 0; start < a.reps; start += kBatch) {
    const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, a.reps - start));
    const auto lines = parallel_map<std::string>(count, a.jobs, [&](std::size_t k) {
      std::mt19937_64 rng(sampling::replication_seed(seed, start + k));
      const auto run = locallimit::run_chain(law, a.len, rng);
      const auto f = from_derivative(run.steps, GraphSpec::line(a.len, a.d));
      nlohmann::json j;
      j["d"] = a.d;
      j["len"] = a.len;
      j["word"] = words::to_text(run.word);
      j["values"] = std::vector<int>(f.values().begin(), f.values().end());
      return j.dump();
    });
    for (const auto& line : lines) out.stream() << line << '\n';
  }
  manifest.add_output(out.close());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform homomorphism height functions on P_{n,d} and T_{n,d}: exact counts, exact and MCMC "
               "samplers, range statistics and verification suites.\nHOMWALK_SEED overrides --seed. Exit codes: "
               "0 ok, 1 failed check or runtime error, 2 usage error."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", HOMWALK_VERSION);
  std::string manifest_path = "-";
  app.add_option("--manifest", manifest_path, "Where to write the run manifest JSON ('-' = stderr, 'none' = skip)");

  CountArgs count;
  auto* c = app.add_subcommand("count", "Exact |Hom| as CSV n,d,count");
  c->add_option("graph,--graph", count.graph, "line or torus")->check(CLI::IsMember({"line", "torus"}));
  c->add_option("n,--n", count.n, "Number of steps (line) or vertices (torus)");
  c->add_option("d,--d", count.d, "Constraint radius");
  c->add_option("--range", count.range, "Count every n in LO:HI (even n only on the torus)");
  c->add_option("--out", count.out, "Output file (default stdout)");

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "Draw samples as JSONL, one height function per line");
  s->add_option("--graph", sample.graph, "line or torus")->check(CLI::IsMember({"line", "torus"}));
  s->add_option("--n", sample.n, "Number of steps (line) or vertices (torus)")->required();
  s->add_option("--d", sample.d, "Constraint radius");
  s->add_option("--method", sample.method, "dp, table, periodic, glauber, cftp or lipschitz")
      ->check(CLI::IsMember({"dp", "table", "periodic", "glauber", "cftp", "lipschitz"}));
  s->add_option("--steps", sample.steps, "Heat-bath updates (glauber, lipschitz)");
  s->add_option("--reps", sample.reps, "Number of independent samples");
  s->add_option("--seed", sample.seed, "Base seed; replication i uses a stream derived from (seed, i)");
  s->add_option("--max-updates", sample.max_updates, "CFTP budget over all epochs");
  s->add_flag("--any-parity", sample.any_parity, "Lipschitz model with all edges within distance d+1");
  s->add_option("--jobs", sample.jobs, "Worker threads; output order does not depend on it")
      ->check(CLI::Range(1u, 256u));
  s->add_option("--out", sample.out, "Output file (default stdout)");

  StatsArgs st;
  auto* t = app.add_subcommand("stats", "CSV summaries of a JSONL sample file");
  t->add_option("--in", st.in, "JSONL samples (default stdin)");
  t->add_option("--what", st.what, "range: histogram of |Rng f|; variance: pointwise mean and variance")
      ->check(CLI::IsMember({"range", "variance"}));
  t->add_option("--out", st.out, "Output file (default stdout)");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run verification suites; one line per suite");
  std::string suite_help = "Suites (name or number), or 'all':";
  for (const auto& info : verify::suites())
    suite_help += "\n  " + std::to_string(info.id) + " " + info.name + ": " + info.title;
  v->add_option("suites", ver.suites, suite_help)->required();
  v->add_option("--lambda", ver.lambda, "n 2^{-d} for the critical suite");
  v->add_option("--scale", ver.scale, "Multiplier on every Monte Carlo sample size");
  v->add_option("--seed", ver.seed, "Base seed");
  v->add_option("--jobs", ver.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  v->add_option("--out", ver.out, "Output file (default stdout)");

  LocalLimitArgs ll;
  auto* l = app.add_subcommand("locallimit", "Prefixes of the limiting process as JSONL");
  l->add_option("--d", ll.d, "Constraint radius (>= 1)");
  l->add_option("--len", ll.len, "Prefix length r; values are f(0..r)");
  l->add_option("--reps", ll.reps, "Number of prefixes");
  l->add_option("--seed", ll.seed, "Base seed");
  l->add_flag("--matrix", ll.matrix, "Print the transition matrix as CSV from,to,probability instead");
  l->add_option("--jobs", ll.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  l->add_option("--out", ll.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  cli::RunManifest manifest(argc, argv);
  int code = kOk;
  try {
    if (c->parsed()) {
      if (count.n == 0 && count.range.empty()) throw UsageError("count needs n (or --range)");
      code = cmd_count(count, manifest);
    } else if (s->parsed()) {
      code = cmd_sample(sample, manifest);
    } else if (t->parsed()) {
      code = cmd_stats(st, manifest);
    } else if (v->parsed()) {
      code = cmd_verify(ver, manifest);
    } else if (l->parsed()) {
      code = cmd_locallimit(ll, manifest);
    }
  } catch (const UsageError& e) {
    std::cerr << "homwalk: " << e.what() << '\n';
    code = kUsage;
  } catch (const Error& e) {
    std::cerr << "homwalk: " << to_string(e.code()) << ": " << e.what() << '\n';
    code = is_usage_code(e.code()) ? kUsage : kFailed;
  } catch (const std::exception& e) {
    std::cerr << "homwalk: " << e.what() << '\n';
    code = kFailed;
  }

  if (manifest_path == "-") {
    std::cerr << manifest.to_json(code) << '\n';
  } else if (manifest_path != "none") {
    std::ofstream mf(manifest_path);
    mf << manifest.to_json(code) << '\n';
  }
  return code;
}
