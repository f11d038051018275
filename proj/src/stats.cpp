#include "homwalk/stats.hpp"

#include <ostream>

namespace homwalk::stats {

namespace {

void require_batch(const std::vector<HeightFunction>& samples) {
  if (samples.empty()) throw Error(ErrorCode::InvalidParameter, "no samples");
  for (const auto& f : samples)
    if (f.graph() != samples.front().graph())
      throw Error(ErrorCode::InvalidParameter, "samples mix " + describe(samples.front().graph()) + " and " +
                                                   describe(f.graph()));
}

}  // namespace

std::map<int, std::uint64_t> range_histogram(const std::vector<HeightFunction>& samples) {
  require_batch(samples);
  std::map<int, std::uint64_t> h;
  for (const auto& f : samples) ++h[range_size(f)];
  return h;
}

PointwiseMoments pointwise_moments(const std::vector<HeightFunction>& samples) {
  require_batch(samples);
  const auto nv = static_cast<std::size_t>(samples.front().size());
  PointwiseMoments m{std::vector<double>(nv, 0.0), std::vector<double>(nv, 0.0)};
  // Welford, per vertex.
  double count = 0;
  for (const auto& f : samples) {
    count += 1;
    for (std::size_t v = 0; v < nv; ++v) {
      const double x = f.values()[v];
      const double delta = x - m.mean[v];
      m.mean[v] += delta / count;
      m.variance[v] += delta * (x - m.mean[v]);
    }
  }
  for (double& s : m.variance) s = count > 1 ? s / (count - 1) : 0.0;
  return m;
}

void write_range_csv(std::ostream& out, const std::map<int, std::uint64_t>& histogram) {
  std::uint64_t total = 0;
  for (const auto& [r, c] : histogram) total += c;
  out << "range,count,frequency\n";
  for (const auto& [r, c] : histogram)
    out << r << ',' << c << ',' << static_cast<double>(c) / static_cast<double>(total) << '\n';
}

void write_moments_csv(std::ostream& out, const PointwiseMoments& m) {
  out << "vertex,mean,variance\n";
  for (std::size_t v = 0; v < m.mean.size(); ++v) out << v << ',' << m.mean[v] << ',' << m.variance[v] << '\n';
}

}  // namespace homwalk::stats
