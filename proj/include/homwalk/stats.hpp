#pragma once

// Summaries of a batch of sampled height functions on one graph.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "homwalk/core.hpp"

namespace homwalk::stats {

/// Range value -> number of samples.
std::map<int, std::uint64_t> range_histogram(const std::vector<HeightFunction>& samples);

struct PointwiseMoments {
  std::vector<double> mean;      // one entry per vertex
  std::vector<double> variance;  // unbiased; zero for a single sample
};
/// Throws InvalidParameter on an empty batch or samples on different graphs.
PointwiseMoments pointwise_moments(const std::vector<HeightFunction>& samples);

/// range,count,frequency
void write_range_csv(std::ostream& out, const std::map<int, std::uint64_t>& histogram);
/// vertex,mean,variance
void write_moments_csv(std::ostream& out, const PointwiseMoments& m);

}  // namespace homwalk::stats
