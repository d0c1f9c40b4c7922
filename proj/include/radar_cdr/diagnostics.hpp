#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "radar_cdr/rd_pipeline.hpp"

namespace radar_cdr {

struct Histogram {
  std::vector<double> bin_edges;  // ascending, size = counts.size() + 1
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
};

/// `bins` equal-width bins spanning [lo, hi].
std::vector<double> uniform_edges(double lo, double hi, int bins);

/// Default diagnostic grid: 100 bins over [-160, -60] dB.
std::vector<double> default_histogram_edges();

/// Pools every cell of every map. Values below the first edge land in the
/// first bin, values at or above the last edge in the last bin.
Histogram magnitude_histogram(std::span<const RdMap> maps, const std::vector<double>& edges);

/// Earth mover's distance between the normalized histograms,
/// sum |CDF_a - CDF_b| * bin width, in dB.
double wasserstein1(const Histogram& a, const Histogram& b);

/// Fraction of linear power (10^(S/10)) in the Doppler columns with
/// |j - N_c/2| <= halfwidth_bins.
double static_energy_ratio(const RdMap& map, int halfwidth_bins = 1);

}  // namespace radar_cdr
