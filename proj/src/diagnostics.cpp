#include "radar_cdr/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace radar_cdr {

std::vector<double> uniform_edges(double lo, double hi, int bins) {
  require(bins >= 1 && lo < hi, ErrorCategory::invalid_argument, "uniform_edges needs bins >= 1 and lo < hi");
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;
  return edges;
}

std::vector<double> default_histogram_edges() { return uniform_edges(-160.0, -60.0, 100); }

Histogram magnitude_histogram(std::span<const RdMap> maps, const std::vector<double>& edges) {
  require(edges.size() >= 2, ErrorCategory::invalid_argument, "histogram needs at least two edges");
  require(std::is_sorted(edges.begin(), edges.end()) &&
              std::adjacent_find(edges.begin(), edges.end()) == edges.end(),
          ErrorCategory::invalid_argument, "histogram edges must be strictly ascending");
  require(!maps.empty(), ErrorCategory::invalid_argument, "histogram of an empty map collection");

  Histogram h;
  h.bin_edges = edges;
  h.counts.assign(edges.size() - 1, 0);
  const std::size_t last = h.counts.size() - 1;
  for (const auto& m : maps) {
    for (float v : m.cells.values()) {
      const auto it = std::upper_bound(edges.begin(), edges.end(), static_cast<double>(v));
      const auto pos = static_cast<std::size_t>(it - edges.begin());
      const std::size_t bin = pos == 0 ? 0 : std::min(pos - 1, last);
      ++h.counts[bin];
      ++h.total;
    }
  }
  require(h.total > 0, ErrorCategory::invalid_argument, "histogram of maps without cells");
  return h;
}

double wasserstein1(const Histogram& a, const Histogram& b) {
  require(a.bin_edges == b.bin_edges, ErrorCategory::shape_mismatch, "histograms use different bin edges");
  require(a.total > 0 && b.total > 0, ErrorCategory::invalid_argument, "wasserstein1 of an empty histogram");
  double cdf_a = 0.0, cdf_b = 0.0, dist = 0.0;
  for (std::size_t i = 0; i + 1 < a.bin_edges.size(); ++i) {
    cdf_a += static_cast<double>(a.counts[i]) / static_cast<double>(a.total);
    cdf_b += static_cast<double>(b.counts[i]) / static_cast<double>(b.total);
    dist += std::abs(cdf_a - cdf_b) * (a.bin_edges[i + 1] - a.bin_edges[i]);
  }
  return dist;
}

double static_energy_ratio(const RdMap& map, int halfwidth_bins) {
  const auto cols = static_cast<int>(map.cells.cols());
  require(halfwidth_bins >= 0 && halfwidth_bins < cols / 2, ErrorCategory::invalid_argument,
          "halfwidth must satisfy 0 <= halfwidth < N_c/2");
  const int centre = cols / 2;
  double band = 0.0, total = 0.0;
  for (std::size_t i = 0; i < map.cells.rows(); ++i) {
    for (int j = 0; j < cols; ++j) {
      const double p = std::pow(10.0, map.cells(i, static_cast<std::size_t>(j)) / 10.0);
      total += p;
      if (std::abs(j - centre) <= halfwidth_bins) band += p;
    }
  }
  require(total > 0.0, ErrorCategory::invalid_argument, "RD map carries no energy");
  return band / total;
}

}  // namespace radar_cdr
