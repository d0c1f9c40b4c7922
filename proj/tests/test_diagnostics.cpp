#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "radar_cdr/diagnostics.hpp"

using namespace radar_cdr;

namespace {

RdMap constant_map(float value, std::size_t rows = 128, std::size_t cols = 64) {
  RdMap m;
  m.cells = Matrix<float>(rows, cols, value);
  return m;
}

Histogram gaussian_hist(double mean, double sd, std::uint64_t seed, const std::vector<double>& edges) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(mean, sd);
  RdMap m = constant_map(0.0f);
  for (float& v : m.cells.values()) v = static_cast<float>(g(rng));
  const std::vector<RdMap> maps{m};
  return magnitude_histogram(maps, edges);
}

}  // namespace

TEST(Diagnostics, HistogramBinningAndOverflow) {
  const auto edges = uniform_edges(0.0, 4.0, 4);
  ASSERT_EQ(edges.size(), 5u);
  EXPECT_DOUBLE_EQ(edges[2], 2.0);
  RdMap m = constant_map(0.0f, 1, 6);
  const float vals[6] = {-10.f, 0.f, 0.5f, 1.0f, 3.99f, 100.f};
  for (int i = 0; i < 6; ++i) m.cells(0, i) = vals[i];
  const std::vector<RdMap> maps{m};
  const auto h = magnitude_histogram(maps, edges);
  EXPECT_EQ(h.total, 6u);
  EXPECT_EQ(h.counts, (std::vector<std::uint64_t>{3, 1, 0, 2}));
  EXPECT_THROW(magnitude_histogram(maps, {1.0, 1.0}), Error);
  const std::vector<RdMap> none;
  EXPECT_THROW(magnitude_histogram(none, edges), Error);
}

TEST(Diagnostics, WassersteinOfPointMassesIsTheirDistance) {
  const auto edges = uniform_edges(-160.0, -60.0, 100);
  for (int shift : {0, 1, 7, 25}) {
    const std::vector<RdMap> a{constant_map(-120.5f)};
    const std::vector<RdMap> b{constant_map(static_cast<float>(-120.5 + shift))};
    EXPECT_NEAR(wasserstein1(magnitude_histogram(a, edges), magnitude_histogram(b, edges)), shift, 1e-12);
  }
}

TEST(Diagnostics, WassersteinMetricProperties) {
  const auto edges = default_histogram_edges();
  const auto a = gaussian_hist(-110.0, 5.0, 1, edges);
  const auto b = gaussian_hist(-104.0, 5.0, 2, edges);
  const auto c = gaussian_hist(-110.0, 9.0, 3, edges);
  EXPECT_DOUBLE_EQ(wasserstein1(a, a), 0.0);
  EXPECT_DOUBLE_EQ(wasserstein1(a, b), wasserstein1(b, a));
  EXPECT_LE(wasserstein1(a, c), wasserstein1(a, b) + wasserstein1(b, c) + 1e-12);
  // Translation by 6 dB moves all mass by 6 dB.
  EXPECT_NEAR(wasserstein1(a, b), 6.0, 0.15);
  // Equal means, sd 5 vs 9: W1 = E|X - Y| under the quantile coupling = 4 * E|Z| = 4 sqrt(2/pi).
  EXPECT_NEAR(wasserstein1(a, c), 4.0 * std::sqrt(2.0 / std::acos(-1.0)), 0.15);
  Histogram other = a;
  other.bin_edges = uniform_edges(-150.0, -50.0, 100);
  EXPECT_THROW(wasserstein1(a, other), Error);
}

TEST(Diagnostics, StaticEnergyRatioOracles) {
  EXPECT_NEAR(static_energy_ratio(constant_map(-100.0f)), 3.0 / 64.0, 1e-12);
  EXPECT_NEAR(static_energy_ratio(constant_map(-100.0f), 0), 1.0 / 64.0, 1e-12);
  EXPECT_NEAR(static_energy_ratio(constant_map(-100.0f), 4), 9.0 / 64.0, 1e-12);

  RdMap dc = constant_map(-240.0f);
  dc.cells(20, 32) = -50.0f;
  EXPECT_NEAR(static_energy_ratio(dc), 1.0, 1e-12);

  RdMap moving = constant_map(-240.0f);
  moving.cells(20, 40) = -50.0f;
  EXPECT_NEAR(static_energy_ratio(moving), 0.0, 1e-12);

  // Equal power in the band and out of it.
  RdMap half = constant_map(-240.0f);
  half.cells(5, 31) = -60.0f;
  half.cells(5, 10) = -60.0f;
  EXPECT_NEAR(static_energy_ratio(half), 0.5, 1e-9);

  EXPECT_THROW(static_energy_ratio(constant_map(0.0f), 32), Error);
  EXPECT_THROW(static_energy_ratio(constant_map(0.0f), -1), Error);
}
