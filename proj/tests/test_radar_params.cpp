#include <gtest/gtest.h>

#include "radar_cdr/common.hpp"
#include "radar_cdr/radar_params.hpp"

using namespace radar_cdr;

namespace {

void expect_within_pct(double actual, double expected, double pct) {
  EXPECT_NEAR(actual, expected, std::abs(expected) * pct / 100.0) << "actual " << actual;
}

}  // namespace

TEST(RadarParams, QuotedSensorFigures) {
  const auto d = derive_params(RadarConfig{});
  expect_within_pct(d.chirp_slope_hz_per_s, 3.44e12, 1.0);
  expect_within_pct(d.range_resolution_m, 0.17, 1.0);
  expect_within_pct(d.max_range_m, 21.7, 1.0);
}

TEST(RadarParams, DopplerFiguresMatchHandCalculation) {
  const RadarConfig c;
  const auto d = derive_params(c);
  // Independent evaluation: PRF = 1/Tc, bin = PRF/Nc, vmax = lambda * PRF / 4.
  const double prf = 1.0 / 0.256e-3;
  const double lambda = 299792458.0 / 60e9;
  EXPECT_NEAR(d.doppler_bin_hz, prf / 64.0, 1e-9);
  EXPECT_NEAR(d.doppler_bin_hz, 61.04, 0.01);
  EXPECT_NEAR(d.max_velocity_m_s, lambda * prf / 4.0, 1e-12);
  EXPECT_NEAR(d.max_velocity_m_s, 4.88, 0.01);
  EXPECT_EQ(d.range_bins, 128);
  EXPECT_EQ(d.doppler_bins, 64);
}

TEST(RadarParams, RangeBinMatchesResolution) {
  const auto d = derive_params(RadarConfig{});
  expect_within_pct(d.range_bin_m, d.range_resolution_m, 1.0);
  expect_within_pct(d.max_range_m, d.range_resolution_m * 128, 1.0);
}

TEST(RadarParams, DoublingBandwidthHalvesResolution) {
  RadarConfig a;
  RadarConfig b = a;
  b.bandwidth_hz *= 2.0;
  EXPECT_DOUBLE_EQ(derive_params(b).range_resolution_m * 2.0, derive_params(a).range_resolution_m);
}

TEST(RadarParams, Deterministic) {
  const auto a = derive_params(RadarConfig{});
  const auto b = derive_params(RadarConfig{});
  EXPECT_EQ(a.chirp_slope_hz_per_s, b.chirp_slope_hz_per_s);
  EXPECT_EQ(a.max_velocity_m_s, b.max_velocity_m_s);
}

TEST(RadarParams, RejectsInvalidConfigs) {
  RadarConfig c;
  c.bandwidth_hz = 0.0;
  EXPECT_THROW(derive_params(c), Error);
  c = RadarConfig{};
  c.samples_per_chirp = 200;  // disagrees with fs * Tc = 256
  EXPECT_THROW(derive_params(c), Error);
  c = RadarConfig{};
  c.chirps_per_frame = 1000;  // 256 ms of chirps in a 100 ms frame
  EXPECT_THROW(derive_params(c), Error);
  c = RadarConfig{};
  c.frame_period_s = -1.0;
  EXPECT_THROW(validate(c), Error);
}

TEST(RadarParams, JsonRoundTripAndUnknownKeys) {
  RadarConfig c;
  c.chirps_per_frame = 32;
  EXPECT_EQ(radar_config_from_json(to_json(c)), c);
  EXPECT_EQ(radar_config_from_json(nlohmann::json::object()), RadarConfig{});
  try {
    radar_config_from_json({{"carrier_hz", 60e9}, {"antennas", 4}});
    FAIL() << "unknown key accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::invalid_argument);
    EXPECT_NE(std::string(e.what()).find("antennas"), std::string::npos);
  }
}
