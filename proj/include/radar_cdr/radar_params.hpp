#pragma once

#include <nlohmann/json.hpp>

namespace radar_cdr {

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// FMCW waveform configuration. Defaults describe the 60 GHz indoor sensor
/// setup (882.35 MHz sweep, 1 MHz ADC, 0.256 ms chirps).
struct RadarConfig {
  double carrier_hz = 60e9;
  double bandwidth_hz = 882.35e6;
  double sample_rate_hz = 1e6;
  double chirp_duration_s = 0.256e-3;
  int samples_per_chirp = 256;
  int chirps_per_frame = 64;
  double frame_period_s = 0.1;

  friend bool operator==(const RadarConfig&, const RadarConfig&) = default;
};

struct DerivedParams {
  double chirp_slope_hz_per_s;
  double range_resolution_m;
  double max_range_m;
  double range_bin_m;
  double wavelength_m;
  double prf_hz;
  double doppler_bin_hz;
  double max_velocity_m_s;
  int range_bins;    // N_s / 2, real-valued ADC keeps the positive half only
  int doppler_bins;  // N_c
};

/// Throws Error(invalid_argument) on non-positive fields, a sample count that
/// disagrees with round(f_s * T_c), or chirps that do not fit in a frame.
void validate(const RadarConfig& config);

DerivedParams derive_params(const RadarConfig& config);

/// Reads a RadarConfig from a JSON object using exactly the field names of
/// the struct. Missing keys keep their defaults; unknown keys are rejected.
RadarConfig radar_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RadarConfig& config);

}  // namespace radar_cdr
