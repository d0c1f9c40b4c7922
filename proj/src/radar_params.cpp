#include "radar_cdr/radar_params.hpp"

#include <cmath>
#include <set>
#include <string>

#include "radar_cdr/common.hpp"

namespace radar_cdr {

void validate(const RadarConfig& c) {
  auto positive = [](double v, const char* name) {
    require(std::isfinite(v) && v > 0.0, ErrorCategory::invalid_argument,
            std::string(name) + " must be finite and > 0");
  };
  positive(c.carrier_hz, "carrier_hz");
  positive(c.bandwidth_hz, "bandwidth_hz");
  positive(c.sample_rate_hz, "sample_rate_hz");
  positive(c.chirp_duration_s, "chirp_duration_s");
  positive(c.frame_period_s, "frame_period_s");
  require(c.samples_per_chirp > 0, ErrorCategory::invalid_argument, "samples_per_chirp must be > 0");
  require(c.chirps_per_frame > 0, ErrorCategory::invalid_argument, "chirps_per_frame must be > 0");
  require(c.samples_per_chirp % 2 == 0, ErrorCategory::invalid_argument,
          "samples_per_chirp must be even");

  const auto expected = std::lround(c.sample_rate_hz * c.chirp_duration_s);
  require(expected == c.samples_per_chirp, ErrorCategory::invalid_argument,
          "samples_per_chirp = " + std::to_string(c.samples_per_chirp) +
              " but round(sample_rate_hz * chirp_duration_s) = " + std::to_string(expected));
  // Small slack absorbs rounding in decimal config values.
  require(c.chirps_per_frame * c.chirp_duration_s <= c.frame_period_s * (1.0 + 1e-12),
          ErrorCategory::invalid_argument, "chirps_per_frame * chirp_duration_s exceeds frame_period_s");
}

DerivedParams derive_params(const RadarConfig& c) {
  validate(c);
  DerivedParams d{};
  d.chirp_slope_hz_per_s = c.bandwidth_hz / c.chirp_duration_s;
  d.range_resolution_m = kSpeedOfLight / (2.0 * c.bandwidth_hz);
  d.max_range_m = (c.sample_rate_hz / 2.0) * kSpeedOfLight / (2.0 * d.chirp_slope_hz_per_s);
  d.range_bins = c.samples_per_chirp / 2;
  d.doppler_bins = c.chirps_per_frame;
  d.range_bin_m = d.max_range_m / d.range_bins;
  d.wavelength_m = kSpeedOfLight / c.carrier_hz;
  d.prf_hz = 1.0 / c.chirp_duration_s;
  d.doppler_bin_hz = d.prf_hz / c.chirps_per_frame;
  d.max_velocity_m_s = d.wavelength_m * d.prf_hz / 4.0;
  return d;
}

RadarConfig radar_config_from_json(const nlohmann::json& j) {
  require(j.is_object(), ErrorCategory::invalid_argument, "radar config must be a JSON object");
  static const std::set<std::string> known = {"carrier_hz",       "bandwidth_hz",      "sample_rate_hz",
                                              "chirp_duration_s", "samples_per_chirp", "chirps_per_frame",
                                              "frame_period_s"};
  for (const auto& [key, value] : j.items()) {
    require(known.contains(key), ErrorCategory::invalid_argument, "unknown radar config key '" + key + "'");
    require(value.is_number(), ErrorCategory::invalid_argument, "radar config key '" + key + "' must be numeric");
  }
  RadarConfig c;
  c.carrier_hz = j.value("carrier_hz", c.carrier_hz);
  c.bandwidth_hz = j.value("bandwidth_hz", c.bandwidth_hz);
  c.sample_rate_hz = j.value("sample_rate_hz", c.sample_rate_hz);
  c.chirp_duration_s = j.value("chirp_duration_s", c.chirp_duration_s);
  c.samples_per_chirp = j.value("samples_per_chirp", c.samples_per_chirp);
  c.chirps_per_frame = j.value("chirps_per_frame", c.chirps_per_frame);
  c.frame_period_s = j.value("frame_period_s", c.frame_period_s);
  validate(c);
  return c;
}

nlohmann::json to_json(const RadarConfig& c) {
  return {
      {"carrier_hz", c.carrier_hz},
      {"bandwidth_hz", c.bandwidth_hz},
      {"sample_rate_hz", c.sample_rate_hz},
      {"chirp_duration_s", c.chirp_duration_s},
      {"samples_per_chirp", c.samples_per_chirp},
      {"chirps_per_frame", c.chirps_per_frame},
      {"frame_period_s", c.frame_period_s},
  };
}

}  // namespace radar_cdr
