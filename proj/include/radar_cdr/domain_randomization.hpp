#pragma once

#include <cstdint>
#include <span>

#include <nlohmann/json.hpp>

#include "radar_cdr/rd_pipeline.hpp"
#include "radar_cdr/rng.hpp"
#include "radar_cdr/scene.hpp"

namespace radar_cdr {

/// Per-cell noise-floor field N(i,j) in dB.
struct NoiseMap {
  Matrix<float> values;
};

/// Envelope of the uncalibrated sampler: per frame, m ~ U(mean_range_db) and
/// s ~ U(std_range_db).
struct RandomDrRanges {
  Interval mean_range_db{-130.0, -100.0};
  Interval std_range_db{1.0, 4.0};
};

void validate(const RandomDrRanges& ranges);
nlohmann::json to_json(const RandomDrRanges& ranges);
RandomDrRanges random_dr_ranges_from_json(const nlohmann::json& j);

/// Global noise-floor statistics (m_t, s_t) pooled over calibration maps.
struct NoiseFloorStats {
  double mean_db = 0.0;
  double std_db = 0.0;
  std::uint64_t n_cells = 0;
};

void validate(const NoiseFloorStats& stats);
nlohmann::json to_json(const NoiseFloorStats& stats);
NoiseFloorStats noise_floor_stats_from_json(const nlohmann::json& j);

/// out(i,j) = max(S(i,j), N(i,j)) in dB, applied before clipping.
RdMap clamp_noise(const RdMap& map, const NoiseMap& noise);

/// Draws one (m, s) pair for the frame, then fills i.i.d. N(m, s^2) cells.
NoiseMap sample_random_dr(const RandomDrRanges& ranges, std::size_t rows, std::size_t cols, Rng& rng);

/// Population mean and standard deviation of all cells of the (unlabeled)
/// calibration maps. Labels are never consulted.
NoiseFloorStats calibrate_noise_floor(std::span<const RdMap> calibration_maps);

/// Samples N_t ~ N(m_t, s_t^2) i.i.d. per cell and clamps.
RdMap apply_cdr(const RdMap& map, const NoiseFloorStats& stats, Rng& rng);

RdMap apply_random_dr(const RdMap& map, const RandomDrRanges& ranges, Rng& rng);

}  // namespace radar_cdr
