#include "radar_cdr/domain_randomization.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace radar_cdr {

void validate(const RandomDrRanges& r) {
  require(r.mean_range_db.lo <= r.mean_range_db.hi, ErrorCategory::invalid_argument,
          "random DR mean range needs lo <= hi");
  require(r.std_range_db.lo > 0.0 && r.std_range_db.lo <= r.std_range_db.hi, ErrorCategory::invalid_argument,
          "random DR std range needs 0 < lo <= hi");
}

nlohmann::json to_json(const RandomDrRanges& r) {
  return {{"mean_range_db", {r.mean_range_db.lo, r.mean_range_db.hi}},
          {"std_range_db", {r.std_range_db.lo, r.std_range_db.hi}}};
}

RandomDrRanges random_dr_ranges_from_json(const nlohmann::json& j) {
  RandomDrRanges r;
  require(j.is_object(), ErrorCategory::invalid_argument, "random DR ranges must be a JSON object");
  if (j.contains("mean_range_db"))
    r.mean_range_db = {j["mean_range_db"].at(0).get<double>(), j["mean_range_db"].at(1).get<double>()};
  if (j.contains("std_range_db"))
    r.std_range_db = {j["std_range_db"].at(0).get<double>(), j["std_range_db"].at(1).get<double>()};
  validate(r);
  return r;
}

void validate(const NoiseFloorStats& s) {
  require(std::isfinite(s.mean_db) && std::isfinite(s.std_db) && s.std_db >= 0.0 && s.n_cells >= 1,
          ErrorCategory::invalid_argument, "noise floor stats need finite mean, std >= 0 and n_cells >= 1");
}

nlohmann::json to_json(const NoiseFloorStats& s) {
  return {{"mean_db", s.mean_db}, {"std_db", s.std_db}, {"n_cells", s.n_cells}};
}

NoiseFloorStats noise_floor_stats_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("mean_db") && j.contains("std_db") && j.contains("n_cells"),
          ErrorCategory::invalid_argument, "noise floor stats JSON needs mean_db, std_db and n_cells");
  NoiseFloorStats s{j.at("mean_db").get<double>(), j.at("std_db").get<double>(),
                    j.at("n_cells").get<std::uint64_t>()};
  validate(s);
  return s;
}

RdMap clamp_noise(const RdMap& map, const NoiseMap& noise) {
  require(map.cells.same_shape(noise.values), ErrorCategory::shape_mismatch,
          "noise map " + std::to_string(noise.values.rows()) + "x" + std::to_string(noise.values.cols()) +
              " does not match RD map " + std::to_string(map.cells.rows()) + "x" +
              std::to_string(map.cells.cols()));
  RdMap out = map;
  auto dst = out.cells.values();
  auto n = noise.values.values();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = std::max(dst[k], n[k]);
  return out;
}

namespace {

NoiseMap gaussian_field(double mean, double stddev, std::size_t rows, std::size_t cols, Rng& rng) {
  NoiseMap noise{Matrix<float>(rows, cols)};
  if (stddev == 0.0) {
    std::fill(noise.values.values().begin(), noise.values.values().end(), static_cast<float>(mean));
    return noise;
  }
  std::normal_distribution<double> dist(mean, stddev);
  for (float& v : noise.values.values()) v = static_cast<float>(dist(rng));
  return noise;
}

}  // namespace

NoiseMap sample_random_dr(const RandomDrRanges& ranges, std::size_t rows, std::size_t cols, Rng& rng) {
  validate(ranges);
  const double m = uniform(rng, ranges.mean_range_db.lo, ranges.mean_range_db.hi);
  const double s = uniform(rng, ranges.std_range_db.lo, ranges.std_range_db.hi);
  return gaussian_field(m, s, rows, cols, rng);
}

NoiseFloorStats calibrate_noise_floor(std::span<const RdMap> maps) {
  require(!maps.empty(), ErrorCategory::invalid_argument, "calibration needs at least one RD map");
  // Two passes in double: the pool is large but of modest dynamic range.
  double sum = 0.0;
  std::uint64_t n = 0;
  for (const auto& m : maps) {
    for (float v : m.cells.values()) sum += v;
    n += m.cells.size();
  }
  require(n > 0, ErrorCategory::invalid_argument, "calibration maps contain no cells");
  const double mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (const auto& m : maps)
    for (float v : m.cells.values()) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(n)), n};
}

RdMap apply_cdr(const RdMap& map, const NoiseFloorStats& stats, Rng& rng) {
  validate(stats);
  return clamp_noise(map, gaussian_field(stats.mean_db, stats.std_db, map.cells.rows(), map.cells.cols(), rng));
}

RdMap apply_random_dr(const RdMap& map, const RandomDrRanges& ranges, Rng& rng) {
  return clamp_noise(map, sample_random_dr(ranges, map.cells.rows(), map.cells.cols(), rng));
}

}  // namespace radar_cdr
