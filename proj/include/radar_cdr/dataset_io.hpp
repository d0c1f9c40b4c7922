#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radar_cdr/domain_randomization.hpp"
#include "radar_cdr/experiment.hpp"
#include "radar_cdr/radar_params.hpp"

namespace radar_cdr {

inline constexpr int kManifestVersion = 1;
inline constexpr const char* kManifestName = "manifest.json";

struct FrameRecord {
  std::string path;  // relative to the dataset directory
  int label = 0;
  int sequence_id = 0;
  int frame_index = 0;
};

struct AugmentationRecord {
  AugmentMethod method = AugmentMethod::none;
  std::optional<RandomDrRanges> random_dr;
  std::optional<NoiseFloorStats> stats;  // present iff method == cdr
  std::optional<std::uint64_t> seed;
};

/// One directory holds one dataset: this manifest plus one little-endian
/// float32 blob per RD map (row-major, range-major).
struct DatasetManifest {
  int version = kManifestVersion;
  RadarConfig radar_config;
  Domain domain = Domain::sim;
  std::map<int, int> classes;  // label -> frame count
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<FrameRecord> frames;
  AugmentationRecord augmentation;
  std::uint64_t seed = 0;
  nlohmann::json extra = nlohmann::json::object();  // free-form provenance
};

nlohmann::json to_json(const DatasetManifest& manifest);
/// Throws Error(version_mismatch) for an unsupported version and
/// Error(contract) when a cdr dataset lacks its stats.
DatasetManifest manifest_from_json(const nlohmann::json& j);

struct Dataset {
  DatasetManifest manifest;
  std::vector<FrameMap> frames;
};

/// Writes the frames and a manifest derived from `base` (frame list, class
/// counts and shape are filled in). Creates `dir` if needed.
DatasetManifest save_dataset(const std::filesystem::path& dir, const DatasetManifest& base,
                             std::span<const FrameMap> frames);

/// Loads and verifies a dataset: missing files, blob shape mismatches and
/// version mismatches are each reported with their own error category.
Dataset load_dataset(const std::filesystem::path& dir);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace radar_cdr
