#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radar_cdr/classifier.hpp"
#include "radar_cdr/domain_randomization.hpp"
#include "radar_cdr/evaluation.hpp"
#include "radar_cdr/fmcw_sim.hpp"
#include "radar_cdr/rd_pipeline.hpp"

namespace radar_cdr {

enum class AugmentMethod { none, random_dr, cdr };

std::string_view to_string(AugmentMethod method);
/// Accepts "none", "random_dr", "random-dr" and "cdr".
AugmentMethod parse_augment_method(std::string_view text);

/// RD map plus its provenance within a generated dataset.
struct FrameMap {
  RdMap map;
  int sequence_id = 0;
  int frame_index = 0;
};

/// Renders `sequences` sequences of `frames` frames of one class and converts
/// them to RD maps. Sequence s of class c uses substream (seed, c, s), so any
/// subset of sequences can be regenerated independently. When `raw` is given
/// the data cubes are appended to it in the same order.
std::vector<FrameMap> generate_maps(Domain domain, Occupancy label, int sequences, int frames,
                                    const RadarConfig& config, std::uint64_t seed,
                                    const SequenceOptions& options = {}, int first_sequence_id = 0,
                                    std::vector<DataCube>* raw = nullptr);

struct AugmentParams {
  AugmentMethod method = AugmentMethod::none;
  RandomDrRanges random_dr;
  std::optional<NoiseFloorStats> stats;  // required for cdr
};

/// Applies the noise-floor clamp to every map. Frame k draws from substream
/// (seed, "augment", k).
std::vector<FrameMap> augment_maps(std::span<const FrameMap> maps, const AugmentParams& params, std::uint64_t seed);

/// Converts maps to classifier images with the given clip range and maps
/// occupancy labels to task classes. Maps without a label are rejected.
LabeledDataset build_dataset(std::span<const FrameMap> maps, const ClipRange& clip, Task task, Split split);

std::vector<RdMap> plain_maps(std::span<const FrameMap> maps);

/// Adam at a small step size. Plain SGD at the TrainConfig defaults stalls on
/// RD images, whose class evidence covers only a few percent of the pixels.
TrainConfig recommended_train_config();

/// Everything needed for the three-method sim-to-real comparison.
struct ExperimentConfig {
  RadarConfig radar;
  SequenceOptions sequences;
  int train_frames_per_class = 600;
  int test_frames_per_class = 300;
  int frames_per_sequence = 20;
  int calibration_frames = 100;
  // Calibration frames are split evenly over this many empty recordings.
  int calibration_sequences = 5;
  RandomDrRanges random_dr;
  double clip_lo_pct = 1.0;
  double clip_hi_pct = 99.9;
  TrainConfig train = recommended_train_config();  // task and seed are set per run
};

struct MethodOutcome {
  AugmentMethod method = AugmentMethod::none;
  Task task = Task::occupancy;
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  double balanced_accuracy = 0.0;
  ClipRange clip;
  std::vector<double> loss_history;
};

struct ComparisonData {
  std::vector<FrameMap> sim_train;   // labels 0, 1, 2; train_frames_per_class each
  std::vector<FrameMap> real_test;   // labels 0, 1, 2; test_frames_per_class each
  std::vector<FrameMap> calibration; // unlabeled pseudo-real empty sequences
  NoiseFloorStats stats;
};

ComparisonData generate_comparison_data(const ExperimentConfig& config, std::uint64_t seed);

/// Class-balanced view for a task: counting keeps every frame; occupancy keeps
/// all empty frames plus the first half of each occupied class.
std::vector<FrameMap> select_for_task(std::span<const FrameMap> maps, Task task);

/// Trains on the augmented simulated set and evaluates on the untouched
/// pseudo-real set, for one method and task.
MethodOutcome run_method(const ComparisonData& data, const ExperimentConfig& config, AugmentMethod method,
                         Task task, std::uint64_t seed);

/// All three methods on both tasks.
std::vector<MethodOutcome> run_comparison(const ExperimentConfig& config, std::uint64_t seed);

}  // namespace radar_cdr
