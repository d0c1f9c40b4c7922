#include "radar_cdr/experiment.hpp"

#include <algorithm>
#include <map>

namespace radar_cdr {

std::string_view to_string(AugmentMethod method) {
  switch (method) {
    case AugmentMethod::none: return "none";
    case AugmentMethod::random_dr: return "random_dr";
    case AugmentMethod::cdr: return "cdr";
  }
  return "none";
}

AugmentMethod parse_augment_method(std::string_view text) {
  if (text == "none") return AugmentMethod::none;
  if (text == "random_dr" || text == "random-dr") return AugmentMethod::random_dr;
  if (text == "cdr") return AugmentMethod::cdr;
  fail(ErrorCategory::invalid_argument, "unknown augmentation method '" + std::string(text) + "'");
}

TrainConfig recommended_train_config() {
  TrainConfig c;
  c.optimizer = Optimizer::adam;
  c.learning_rate = 0.003;
  c.epochs = 20;
  c.batch_size = 16;
  return c;
}

std::vector<FrameMap> generate_maps(Domain domain, Occupancy label, int sequences, int frames,
                                    const RadarConfig& config, std::uint64_t seed, const SequenceOptions& options,
                                    int first_sequence_id, std::vector<DataCube>* raw) {
  require(sequences >= 1 && frames >= 1, ErrorCategory::invalid_argument, "need at least one sequence and frame");
  std::vector<FrameMap> out;
  out.reserve(static_cast<std::size_t>(sequences) * static_cast<std::size_t>(frames));
  const auto cls = static_cast<std::uint64_t>(label);
  for (int s = 0; s < sequences; ++s) {
    const int id = first_sequence_id + s;
    const auto seq_seed = substream_seed(seed, "sequence", (cls << 32) | static_cast<std::uint64_t>(id));
    const auto seq = render_sequence(label, frames, domain, config, seq_seed, options);
    for (int f = 0; f < frames; ++f) {
      FrameMap fm{range_doppler(seq.frames[static_cast<std::size_t>(f)], &config), id, f};
      fm.map.label = static_cast<int>(label);
      out.push_back(std::move(fm));
    }
    if (raw != nullptr) raw->insert(raw->end(), seq.frames.begin(), seq.frames.end());
  }
  return out;
}

std::vector<FrameMap> augment_maps(std::span<const FrameMap> maps, const AugmentParams& params, std::uint64_t seed) {
  if (params.method == AugmentMethod::cdr)
    require(params.stats.has_value(), ErrorCategory::usage, "cdr augmentation requires noise floor stats");
  std::vector<FrameMap> out;
  out.reserve(maps.size());
  for (std::size_t k = 0; k < maps.size(); ++k) {
    FrameMap fm = maps[k];
    Rng rng = make_rng(seed, "augment", k);
    switch (params.method) {
      case AugmentMethod::none: break;
      case AugmentMethod::random_dr: fm.map = apply_random_dr(fm.map, params.random_dr, rng); break;
      case AugmentMethod::cdr: fm.map = apply_cdr(fm.map, *params.stats, rng); break;
    }
    out.push_back(std::move(fm));
  }
  return out;
}

LabeledDataset build_dataset(std::span<const FrameMap> maps, const ClipRange& clip, Task task, Split split) {
  LabeledDataset ds;
  ds.split = split;
  ds.domain = split == Split::train ? Domain::sim : Domain::pseudo_real;
  ds.items.reserve(maps.size());
  for (const auto& fm : maps) {
    require(fm.map.label.has_value(), ErrorCategory::invalid_argument, "dataset frame has no label");
    require(fm.map.domain == ds.domain, ErrorCategory::contract,
            split == Split::train ? "training frames must be simulated" : "test frames must be pseudo-real");
    ds.items.push_back({to_classifier_image(fm.map, clip), task_label(task, *fm.map.label)});
  }
  return ds;
}

std::vector<RdMap> plain_maps(std::span<const FrameMap> maps) {
  std::vector<RdMap> out;
  out.reserve(maps.size());
  for (const auto& fm : maps) out.push_back(fm.map);
  return out;
}

ComparisonData generate_comparison_data(const ExperimentConfig& c, std::uint64_t seed) {
  require(c.train_frames_per_class % c.frames_per_sequence == 0 &&
              c.test_frames_per_class % c.frames_per_sequence == 0,
          ErrorCategory::invalid_argument, "frames per class must be a multiple of frames_per_sequence");
  ComparisonData data;
  const auto train_seed = substream_seed(seed, "train-set");
  const auto test_seed = substream_seed(seed, "test-set");
  for (int label = 0; label < kNumOccupancyClasses; ++label) {
    auto sim = generate_maps(Domain::sim, static_cast<Occupancy>(label), c.train_frames_per_class / c.frames_per_sequence,
                             c.frames_per_sequence, c.radar, train_seed, c.sequences);
    data.sim_train.insert(data.sim_train.end(), sim.begin(), sim.end());
    auto real = generate_maps(Domain::pseudo_real, static_cast<Occupancy>(label),
                              c.test_frames_per_class / c.frames_per_sequence, c.frames_per_sequence, c.radar,
                              test_seed, c.sequences);
    data.real_test.insert(data.real_test.end(), real.begin(), real.end());
  }
  require(c.calibration_sequences > 0 && c.calibration_frames % c.calibration_sequences == 0,
          ErrorCategory::invalid_argument, "calibration_frames must be a multiple of calibration_sequences");
  data.calibration = generate_maps(Domain::pseudo_real, Occupancy::empty, c.calibration_sequences,
                                   c.calibration_frames / c.calibration_sequences, c.radar,
                                   substream_seed(seed, "calibration"), c.sequences);
  for (auto& fm : data.calibration) fm.map.label.reset();
  const auto cal = plain_maps(data.calibration);
  data.stats = calibrate_noise_floor(cal);
  return data;
}

std::vector<FrameMap> select_for_task(std::span<const FrameMap> maps, Task task) {
  if (task == Task::counting) return {maps.begin(), maps.end()};
  std::map<int, std::size_t> per_class;
  for (const auto& fm : maps) ++per_class[fm.map.label.value_or(-1)];
  std::map<int, std::size_t> taken;
  std::vector<FrameMap> out;
  for (const auto& fm : maps) {
    const int label = fm.map.label.value_or(-1);
    if (label > 0 && taken[label] >= per_class[label] / 2) continue;
    ++taken[label];
    out.push_back(fm);
  }
  return out;
}

MethodOutcome run_method(const ComparisonData& data, const ExperimentConfig& config, AugmentMethod method, Task task,
                         std::uint64_t seed) {
  AugmentParams params;
  params.method = method;
  params.random_dr = config.random_dr;
  params.stats = data.stats;

  const auto train_maps = select_for_task(data.sim_train, task);
  const auto augmented = augment_maps(train_maps, params, substream_seed(seed, "augment-train"));
  const auto pooled = plain_maps(augmented);
  const ClipRange clip = estimate_clip_range(pooled, config.clip_lo_pct, config.clip_hi_pct);

  TrainConfig tc = config.train;
  tc.task = task;
  tc.seed = substream_seed(seed, "classifier");
  const auto result = train(build_dataset(augmented, clip, task, Split::train), tc);

  const auto test_maps = select_for_task(data.real_test, task);
  const auto test = build_dataset(test_maps, clip, task, Split::test);
  std::vector<int> labels;
  for (const auto& item : test.items) labels.push_back(item.label);
  const auto predictions = predict_batch(result.params, test.items);

  MethodOutcome out;
  out.method = method;
  out.task = task;
  out.confusion = confusion_matrix(predictions, labels, num_classes(task));
  out.accuracy = overall_accuracy(out.confusion);
  out.balanced_accuracy = balanced_accuracy(out.confusion);
  out.clip = clip;
  out.loss_history = result.loss_history;
  return out;
}

std::vector<MethodOutcome> run_comparison(const ExperimentConfig& config, std::uint64_t seed) {
  const auto data = generate_comparison_data(config, seed);
  std::vector<MethodOutcome> out;
  for (Task task : {Task::occupancy, Task::counting})
    for (AugmentMethod method : {AugmentMethod::none, AugmentMethod::random_dr, AugmentMethod::cdr})
      out.push_back(run_method(data, config, method, task, seed));
  return out;
}

}  // namespace radar_cdr
