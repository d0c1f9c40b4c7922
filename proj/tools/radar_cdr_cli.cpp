// radar-cdr: simulate -> calibrate -> augment -> train -> eval -> report.

#include <bit>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "radar_cdr/dataset_io.hpp"
#include "radar_cdr/experiment.hpp"
#include "radar_cdr/report.hpp"

namespace fs = std::filesystem;
using namespace radar_cdr;

namespace {

struct SimulationFile {
  RadarConfig radar;
  SequenceOptions sequence;
};

// {"radar": {...}, "scenario": {...}}; both sections optional.
SimulationFile load_simulation_config(const std::string& path) {
  SimulationFile out;
  if (path.empty()) return out;
  const auto j = read_json_file(path);
  require(j.is_object(), ErrorCategory::invalid_argument, path + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "radar")
      out.radar = radar_config_from_json(value);
    else if (key == "scenario")
      out.sequence.envelopes = scenario_envelopes_from_json(value);
    else
      fail(ErrorCategory::invalid_argument, path + ": unknown section '" + key + "'");
  }
  validate(out.radar);
  return out;
}

void write_cube(const fs::path& path, const DataCube& cube) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCategory::io, "cannot write " + path.string());
  for (double v : cube.samples.values()) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) out.put(static_cast<char>((bits >> (8 * b)) & 0xff));
  }
}

std::vector<RdMap> maps_of(const Dataset& ds) {
  std::vector<RdMap> out;
  out.reserve(ds.frames.size());
  for (const auto& fm : ds.frames) out.push_back(fm.map);
  return out;
}

struct SimulateArgs {
  std::string domain = "sim";
  std::string cls = "all";
  int sequences = 1;
  int frames = 20;
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
  bool keep_raw = false;
};

void run_simulate(const SimulateArgs& a) {
  const Domain domain = parse_domain(a.domain);
  const auto cfg = load_simulation_config(a.config);
  std::vector<int> labels;
  if (a.cls == "all") {
    labels = {0, 1, 2};
  } else {
    try {
      labels = {static_cast<int>(occupancy_from_label(std::stoi(a.cls)))};
    } catch (const std::logic_error&) {
      fail(ErrorCategory::usage, "--class must be 0, 1, 2 or all");
    }
  }

  std::vector<FrameMap> frames;
  std::vector<DataCube> raw;
  for (int label : labels) {
    auto maps = generate_maps(domain, static_cast<Occupancy>(label), a.sequences, a.frames, cfg.radar, a.seed,
                              cfg.sequence, 0, a.keep_raw ? &raw : nullptr);
    frames.insert(frames.end(), maps.begin(), maps.end());
  }

  DatasetManifest base;
  base.radar_config = cfg.radar;
  base.domain = domain;
  base.seed = a.seed;
  base.extra = {{"generator", "simulate"},
                {"sequences_per_class", a.sequences},
                {"frames_per_sequence", a.frames},
                {"scenario", to_json(cfg.sequence.envelopes)}};
  const auto manifest = save_dataset(a.out, base, frames);

  if (a.keep_raw) {
    fs::create_directories(fs::path(a.out) / "raw");
    for (std::size_t i = 0; i < raw.size(); ++i) {
      fs::path p = manifest.frames[i].path;
      write_cube(fs::path(a.out) / "raw" / p.filename().replace_extension(".f64"), raw[i]);
    }
  }
  std::printf("wrote %zu frames to %s\n", frames.size(), a.out.c_str());
}

void run_calibrate(const std::string& in, const std::string& out, int frames) {
  const Dataset ds = load_dataset(in);
  require(ds.manifest.augmentation.method == AugmentMethod::none, ErrorCategory::contract,
          "calibration data must not be augmented");
  require(frames >= 1, ErrorCategory::usage, "--frames must be >= 1");
  auto maps = maps_of(ds);
  if (maps.size() > static_cast<std::size_t>(frames)) maps.resize(static_cast<std::size_t>(frames));
  const auto stats = calibrate_noise_floor(maps);
  write_json_file(out, to_json(stats));
  std::printf("m_t %.4f dB, s_t %.4f dB over %llu cells\n", stats.mean_db, stats.std_db,
              static_cast<unsigned long long>(stats.n_cells));
}

struct AugmentArgs {
  std::string in;
  std::string method;
  std::string stats;
  std::uint64_t seed = 0;
  std::string out;
  std::string config;  // optional random-dr ranges
};

void run_augment(const AugmentArgs& a) {
  AugmentParams params;
  params.method = parse_augment_method(a.method);
  if (params.method == AugmentMethod::cdr && a.stats.empty())
    fail(ErrorCategory::usage, "--method cdr requires --stats");
  if (!a.stats.empty()) params.stats = noise_floor_stats_from_json(read_json_file(a.stats));
  if (!a.config.empty()) params.random_dr = random_dr_ranges_from_json(read_json_file(a.config));

  const Dataset ds = load_dataset(a.in);
  require(ds.manifest.domain == Domain::sim, ErrorCategory::contract, "only simulated data may be augmented");
  require(ds.manifest.augmentation.method == AugmentMethod::none, ErrorCategory::contract,
          "input dataset is already augmented");
  const auto augmented = augment_maps(ds.frames, params, a.seed);

  DatasetManifest base = ds.manifest;
  base.augmentation.method = params.method;
  base.augmentation.seed = a.seed;
  if (params.method == AugmentMethod::random_dr) base.augmentation.random_dr = params.random_dr;
  if (params.method == AugmentMethod::cdr) base.augmentation.stats = params.stats;
  base.extra["source"] = fs::absolute(a.in).lexically_normal().string();
  save_dataset(a.out, base, augmented);
  std::printf("wrote %zu %s frames to %s\n", augmented.size(), std::string(to_string(params.method)).c_str(),
              a.out.c_str());
}

struct TrainArgs {
  std::string in;
  std::string task;
  std::string clip_from;
  std::string config;
  std::string out;
  std::string clip_out;
  std::optional<std::uint64_t> seed;
};

void run_train(const TrainArgs& a) {
  TrainConfig tc = a.config.empty() ? recommended_train_config() : train_config_from_json(read_json_file(a.config));
  tc.task = parse_task(a.task);
  if (a.seed) tc.seed = *a.seed;

  const Dataset ds = load_dataset(a.in);
  require(ds.manifest.domain == Domain::sim, ErrorCategory::contract, "training data must be simulated");
  const Dataset clip_source = a.clip_from.empty() || a.clip_from == a.in ? ds : load_dataset(a.clip_from);
  require(clip_source.manifest.domain == Domain::sim, ErrorCategory::contract,
          "the clip range must be estimated from simulated data");
  const ClipRange clip = estimate_clip_range(maps_of(clip_source));

  const auto result = train(build_dataset(ds.frames, clip, tc.task, Split::train), tc);
  const std::string method(to_string(ds.manifest.augmentation.method));
  const nlohmann::json meta = {{"task", std::string(to_string(tc.task))},
                               {"method", method},
                               {"seed", tc.seed},
                               {"clip", to_json(clip)},
                               {"train_config", to_json(tc)},
                               {"initial_loss", result.initial_loss},
                               {"loss_history", result.loss_history}};
  save_params(result.params, a.out, meta);
  write_json_file(a.clip_out.empty() ? a.out + ".clip.json" : a.clip_out, to_json(clip));
  std::printf("trained %s/%s: loss %.4f -> %.4f\n", method.c_str(), std::string(to_string(tc.task)).c_str(),
              result.initial_loss, result.loss_history.back());
}

struct EvalArgs {
  std::string model;
  std::string in;
  std::string clip;
  std::string out;
  std::string confusion;
  bool append = false;
};

void run_eval(const EvalArgs& a) {
  const auto model = load_params(a.model);
  const Dataset ds = load_dataset(a.in);
  require(ds.manifest.augmentation.method == AugmentMethod::none, ErrorCategory::contract,
          "test data must not be randomized (manifest augmentation is '" +
              std::string(to_string(ds.manifest.augmentation.method)) + "')");
  require(model.metadata.contains("task"), ErrorCategory::invalid_argument, "model metadata lacks the task");
  const Task task = parse_task(model.metadata.at("task").get<std::string>());
  require(num_classes(task) == model.params.num_classes(), ErrorCategory::shape_mismatch,
          "model head width does not match its task");
  const ClipRange clip = !a.clip.empty() ? clip_range_from_json(read_json_file(a.clip))
                                         : clip_range_from_json(model.metadata.at("clip"));

  const auto test = build_dataset(ds.frames, clip, task, Split::test);
  std::vector<int> labels;
  for (const auto& item : test.items) labels.push_back(item.label);
  const auto cm = confusion_matrix(predict_batch(model.params, test.items), labels, num_classes(task));

  MetricsRow row;
  row.method = model.metadata.value("method", std::string("unknown"));
  row.task = std::string(to_string(task));
  row.seed = model.metadata.value("seed", std::uint64_t{0});
  row.accuracy = overall_accuracy(cm);
  row.balanced_accuracy = balanced_accuracy(cm);

  const bool header = !a.append || !fs::exists(a.out) || fs::file_size(a.out) == 0;
  if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
  std::ofstream out(a.out, a.append ? std::ios::app : std::ios::trunc);
  require(static_cast<bool>(out), ErrorCategory::io, "cannot write " + a.out);
  if (header) out << kMetricsHeader << '\n';
  write_metrics_row(out, row);

  const fs::path confusion = !a.confusion.empty()
                                 ? fs::path(a.confusion)
                                 : fs::path(a.out).parent_path() / (fs::path(a.model).stem().string() + ".confusion.csv");
  std::ofstream cm_out(confusion);
  require(static_cast<bool>(cm_out), ErrorCategory::io, "cannot write " + confusion.string());
  write_confusion_csv(cm_out, cm);
  std::printf("%s %s: accuracy %.4f, balanced accuracy %.4f\n", row.method.c_str(), row.task.c_str(), row.accuracy,
              row.balanced_accuracy);
}

void run_report(const std::string& runs, const std::string& out, bool plots) {
  ReportOptions options;
  options.plots = plots;
  const auto summary = generate_report(runs, out, options);
  for (const auto& row : summary.alignment) {
    if (!row.wasserstein_empty_db) continue;
    std::printf("%s vs %s: W1(empty) %.3f dB\n", row.sim.c_str(), row.real.c_str(), *row.wasserstein_empty_db);
  }
  std::printf("report written to %s\n", out.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sim-to-real FMCW radar toolkit with calibrated noise-floor randomization"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Render labeled sequences into an RD-map dataset");
  simulate->add_option("--domain", sim.domain, "sim | pseudo-real")->check(CLI::IsMember({"sim", "pseudo-real", "pseudo_real"}));
  simulate->add_option("--class", sim.cls, "0 | 1 | 2 | all")->check(CLI::IsMember({"0", "1", "2", "all"}));
  simulate->add_option("--sequences", sim.sequences, "Sequences per class")->check(CLI::PositiveNumber);
  simulate->add_option("--frames", sim.frames, "Frames per sequence")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--out", sim.out, "Output dataset directory")->required();
  simulate->add_option("--config", sim.config, "JSON with optional radar and scenario sections");
  simulate->add_flag("--keep-raw", sim.keep_raw, "Also store the raw data cubes (float64)");

  std::string cal_in, cal_out;
  int cal_frames = 100;
  auto* calibrate = app.add_subcommand("calibrate", "Estimate noise-floor stats from an empty-room dataset");
  calibrate->add_option("--in", cal_in, "Pseudo-real empty-room dataset")->required();
  calibrate->add_option("--out", cal_out, "Output stats JSON")->required();
  calibrate->add_option("--frames", cal_frames, "Use the first N frames");

  AugmentArgs aug;
  auto* augment = app.add_subcommand("augment", "Apply noise-floor randomization to a simulated dataset");
  augment->add_option("--in", aug.in, "Input dataset")->required();
  augment->add_option("--method", aug.method, "none | random-dr | cdr")->required();
  augment->add_option("--stats", aug.stats, "Noise-floor stats JSON (required for cdr)");
  augment->add_option("--config", aug.config, "Random-DR ranges JSON");
  augment->add_option("--seed", aug.seed, "Augmentation seed");
  augment->add_option("--out", aug.out, "Output dataset directory")->required();

  TrainArgs tr;
  std::uint64_t train_seed = 0;
  auto* train_cmd = app.add_subcommand("train", "Train a classifier on a simulated dataset");
  train_cmd->add_option("--in", tr.in, "Training dataset")->required();
  train_cmd->add_option("--task", tr.task, "occupancy | counting")->required();
  train_cmd->add_option("--clip-from", tr.clip_from, "Dataset for the clip range (default: --in)");
  train_cmd->add_option("--config", tr.config, "Train config JSON");
  auto* seed_opt = train_cmd->add_option("--seed", train_seed, "Overrides the config seed");
  train_cmd->add_option("--out", tr.out, "Output model file")->required();
  train_cmd->add_option("--clip-out", tr.clip_out, "Clip range JSON (default: <out>.clip.json)");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate a model on an untouched pseudo-real dataset");
  eval->add_option("--model", ev.model, "Model file")->required();
  eval->add_option("--in", ev.in, "Test dataset")->required();
  eval->add_option("--clip", ev.clip, "Clip range JSON (default: from model metadata)");
  eval->add_option("--out", ev.out, "Metrics CSV")->required();
  eval->add_option("--confusion", ev.confusion, "Confusion CSV (default: <out dir>/<model stem>.confusion.csv)");
  eval->add_flag("--append", ev.append, "Append a row instead of overwriting");

  std::string runs, report_out;
  bool no_plots = false;
  auto* report = app.add_subcommand("report", "Histogram, energy-ratio and confusion diagnostics");
  report->add_option("--runs", runs, "Directory holding datasets and eval outputs")->required();
  report->add_option("--out", report_out, "Report directory")->required();
  report->add_flag("--no-plots", no_plots, "Skip PNG output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*simulate) run_simulate(sim);
    if (*calibrate) run_calibrate(cal_in, cal_out, cal_frames);
    if (*augment) run_augment(aug);
    if (*train_cmd) {
      if (*seed_opt) tr.seed = train_seed;
      run_train(tr);
    }
    if (*eval) run_eval(ev);
    if (*report) run_report(runs, report_out, !no_plots);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.category()) << ": " << e.what() << '\n';
    return e.category() == ErrorCategory::usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: io: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
