#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "radar_cdr/dataset_io.hpp"
#include "radar_cdr/diagnostics.hpp"
#include "radar_cdr/evaluation.hpp"

namespace radar_cdr {

/// Per-dataset diagnostic summary.
struct DatasetSummary {
  std::string name;  // path relative to the runs directory
  Domain domain = Domain::sim;
  AugmentMethod augmentation = AugmentMethod::none;
  std::map<int, std::size_t> frames_per_label;
  std::map<int, double> mean_static_energy_ratio;  // per label
};

/// Distance of one simulated dataset to one untouched pseudo-real dataset.
struct AlignmentRow {
  std::string sim;
  std::string real;
  std::optional<double> wasserstein_empty_db;          // both hold label 0
  std::map<int, double> static_energy_ratio_distance;  // per shared label
};

struct ReportSummary {
  std::vector<DatasetSummary> datasets;
  std::vector<AlignmentRow> alignment;
  std::vector<std::string> confusion_files;
};

struct ReportOptions {
  std::vector<double> histogram_edges = default_histogram_edges();
  int static_halfwidth_bins = 1;
  bool plots = true;  // PNG overlays and confusion heatmaps
};

/// Scans `runs_dir` (recursively, in sorted order) for dataset manifests and
/// `*.confusion.csv` files and writes into `out_dir`:
///   histograms.csv     dataset,label,bin_lo,bin_hi,count
///   energy_ratios.csv  one row per frame
///   alignment.csv      W1 on empty scenes and per-class mean ratio distance
///   summary.json       all of the above in aggregate form
///   histograms.png, energy_ratios.png, confusion/<name>.png  (when plots)
ReportSummary generate_report(const std::filesystem::path& runs_dir, const std::filesystem::path& out_dir,
                              const ReportOptions& options = {});

/// Row-normalized confusion heatmap, `cell_px` pixels per class.
RdImage confusion_heatmap(const ConfusionMatrix& cm, std::size_t cell_px = 48);

}  // namespace radar_cdr
