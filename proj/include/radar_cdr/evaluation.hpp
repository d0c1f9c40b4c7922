#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace radar_cdr {

/// counts[t][p]: rows are true classes, columns predicted classes.
struct ConfusionMatrix {
  int num_classes = 0;
  std::vector<std::uint64_t> counts;

  explicit ConfusionMatrix(int k = 0) : num_classes(k), counts(static_cast<std::size_t>(k) * k, 0) {}
  static ConfusionMatrix from_rows(const std::vector<std::vector<std::uint64_t>>& rows);

  std::uint64_t& at(int truth, int predicted) { return counts[static_cast<std::size_t>(truth * num_classes + predicted)]; }
  std::uint64_t at(int truth, int predicted) const {
    return counts[static_cast<std::size_t>(truth * num_classes + predicted)];
  }
  std::uint64_t row_sum(int truth) const;
  std::uint64_t total() const;
};

ConfusionMatrix confusion_matrix(std::span<const int> predictions, std::span<const int> labels, int num_classes);

/// Macro-averaged recall. A class with no test items is an error.
double balanced_accuracy(const ConfusionMatrix& cm);

/// trace / total.
double overall_accuracy(const ConfusionMatrix& cm);

struct MetricsRow {
  std::string method;
  std::string task;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  double balanced_accuracy = 0.0;
};

inline constexpr const char* kMetricsHeader = "method,task,seed,accuracy,balanced_accuracy";

void write_metrics_row(std::ostream& out, const MetricsRow& row);
void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm);
/// Inverse of write_confusion_csv.
ConfusionMatrix read_confusion_csv(std::istream& in);

}  // namespace radar_cdr
