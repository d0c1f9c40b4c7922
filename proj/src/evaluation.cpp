#include "radar_cdr/evaluation.hpp"

#include <cstdio>
#include <numeric>

#include "radar_cdr/common.hpp"

namespace radar_cdr {

ConfusionMatrix ConfusionMatrix::from_rows(const std::vector<std::vector<std::uint64_t>>& rows) {
  ConfusionMatrix cm(static_cast<int>(rows.size()));
  for (std::size_t t = 0; t < rows.size(); ++t) {
    require(rows[t].size() == rows.size(), ErrorCategory::shape_mismatch, "confusion matrix must be square");
    for (std::size_t p = 0; p < rows.size(); ++p) cm.at(static_cast<int>(t), static_cast<int>(p)) = rows[t][p];
  }
  return cm;
}

std::uint64_t ConfusionMatrix::row_sum(int truth) const {
  std::uint64_t s = 0;
  for (int p = 0; p < num_classes; ++p) s += at(truth, p);
  return s;
}

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

ConfusionMatrix confusion_matrix(std::span<const int> predictions, std::span<const int> labels, int num_classes) {
  require(num_classes >= 1, ErrorCategory::invalid_argument, "confusion matrix needs at least one class");
  require(predictions.size() == labels.size(), ErrorCategory::shape_mismatch,
          "predictions (" + std::to_string(predictions.size()) + ") and labels (" + std::to_string(labels.size()) +
              ") differ in length");
  ConfusionMatrix cm(num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    require(labels[i] >= 0 && labels[i] < num_classes && predictions[i] >= 0 && predictions[i] < num_classes,
            ErrorCategory::invalid_argument, "class index out of range at position " + std::to_string(i));
    ++cm.at(labels[i], predictions[i]);
  }
  return cm;
}

double balanced_accuracy(const ConfusionMatrix& cm) {
  require(cm.num_classes >= 1, ErrorCategory::invalid_argument, "empty confusion matrix");
  double sum = 0.0;
  for (int k = 0; k < cm.num_classes; ++k) {
    const auto row = cm.row_sum(k);
    require(row > 0, ErrorCategory::invalid_argument,
            "class " + std::to_string(k) + " has no test items; balanced accuracy is undefined");
    sum += static_cast<double>(cm.at(k, k)) / static_cast<double>(row);
  }
  return sum / cm.num_classes;
}

double overall_accuracy(const ConfusionMatrix& cm) {
  const auto total = cm.total();
  require(total > 0, ErrorCategory::invalid_argument, "overall accuracy of an empty confusion matrix");
  std::uint64_t trace = 0;
  for (int k = 0; k < cm.num_classes; ++k) trace += cm.at(k, k);
  return static_cast<double>(trace) / static_cast<double>(total);
}

void write_metrics_row(std::ostream& out, const MetricsRow& row) {
  char buf[64];
  out << row.method << ',' << row.task << ',' << row.seed << ',';
  std::snprintf(buf, sizeof buf, "%.6f,%.6f", row.accuracy, row.balanced_accuracy);
  out << buf << '\n';
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm) {
  out << "true\\pred";
  for (int p = 0; p < cm.num_classes; ++p) out << ',' << p;
  out << '\n';
  for (int t = 0; t < cm.num_classes; ++t) {
    out << t;
    for (int p = 0; p < cm.num_classes; ++p) out << ',' << cm.at(t, p);
    out << '\n';
  }
}

ConfusionMatrix read_confusion_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCategory::io, "confusion CSV is empty");
  std::vector<std::vector<std::uint64_t>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::uint64_t> row;
    std::size_t start = line.find(',');
    require(start != std::string::npos, ErrorCategory::io, "malformed confusion CSV row: " + line);
    while (start != std::string::npos) {
      const std::size_t next = line.find(',', start + 1);
      const std::string cell = line.substr(start + 1, next == std::string::npos ? std::string::npos : next - start - 1);
      try {
        row.push_back(std::stoull(cell));
      } catch (const std::exception&) {
        fail(ErrorCategory::io, "malformed confusion CSV cell '" + cell + "'");
      }
      start = next;
    }
    rows.push_back(std::move(row));
  }
  return ConfusionMatrix::from_rows(rows);
}

}  // namespace radar_cdr
