#include "radar_cdr/common.hpp"

namespace radar_cdr {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::usage: return "usage";
    case ErrorCategory::invalid_argument: return "invalid_argument";
    case ErrorCategory::shape_mismatch: return "shape_mismatch";
    case ErrorCategory::missing_file: return "missing_file";
    case ErrorCategory::version_mismatch: return "version_mismatch";
    case ErrorCategory::io: return "io";
    case ErrorCategory::divergence: return "divergence";
    case ErrorCategory::contract: return "contract";
  }
  return "unknown";
}

std::string_view to_string(Domain domain) {
  return domain == Domain::sim ? "sim" : "pseudo_real";
}

Domain parse_domain(std::string_view text) {
  if (text == "sim") return Domain::sim;
  if (text == "pseudo_real" || text == "pseudo-real") return Domain::pseudo_real;
  fail(ErrorCategory::invalid_argument, "unknown domain '" + std::string(text) + "'");
}

Occupancy occupancy_from_label(int label) {
  require(label >= 0 && label < kNumOccupancyClasses, ErrorCategory::invalid_argument,
          "occupancy label must be 0, 1 or 2, got " + std::to_string(label));
  return static_cast<Occupancy>(label);
}

}  // namespace radar_cdr
