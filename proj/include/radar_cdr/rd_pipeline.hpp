#pragma once

#include <complex>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "radar_cdr/common.hpp"
#include "radar_cdr/fmcw_sim.hpp"

namespace radar_cdr {

/// Range-Doppler magnitude map in dB. Rows are range bins 0..N_s/2-1, columns
/// are Doppler bins with zero Doppler at column N_c/2.
struct RdMap {
  Matrix<float> cells;
  Domain domain = Domain::sim;
  std::optional<int> label;

  std::size_t range_bins() const { return cells.rows(); }
  std::size_t doppler_bins() const { return cells.cols(); }
};

/// Clipped and normalized RD map, values in [0, 1].
struct NormalizedMap {
  Matrix<float> values;
};

struct ClipRange {
  double v_min = 0.0;
  double v_max = 1.0;
};

void validate(const ClipRange& range);
nlohmann::json to_json(const ClipRange& range);
ClipRange clip_range_from_json(const nlohmann::json& j);

/// H x W x 3 image, channel values in [0, 1], stored interleaved (HWC).
struct RdImage {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<float> pixels;

  float& at(std::size_t y, std::size_t x, std::size_t ch) { return pixels[(y * width + x) * 3 + ch]; }
  float at(std::size_t y, std::size_t x, std::size_t ch) const { return pixels[(y * width + x) * 3 + ch]; }
};

inline constexpr double kDbEpsilon = 1e-12;

enum class SpectrumExtent {
  one_sided,  // range bins 0..N_s/2-1, as used for RD maps
  full,       // all N_s range bins
};

/// Hann-windowed 2D DFT of a cube, unnormalized, Doppler-shifted so zero
/// Doppler sits at column N_c/2.
Matrix<std::complex<double>> range_doppler_spectrum(const DataCube& cube,
                                                    SpectrumExtent extent = SpectrumExtent::one_sided);

/// 20*log10(|X| + 1e-12) of the one-sided spectrum. When `expected` is given
/// the cube must match its N_s x N_c shape (Error(shape_mismatch) otherwise).
RdMap range_doppler(const DataCube& cube, const RadarConfig* expected = nullptr);

/// Pooled lo/hi percentiles (linear interpolation between order statistics)
/// of every cell in `maps`.
ClipRange estimate_clip_range(std::span<const RdMap> maps, double lo_pct = 1.0, double hi_pct = 99.9);

NormalizedMap clip_normalize(const RdMap& map, const ClipRange& range);

/// Per-cell lookup into the 256-entry viridis table with linear interpolation.
RdImage colormap_viridis(const NormalizedMap& normalized);

/// Averages adjacent row pairs: (2H) x W x 3 -> H x W x 3.
RdImage downsample_rows(const RdImage& image);

/// clip_normalize -> colormap_viridis -> downsample_rows; the classifier input.
RdImage to_classifier_image(const RdMap& map, const ClipRange& range);

/// Writes an 8-bit RGB PNG with value round(255 * channel).
void write_png(const RdImage& image, const std::filesystem::path& path);

}  // namespace radar_cdr
