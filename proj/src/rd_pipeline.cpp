#include "radar_cdr/rd_pipeline.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "viridis_table.hpp"

namespace radar_cdr {

namespace {

std::vector<double> hann_periodic(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / n));
  return w;
}

// Percentile with linear interpolation between order statistics; reorders `v`.
double percentile(std::vector<float>& v, double pct) {
  const double pos = pct / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
  const double a = v[lo];
  if (frac == 0.0 || lo + 1 >= v.size()) return a;
  const double b = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo) + 1, v.end());
  return a + frac * (b - a);
}

}  // namespace

void validate(const ClipRange& range) {
  require(std::isfinite(range.v_min) && std::isfinite(range.v_max) && range.v_min < range.v_max,
          ErrorCategory::invalid_argument,
          "clip range requires v_min < v_max (got " + std::to_string(range.v_min) + ", " +
              std::to_string(range.v_max) + ")");
}

nlohmann::json to_json(const ClipRange& range) { return {{"v_min", range.v_min}, {"v_max", range.v_max}}; }

ClipRange clip_range_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("v_min") && j.contains("v_max"), ErrorCategory::invalid_argument,
          "clip range JSON needs v_min and v_max");
  ClipRange r{j.at("v_min").get<double>(), j.at("v_max").get<double>()};
  validate(r);
  return r;
}

Matrix<std::complex<double>> range_doppler_spectrum(const DataCube& cube, SpectrumExtent extent) {
  const std::size_t ns = cube.samples.rows();
  const std::size_t nc = cube.samples.cols();
  require(ns >= 2 && ns % 2 == 0 && nc >= 1, ErrorCategory::shape_mismatch,
          "data cube must have an even, non-zero number of fast-time samples");
  const std::size_t rows = extent == SpectrumExtent::one_sided ? ns / 2 : ns;
  const auto w_fast = hann_periodic(ns);
  const auto w_slow = hann_periodic(nc);

  Matrix<std::complex<double>> out(rows, nc);
  std::vector<double> chirp(ns);
  std::vector<std::complex<double>> half(ns / 2 + 1);
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t n = 0; n < ns; ++n) chirp[n] = cube.samples(n, c) * w_fast[n];
    detail::fft_real_forward(chirp, half);
    for (std::size_t i = 0; i < rows; ++i) out(i, c) = i <= ns / 2 ? half[i] : std::conj(half[ns - i]);
  }

  std::vector<std::complex<double>> slow(nc);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < nc; ++c) slow[c] = out(i, c) * w_slow[c];
    detail::fft_forward(slow);
    for (std::size_t k = 0; k < nc; ++k) out(i, (k + nc / 2) % nc) = slow[k];
  }
  return out;
}

RdMap range_doppler(const DataCube& cube, const RadarConfig* expected) {
  if (expected != nullptr) {
    require(cube.samples.rows() == static_cast<std::size_t>(expected->samples_per_chirp) &&
                cube.samples.cols() == static_cast<std::size_t>(expected->chirps_per_frame),
            ErrorCategory::shape_mismatch,
            "data cube is " + std::to_string(cube.samples.rows()) + "x" + std::to_string(cube.samples.cols()) +
                ", radar config expects " + std::to_string(expected->samples_per_chirp) + "x" +
                std::to_string(expected->chirps_per_frame));
  }
  const auto spectrum = range_doppler_spectrum(cube, SpectrumExtent::one_sided);
  RdMap map;
  map.domain = cube.domain;
  map.cells = Matrix<float>(spectrum.rows(), spectrum.cols());
  auto src = spectrum.values();
  auto dst = map.cells.values();
  for (std::size_t k = 0; k < src.size(); ++k)
    dst[k] = static_cast<float>(20.0 * std::log10(std::abs(src[k]) + kDbEpsilon));
  return map;
}

ClipRange estimate_clip_range(std::span<const RdMap> maps, double lo_pct, double hi_pct) {
  require(!maps.empty(), ErrorCategory::invalid_argument, "estimate_clip_range needs at least one map");
  require(lo_pct >= 0.0 && lo_pct < hi_pct && hi_pct <= 100.0, ErrorCategory::invalid_argument,
          "percentiles must satisfy 0 <= lo < hi <= 100");
  std::size_t total = 0;
  for (const auto& m : maps) total += m.cells.size();
  require(total > 0, ErrorCategory::invalid_argument, "estimate_clip_range got only empty maps");
  std::vector<float> pool;
  pool.reserve(total);
  for (const auto& m : maps) pool.insert(pool.end(), m.cells.values().begin(), m.cells.values().end());
  ClipRange range;
  range.v_min = percentile(pool, lo_pct);
  range.v_max = percentile(pool, hi_pct);
  validate(range);
  return range;
}

NormalizedMap clip_normalize(const RdMap& map, const ClipRange& range) {
  validate(range);
  NormalizedMap out{Matrix<float>(map.cells.rows(), map.cells.cols())};
  const double span = range.v_max - range.v_min;
  auto src = map.cells.values();
  auto dst = out.values.values();
  for (std::size_t k = 0; k < src.size(); ++k) {
    const double v = std::clamp(static_cast<double>(src[k]), range.v_min, range.v_max);
    dst[k] = static_cast<float>((v - range.v_min) / span);
  }
  return out;
}

RdImage colormap_viridis(const NormalizedMap& normalized) {
  const auto& table = detail::kViridis;
  RdImage img;
  img.height = normalized.values.rows();
  img.width = normalized.values.cols();
  img.pixels.resize(img.height * img.width * 3);
  auto src = normalized.values.values();
  for (std::size_t k = 0; k < src.size(); ++k) {
    const double x = src[k];
    require(x >= 0.0 && x <= 1.0, ErrorCategory::invalid_argument,
            "colormap input " + std::to_string(x) + " outside [0, 1]");
    const double pos = x * (table.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(pos), table.size() - 2);
    const double f = pos - static_cast<double>(i);
    for (std::size_t ch = 0; ch < 3; ++ch)
      img.pixels[k * 3 + ch] = static_cast<float>(table[i][ch] + f * (table[i + 1][ch] - table[i][ch]));
  }
  return img;
}

RdImage downsample_rows(const RdImage& image) {
  require(image.height % 2 == 0, ErrorCategory::shape_mismatch, "downsample_rows needs an even image height");
  RdImage out;
  out.height = image.height / 2;
  out.width = image.width;
  out.pixels.resize(out.height * out.width * 3);
  for (std::size_t y = 0; y < out.height; ++y)
    for (std::size_t x = 0; x < out.width; ++x)
      for (std::size_t ch = 0; ch < 3; ++ch)
        out.at(y, x, ch) = 0.5f * (image.at(2 * y, x, ch) + image.at(2 * y + 1, x, ch));
  return out;
}

RdImage to_classifier_image(const RdMap& map, const ClipRange& range) {
  return downsample_rows(colormap_viridis(clip_normalize(map, range)));
}

void write_png(const RdImage& image, const std::filesystem::path& path) {
  require(image.height > 0 && image.width > 0 && image.pixels.size() == image.height * image.width * 3,
          ErrorCategory::shape_mismatch, "cannot write an empty or inconsistent image");
  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "wb"), &std::fclose);
  require(file != nullptr, ErrorCategory::io, "cannot open " + path.string() + " for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (png == nullptr || info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    fail(ErrorCategory::io, "libpng initialisation failed");
  }
  std::vector<png_byte> rowbuf(image.width * 3);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorCategory::io, "libpng failed while writing " + path.string());
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width), static_cast<png_uint_32>(image.height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t y = 0; y < image.height; ++y) {
    for (std::size_t k = 0; k < image.width * 3; ++k) {
      const double v = std::clamp(static_cast<double>(image.pixels[y * image.width * 3 + k]), 0.0, 1.0);
      rowbuf[k] = static_cast<png_byte>(std::lround(255.0 * v));
    }
    png_write_row(png, rowbuf.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace radar_cdr
