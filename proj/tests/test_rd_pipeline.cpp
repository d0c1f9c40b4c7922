#include <gtest/gtest.h>
#include <png.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>

#include "radar_cdr/rd_pipeline.hpp"

using namespace radar_cdr;

namespace {

constexpr double kPi = std::numbers::pi;

DataCube random_cube(std::size_t ns, std::size_t nc, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  DataCube cube;
  cube.samples = Matrix<double>(ns, nc);
  for (double& v : cube.samples.values()) v = g(rng);
  return cube;
}

double hann(std::size_t i, std::size_t n) { return 0.5 - 0.5 * std::cos(2.0 * kPi * i / n); }

// Direct O(N^2) evaluation of the windowed 2D DFT at range bin k and signed Doppler bin m.
std::complex<double> brute_dft(const DataCube& cube, std::size_t k, int m) {
  const std::size_t ns = cube.samples.rows(), nc = cube.samples.cols();
  std::complex<double> acc = 0.0;
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t n = 0; n < ns; ++n) {
      const double ang = -2.0 * kPi * (static_cast<double>(k * n) / ns + static_cast<double>(m) * c / nc);
      acc += hann(n, ns) * hann(c, nc) * cube.samples(n, c) * std::polar(1.0, ang);
    }
  return acc;
}

RdMap map_of(std::vector<float> values, std::size_t rows, std::size_t cols) {
  RdMap m;
  m.cells = Matrix<float>(rows, cols);
  std::copy(values.begin(), values.end(), m.cells.values().begin());
  return m;
}

double luminance(const RdImage& img, std::size_t x) {
  return 0.2126 * img.at(0, x, 0) + 0.7152 * img.at(0, x, 1) + 0.0722 * img.at(0, x, 2);
}

}  // namespace

TEST(RdPipeline, SpectrumMatchesDirectDft) {
  const auto cube = random_cube(16, 8, 1);
  const auto full = range_doppler_spectrum(cube, SpectrumExtent::full);
  ASSERT_EQ(full.rows(), 16u);
  ASSERT_EQ(full.cols(), 8u);
  for (std::size_t k = 0; k < 16; ++k)
    for (std::size_t col = 0; col < 8; ++col) {
      const auto expected = brute_dft(cube, k, static_cast<int>(col) - 4);
      EXPECT_NEAR(std::abs(full(k, col) - expected), 0.0, 1e-9) << k << "," << col;
    }
  const auto half = range_doppler_spectrum(cube);
  ASSERT_EQ(half.rows(), 8u);
  for (std::size_t k = 0; k < 8; ++k)
    for (std::size_t col = 0; col < 8; ++col) EXPECT_EQ(half(k, col), full(k, col));
}

TEST(RdPipeline, ParsevalOverFullExtent) {
  const auto cube = random_cube(256, 64, 2);
  const auto full = range_doppler_spectrum(cube, SpectrumExtent::full);
  double spectral = 0.0, temporal = 0.0;
  for (const auto& z : full.values()) spectral += std::norm(z);
  for (std::size_t n = 0; n < 256; ++n)
    for (std::size_t c = 0; c < 64; ++c) temporal += std::pow(hann(n, 256) * hann(c, 64) * cube.samples(n, c), 2);
  EXPECT_NEAR(spectral / (256.0 * 64.0 * temporal), 1.0, 1e-10);
}

TEST(RdPipeline, SilenceMapsToEpsilonFloor) {
  DataCube cube;
  cube.samples = Matrix<double>(256, 64, 0.0);
  const auto map = range_doppler(cube);
  EXPECT_EQ(map.range_bins(), 128u);
  EXPECT_EQ(map.doppler_bins(), 64u);
  for (float v : map.cells.values()) EXPECT_FLOAT_EQ(v, -240.0f);
}

TEST(RdPipeline, ShapeCheckedAgainstConfig) {
  const RadarConfig cfg;
  DataCube cube;
  cube.samples = Matrix<double>(128, 64);
  try {
    range_doppler(cube, &cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::shape_mismatch);
  }
  cube.samples = Matrix<double>(255, 64);
  EXPECT_THROW(range_doppler(cube), Error);
}

TEST(RdPipeline, ClipPercentilesInterpolateOrderStatistics) {
  std::vector<float> v(101);
  for (int i = 0; i <= 100; ++i) v[i] = static_cast<float>(100 - i);
  const std::vector<RdMap> maps{map_of(v, 1, 101)};
  const auto r = estimate_clip_range(maps);
  EXPECT_NEAR(r.v_min, 1.0, 1e-9);
  EXPECT_NEAR(r.v_max, 99.9, 1e-4);
  const auto r2 = estimate_clip_range(maps, 12.5, 50.0);
  EXPECT_NEAR(r2.v_min, 12.5, 1e-9);
  EXPECT_NEAR(r2.v_max, 50.0, 1e-9);
}

TEST(RdPipeline, ClipPercentilesOfGaussianPool) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(-110.0, 2.0);
  std::vector<RdMap> maps;
  for (int m = 0; m < 25; ++m) {
    std::vector<float> v(128 * 64);
    for (float& x : v) x = static_cast<float>(g(rng));
    maps.push_back(map_of(v, 128, 64));
  }
  const auto r = estimate_clip_range(maps);
  // Standard normal quantiles: z(0.01) = -2.3263, z(0.999) = 3.0902.
  EXPECT_NEAR(r.v_min, -110.0 - 2.0 * 2.3263, 0.06);
  EXPECT_NEAR(r.v_max, -110.0 + 2.0 * 3.0902, 0.15);
}

TEST(RdPipeline, ClipRangeValidation) {
  EXPECT_THROW(validate(ClipRange{1.0, 1.0}), Error);
  EXPECT_THROW(clip_range_from_json(nlohmann::json{{"v_min", 2.0}, {"v_max", 1.0}}), Error);
  const ClipRange r{-120.0, -60.0};
  const auto back = clip_range_from_json(to_json(r));
  EXPECT_EQ(back.v_min, r.v_min);
  EXPECT_EQ(back.v_max, r.v_max);
  const std::vector<RdMap> none;
  EXPECT_THROW(estimate_clip_range(none), Error);
}

TEST(RdPipeline, ClipNormalizeIsAffineAndSaturates) {
  const auto map = map_of({-200.f, -120.f, -100.f, -90.f, -80.f, 0.f}, 2, 3);
  const auto n = clip_normalize(map, {-120.0, -80.0});
  const std::vector<float> expected{0.f, 0.f, 0.5f, 0.75f, 1.f, 1.f};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(n.values.values()[k], expected[k], 1e-7);
}

TEST(RdPipeline, ViridisEndpointsAndLuminance) {
  NormalizedMap ramp{Matrix<float>(1, 256)};
  for (std::size_t i = 0; i < 256; ++i) ramp.values(0, i) = static_cast<float>(i / 255.0);
  const auto img = colormap_viridis(ramp);
  EXPECT_NEAR(img.at(0, 0, 0), 0.267004, 1e-5);
  EXPECT_NEAR(img.at(0, 0, 1), 0.004874, 1e-5);
  EXPECT_NEAR(img.at(0, 0, 2), 0.329415, 1e-5);
  EXPECT_NEAR(img.at(0, 255, 0), 0.993248, 1e-5);
  EXPECT_NEAR(img.at(0, 255, 1), 0.906157, 1e-5);
  EXPECT_NEAR(img.at(0, 255, 2), 0.143936, 1e-5);
  for (std::size_t x = 1; x < 256; ++x) EXPECT_GT(luminance(img, x), luminance(img, x - 1));
  NormalizedMap bad{Matrix<float>(1, 1, 1.5f)};
  EXPECT_THROW(colormap_viridis(bad), Error);
}

TEST(RdPipeline, DownsampleAveragesRowPairs) {
  RdImage img;
  img.height = 4;
  img.width = 2;
  img.pixels.resize(24);
  for (std::size_t k = 0; k < 24; ++k) img.pixels[k] = static_cast<float>(k);
  const auto out = downsample_rows(img);
  ASSERT_EQ(out.height, 2u);
  ASSERT_EQ(out.width, 2u);
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t ch = 0; ch < 3; ++ch)
        EXPECT_FLOAT_EQ(out.at(y, x, ch), 0.5f * (img.at(2 * y, x, ch) + img.at(2 * y + 1, x, ch)));
  img.height = 3;
  img.pixels.resize(18);
  EXPECT_THROW(downsample_rows(img), Error);
}

TEST(RdPipeline, ClassifierImageShape) {
  const auto map = range_doppler(random_cube(256, 64, 5));
  const auto img = to_classifier_image(map, {-60.0, 20.0});
  EXPECT_EQ(img.height, 64u);
  EXPECT_EQ(img.width, 64u);
  EXPECT_EQ(img.pixels.size(), 64u * 64u * 3u);
  for (float v : img.pixels) {
    EXPECT_GE(v, 0.0f);
    EXPECT_LE(v, 1.0f);
  }
}

TEST(RdPipeline, PngRoundTrip) {
  RdImage img;
  img.height = 3;
  img.width = 5;
  img.pixels.resize(45);
  for (std::size_t k = 0; k < 45; ++k) img.pixels[k] = static_cast<float>(k) / 44.0f;
  const auto path = std::filesystem::temp_directory_path() / "radar_cdr_png_roundtrip.png";
  write_png(img, path);

  png_image read{};
  read.version = PNG_IMAGE_VERSION;
  ASSERT_TRUE(png_image_begin_read_from_file(&read, path.c_str()));
  read.format = PNG_FORMAT_RGB;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(read));
  ASSERT_TRUE(png_image_finish_read(&read, nullptr, buf.data(), 0, nullptr));
  EXPECT_EQ(read.width, 5u);
  EXPECT_EQ(read.height, 3u);
  for (std::size_t k = 0; k < 45; ++k) EXPECT_EQ(buf[k], std::lround(255.0 * img.pixels[k])) << k;
  std::filesystem::remove(path);

  EXPECT_THROW(write_png(RdImage{}, path), Error);
}
