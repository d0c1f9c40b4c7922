#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radar_cdr/fmcw_sim.hpp"
#include "radar_cdr/rd_pipeline.hpp"

using namespace radar_cdr;

namespace {

constexpr double kPi = std::numbers::pi;

Scene single(double range, double velocity, double amplitude = 1.0, double phase = 0.3) {
  Scene scene;
  Scatterer s;
  s.amplitude = amplitude;
  s.base_range_m = range;
  s.radial_velocity_m_s = velocity;
  s.initial_phase_rad = phase;
  s.group = 0;
  scene.scatterers.push_back(s);
  return scene;
}

std::pair<std::size_t, std::size_t> argmax(const RdMap& m) {
  std::size_t best_r = 0, best_c = 0;
  for (std::size_t r = 0; r < m.range_bins(); ++r)
    for (std::size_t c = 0; c < m.doppler_bins(); ++c)
      if (m.cells(r, c) > m.cells(best_r, best_c)) best_r = r, best_c = c;
  return {best_r, best_c};
}

DomainNoiseProfile floor_profile(double floor_db, double texture_db = 0.0) {
  DomainNoiseProfile p;
  p.thermal_floor_db = floor_db;
  p.floor_texture_db = texture_db;
  p.texture_seed = 99;
  return p;
}

}  // namespace

TEST(FmcwSim, MatchesHandBuiltBeatSignal) {
  const RadarConfig cfg;
  const double range = 5.1, v = -1.0, phi = 0.3;
  Rng rng(0);
  const auto cube = simulate_frame(single(range, v, 1.0, phi), cfg, 0.0, DomainNoiseProfile::noise_free(), rng,
                                   {.range_loss = false});
  const double slope = cfg.bandwidth_hz / cfg.chirp_duration_s;
  const double fb = 2.0 * range * slope / 299792458.0;
  const double lambda = 299792458.0 / cfg.carrier_hz;
  const double a = kReferenceAmplitude;
  double worst = 0.0;
  for (int c = 0; c < cfg.chirps_per_frame; ++c) {
    const double doppler_phase = 4.0 * kPi * v * c * cfg.chirp_duration_s / lambda;
    for (int n = 0; n < cfg.samples_per_chirp; ++n) {
      const double expected = a * std::cos(2.0 * kPi * fb * n / cfg.sample_rate_hz + phi + doppler_phase);
      worst = std::max(worst, std::abs(cube.samples(n, c) - expected));
    }
  }
  EXPECT_LT(worst, 1e-9 * a);
}

TEST(FmcwSim, PeakLandsAtPredictedCell) {
  const RadarConfig cfg;
  Rng rng(0);
  // 5.10 m -> beat 117.26 kHz -> bin 30.02; -1 m/s -> -400 Hz -> -6.55 Doppler bins.
  const auto map = range_doppler(simulate_frame(single(5.10, -1.0), cfg, 0.0, DomainNoiseProfile::noise_free(), rng));
  const auto [r, c] = argmax(map);
  EXPECT_EQ(r, 30u);
  EXPECT_TRUE(c == 25u || c == 26u) << c;
  // The true bin -6.55 lies nearer column 25 than 26; the bracketing cells dominate the rest.
  EXPECT_GT(map.cells(30, 25), map.cells(30, 24));
  EXPECT_GT(map.cells(30, 26), map.cells(30, 27));

  const auto d = derive_params(cfg);
  const double v_bin = d.wavelength_m * d.doppler_bin_hz / 2.0;
  const auto exact = range_doppler(
      simulate_frame(single(12 * d.range_bin_m, 5 * v_bin), cfg, 0.0, DomainNoiseProfile::noise_free(), rng));
  const auto [r2, c2] = argmax(exact);
  EXPECT_EQ(r2, 12u);
  EXPECT_EQ(c2, 37u);
  EXPECT_NEAR(exact.cells(12, 36), exact.cells(12, 38), 0.05);
}

TEST(FmcwSim, ReferencePeakLevel) {
  const RadarConfig cfg;
  const auto d = derive_params(cfg);
  const double r = 6 * d.range_bin_m;
  Rng rng(0);
  const auto map = range_doppler(simulate_frame(single(r, 0.0), cfg, 0.0, DomainNoiseProfile::noise_free(), rng));
  // Real cosine gives A/2 per side; Hann sums are N/2 on each axis; 1/r^2 loss.
  const double expected = 20.0 * std::log10(kReferenceAmplitude / 2.0 * 128.0 * 32.0 / (r * r));
  EXPECT_NEAR(map.cells(6, 32), expected, 0.01);
  EXPECT_NEAR(expected, -44.0, 0.5);
}

TEST(FmcwSim, RangeLossIsInverseSquare) {
  const RadarConfig cfg;
  const auto d = derive_params(cfg);
  Rng rng(0);
  const auto near = range_doppler(
      simulate_frame(single(12 * d.range_bin_m, 0.0), cfg, 0.0, DomainNoiseProfile::noise_free(), rng));
  const auto far = range_doppler(
      simulate_frame(single(24 * d.range_bin_m, 0.0), cfg, 0.0, DomainNoiseProfile::noise_free(), rng));
  EXPECT_NEAR(near.cells(12, 32) - far.cells(24, 32), 40.0 * std::log10(2.0), 0.01);
}

TEST(FmcwSim, NoiseFreeSimulationIsLinear) {
  const RadarConfig cfg;
  Scene a = single(3.0, 0.8, 1.0, 0.1);
  a.scatterers[0].md_amplitude_m_s = 0.5;
  a.scatterers[0].md_freq_hz = 1.7;
  const Scene b = single(9.0, -1.3, 0.4, 2.0);
  Scene ab = a;
  ab.scatterers.push_back(b.scatterers[0]);
  Rng rng(0);
  const auto np = DomainNoiseProfile::noise_free();
  const auto xa = simulate_frame(a, cfg, 0.2, np, rng);
  const auto xb = simulate_frame(b, cfg, 0.2, np, rng);
  const auto xab = simulate_frame(ab, cfg, 0.2, np, rng);
  for (std::size_t k = 0; k < xab.samples.size(); ++k)
    EXPECT_NEAR(xab.samples.values()[k], xa.samples.values()[k] + xb.samples.values()[k], 1e-18);
}

TEST(FmcwSim, DopplerShiftOfOneBinShiftsOneColumn) {
  const RadarConfig cfg;
  const auto d = derive_params(cfg);
  const double v_bin = d.wavelength_m * d.doppler_bin_hz / 2.0;
  Rng rng(0);
  const auto np = DomainNoiseProfile::noise_free();
  const auto s0 = range_doppler_spectrum(simulate_frame(single(7.3, -0.4), cfg, 0.0, np, rng));
  const auto s1 = range_doppler_spectrum(simulate_frame(single(7.3, -0.4 + v_bin), cfg, 0.0, np, rng));
  const std::size_t row = static_cast<std::size_t>(std::lround(7.3 / d.range_bin_m));
  const double peak = std::abs(s0(row, 29));
  for (std::size_t c = 20; c < 40; ++c) EXPECT_NEAR(std::abs(s1(row, c + 1)), std::abs(s0(row, c)), 1e-3 * peak);
}

TEST(FmcwSim, NoiseFloorMatchesTarget) {
  RadarConfig cfg;
  const Scene empty;
  // Log-Rayleigh spread of dB cells: pi / sqrt(6) * 10 / ln 10.
  const double rayleigh_std = kPi / std::sqrt(6.0) * 10.0 / std::log(10.0);
  for (double texture : {0.0, 2.5}) {
    double sum = 0.0, sum2 = 0.0;
    std::size_t n = 0;
    for (int f = 0; f < 6; ++f) {
      Rng rng(100 + f);
      const auto map = range_doppler(simulate_frame(empty, cfg, 0.0, floor_profile(-110.0, texture), rng));
      for (std::size_t r = 1; r < map.range_bins(); ++r)
        for (std::size_t c = 0; c < map.doppler_bins(); ++c) {
          sum += map.cells(r, c);
          sum2 += map.cells(r, c) * map.cells(r, c);
          ++n;
        }
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sum2 / n - mean * mean);
    EXPECT_NEAR(mean, -110.0, 0.25) << "texture " << texture;
    EXPECT_NEAR(sd, std::hypot(rayleigh_std, texture), 0.3) << "texture " << texture;
  }
}

TEST(FmcwSim, GainOffsetShiftsFloor) {
  RadarConfig cfg;
  auto p = floor_profile(-110.0);
  p.gain_offset_db = 3.0;
  EXPECT_DOUBLE_EQ(p.effective_floor_db(), -107.0);
  Rng rng(5);
  const auto map = range_doppler(simulate_frame(Scene{}, cfg, 0.0, p, rng));
  double sum = 0.0;
  for (float v : map.cells.values()) sum += v;
  EXPECT_NEAR(sum / map.cells.size(), -107.0, 0.4);
}

TEST(FmcwSim, RejectsScattererLeavingRange) {
  const RadarConfig cfg;
  Rng rng(0);
  Scene s = single(21.74, 3.0);
  try {
    simulate_frame(s, cfg, 0.0, DomainNoiseProfile::noise_free(), rng);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::invalid_argument);
    EXPECT_NE(std::string(e.what()).find("scatterer 0"), std::string::npos);
  }
  s = single(5.0, 0.0);
  s.scatterers[0].md_amplitude_m_s = 6.0;
  s.scatterers[0].md_freq_hz = 2.0;
  s.scatterers[0].md_phase_rad = kPi / 2.0;
  EXPECT_THROW(simulate_frame(s, cfg, 0.0, DomainNoiseProfile::noise_free(), rng), Error);
}

TEST(FmcwSim, SequenceTimestampsAndDeterminism) {
  const RadarConfig cfg;
  const auto a = render_sequence(Occupancy::one_person, 5, Domain::pseudo_real, cfg, 11);
  const auto b = render_sequence(Occupancy::one_person, 5, Domain::pseudo_real, cfg, 11);
  const auto c = render_sequence(Occupancy::one_person, 5, Domain::pseudo_real, cfg, 12);
  ASSERT_EQ(a.frames.size(), 5u);
  for (std::size_t f = 0; f < 5; ++f) {
    EXPECT_NEAR(a.frames[f].frame_time_s, 0.1 * f, 1e-12);
    EXPECT_EQ(a.frames[f].domain, Domain::pseudo_real);
    EXPECT_EQ(a.frames[f].samples, b.frames[f].samples);
    EXPECT_NE(a.frames[f].samples, c.frames[f].samples);
  }
  // Frame noise comes from per-frame substreams: a shorter render is a prefix.
  const auto e5 = render_sequence(Occupancy::empty, 5, Domain::sim, cfg, 3);
  const auto e2 = render_sequence(Occupancy::empty, 2, Domain::sim, cfg, 3);
  EXPECT_EQ(e5.frames[1].samples, e2.frames[1].samples);
}

TEST(FmcwSim, PseudoRealProfileInsideRanges) {
  const PseudoRealProfileRanges ranges;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    const auto p = sample_domain_profile(Domain::pseudo_real, ranges, rng);
    EXPECT_TRUE(ranges.floor_db.contains(p.thermal_floor_db));
    EXPECT_TRUE(ranges.texture_db.contains(p.floor_texture_db));
    EXPECT_TRUE(ranges.gain_offset_db.contains(p.gain_offset_db));
    EXPECT_EQ(p.clutter_multiplier, ranges.clutter_multiplier);
  }
  Rng rng(0);
  const auto sim = sample_domain_profile(Domain::sim, ranges, rng);
  EXPECT_EQ(sim.floor_texture_db, 0.0);
  EXPECT_EQ(sim.clutter_multiplier, 1.0);
}
