#include "radar_cdr/fmcw_sim.hpp"

#include <cmath>
#include <algorithm>
#include <complex>
#include <utility>
#include <numbers>
#include <string>

#include "fft.hpp"

namespace radar_cdr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Mean of 10*log10 of a unit-mean exponential variable is -10*gamma/ln(10).
constexpr double kLogRayleighBiasDb = 2.5068228497536;

// Sum of squares of a periodic Hann window of length n.
double hann_energy(int n) { return 3.0 * n / 8.0; }

// Log-domain mean and spread of the per-cell power seen after the Hann
// window. Windowing mixes each spectral cell with its neighbours using
// squared weights [1/6, 2/3, 1/6] per axis, so the observed power field is a
// smoothed copy of the squared gains.
std::pair<double, double> windowed_log_stats(const std::vector<double>& power, int bins, int nc) {
  constexpr double w[3] = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
  double sum = 0.0, sum2 = 0.0;
  const int rows = bins - 1;
  for (int k = 0; k < rows; ++k)
    for (int j = 0; j < nc; ++j) {
      double p = 0.0;
      for (int a = -1; a <= 1; ++a) {
        const int kk = std::abs(k + a);  // bin -1 mirrors bin 1 for a real signal
        for (int b = -1; b <= 1; ++b) p += w[a + 1] * w[b + 1] * power[kk * nc + (j + b + nc) % nc];
      }
      const double db = 10.0 * std::log10(p);
      sum += db;
      sum2 += db * db;
    }
  const double n = static_cast<double>(rows) * nc;
  const double mean = sum / n;
  return {mean, std::sqrt(std::max(0.0, sum2 / n - mean * mean))};
}

// Per-cell amplitude gains indexed [range bin 0..ns/2][unshifted Doppler bin].
// The gains are 10^(a*z/20), z ~ N(0, 1), with `a` chosen so that the RD map
// shows a per-cell spread of exactly `spread_db` and no level shift.
std::vector<double> texture_gains(int ns, int nc, double spread_db, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal01(0.0, 1.0);
  const int bins = ns / 2 + 1;
  std::vector<double> z(static_cast<std::size_t>(bins) * static_cast<std::size_t>(nc));
  for (double& v : z) v = normal01(rng);
  std::vector<double> power(z.size());
  const auto stats_for = [&](double a) {
    for (std::size_t i = 0; i < z.size(); ++i) power[i] = std::pow(10.0, a * z[i] / 10.0);
    return windowed_log_stats(power, bins, nc);
  };
  double lo = spread_db, hi = 2.0 * spread_db;
  while (stats_for(hi).second < spread_db) hi *= 2.0;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (stats_for(mid).second < spread_db ? lo : hi) = mid;
  }
  const double a = 0.5 * (lo + hi);
  const double offset_db = stats_for(a).first;
  std::vector<double> g(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) g[i] = std::pow(10.0, (a * z[i] - offset_db) / 20.0);
  return g;
}

void add_noise(Matrix<double>& samples, const RadarConfig& config, const DomainNoiseProfile& profile, Rng& rng) {
  const int ns = config.samples_per_chirp;
  const int nc = config.chirps_per_frame;
  const double target_db = profile.effective_floor_db();
  const double variance =
      std::pow(10.0, (target_db + kLogRayleighBiasDb) / 10.0) / (hann_energy(ns) * hann_energy(nc));
  std::normal_distribution<double> gauss(0.0, std::sqrt(variance));

  Matrix<double> noise(static_cast<std::size_t>(ns), static_cast<std::size_t>(nc));
  for (int c = 0; c < nc; ++c)
    for (int n = 0; n < ns; ++n) noise(n, c) = gauss(rng);

  if (profile.floor_texture_db > 0.0) {
    // Shape the white noise in the 2D spectrum, then return to the cube.
    // A sequence reuses one texture for every frame; keep the last one.
    struct Cached {
      int ns = 0, nc = 0;
      double spread = 0.0;
      std::uint64_t seed = 0;
      std::vector<double> gains;
    };
    thread_local Cached cache;
    if (cache.gains.empty() || cache.ns != ns || cache.nc != nc || cache.spread != profile.floor_texture_db ||
        cache.seed != profile.texture_seed)
      cache = {ns, nc, profile.floor_texture_db, profile.texture_seed,
               texture_gains(ns, nc, profile.floor_texture_db, profile.texture_seed)};
    const auto& gains = cache.gains;
    const std::size_t bins = static_cast<std::size_t>(ns / 2 + 1);
    std::vector<std::complex<double>> spec(bins * static_cast<std::size_t>(nc));  // [chirp][bin]
    std::vector<double> chirp(static_cast<std::size_t>(ns));
    for (int c = 0; c < nc; ++c) {
      for (int n = 0; n < ns; ++n) chirp[n] = noise(n, c);
      detail::fft_real_forward(chirp, std::span(spec).subspan(c * bins, bins));
    }
    std::vector<std::complex<double>> slow(static_cast<std::size_t>(nc));
    const double scale = 1.0 / (static_cast<double>(ns) * nc);
    for (std::size_t k = 0; k < bins; ++k) {
      for (int c = 0; c < nc; ++c) slow[c] = spec[c * bins + k];
      detail::fft_forward(slow);
      for (int j = 0; j < nc; ++j) slow[j] *= gains[k * nc + j] * scale;
      detail::fft_inverse(slow);
      for (int c = 0; c < nc; ++c) spec[c * bins + k] = slow[c];
    }
    for (int c = 0; c < nc; ++c) {
      detail::fft_real_inverse(std::span(spec).subspan(c * bins, bins), chirp);
      for (int n = 0; n < ns; ++n) noise(n, c) = chirp[n];
    }
  }

  for (int c = 0; c < nc; ++c)
    for (int n = 0; n < ns; ++n) samples(n, c) += noise(n, c);
}

}  // namespace

DomainNoiseProfile DomainNoiseProfile::sim_default() { return DomainNoiseProfile{}; }

DomainNoiseProfile DomainNoiseProfile::noise_free() {
  DomainNoiseProfile p;
  p.add_noise = false;
  return p;
}

DomainNoiseProfile sample_domain_profile(Domain domain, const PseudoRealProfileRanges& ranges, Rng& rng) {
  if (domain == Domain::sim) return DomainNoiseProfile::sim_default();
  DomainNoiseProfile p;
  p.thermal_floor_db = uniform(rng, ranges.floor_db.lo, ranges.floor_db.hi);
  p.floor_texture_db = uniform(rng, ranges.texture_db.lo, ranges.texture_db.hi);
  p.gain_offset_db = uniform(rng, ranges.gain_offset_db.lo, ranges.gain_offset_db.hi);
  p.clutter_multiplier = ranges.clutter_multiplier;
  p.texture_seed = rng();
  return p;
}

DataCube simulate_frame(const Scene& scene, const RadarConfig& config, double t0, const DomainNoiseProfile& profile,
                        Rng& rng, const SimulationOptions& options) {
  const DerivedParams d = derive_params(config);
  require(std::isfinite(profile.thermal_floor_db) && std::isfinite(profile.gain_offset_db),
          ErrorCategory::invalid_argument, "noise profile levels must be finite");
  const int ns = config.samples_per_chirp;
  const int nc = config.chirps_per_frame;
  const double t_last = t0 + (nc - 1) * config.chirp_duration_s;
  const double gain = std::pow(10.0, profile.gain_offset_db / 20.0);

  DataCube cube;
  cube.samples = Matrix<double>(static_cast<std::size_t>(ns), static_cast<std::size_t>(nc));
  cube.frame_time_s = t0;

  for (std::size_t k = 0; k < scene.scatterers.size(); ++k) {
    const Scatterer& s = scene.scatterers[k];
    const auto name = [&] { return "scatterer " + std::to_string(k) + " (group " + std::to_string(s.group) + ")"; };
    require(s.amplitude > 0.0, ErrorCategory::invalid_argument, name() + " has non-positive amplitude");
    for (double t : {t0, t_last}) {
      const double r = s.range_at(t);
      require(r > 0.5 * d.range_bin_m && r < d.max_range_m, ErrorCategory::invalid_argument,
              name() + " at range " + std::to_string(r) + " m is outside the unambiguous interval");
    }

    const double r0 = s.range_at(t0);
    const double beat_hz = 2.0 * r0 * d.chirp_slope_hz_per_s / kSpeedOfLight;
    double amp = kReferenceAmplitude * s.amplitude * gain;
    if (s.group < 0) amp *= profile.clutter_multiplier;
    if (options.range_loss) amp /= r0 * r0;

    const std::complex<double> step = std::polar(1.0, kTwoPi * beat_hz / config.sample_rate_hz);
    for (int c = 0; c < nc; ++c) {
      const double tc = t0 + c * config.chirp_duration_s;
      require(std::abs(s.velocity_at(tc)) < d.max_velocity_m_s, ErrorCategory::invalid_argument,
              name() + " exceeds the unambiguous velocity");
      const double phase = s.initial_phase_rad + 4.0 * std::numbers::pi * (s.range_at(tc) - s.base_range_m) /
                                                     d.wavelength_m;
      std::complex<double> z = std::polar(amp, phase);
      for (int n = 0; n < ns; ++n) {
        cube.samples(n, c) += z.real();
        z *= step;
      }
    }
  }

  if (profile.add_noise) add_noise(cube.samples, config, profile, rng);
  return cube;
}

RenderedSequence render_sequence(Occupancy label, int n_frames, Domain domain, const RadarConfig& config,
                                 std::uint64_t seed, const SequenceOptions& options) {
  require(n_frames >= 1, ErrorCategory::invalid_argument, "n_frames must be >= 1");
  validate(config);
  RenderedSequence seq;
  seq.label = label;

  Rng scene_rng = make_rng(seed, "scene");
  seq.scene = sample_scenario(label, domain, options.envelopes, config, n_frames * config.frame_period_s, scene_rng);
  Rng profile_rng = make_rng(seed, "profile");
  seq.profile = sample_domain_profile(domain, options.pseudo_real, profile_rng);

  seq.frames.reserve(static_cast<std::size_t>(n_frames));
  for (int f = 0; f < n_frames; ++f) {
    Rng noise_rng = make_rng(seed, "noise", static_cast<std::uint64_t>(f));
    DataCube cube = simulate_frame(seq.scene, config, f * config.frame_period_s, seq.profile, noise_rng,
                                   options.simulation);
    cube.domain = domain;
    seq.frames.push_back(std::move(cube));
  }
  return seq;
}

}  // namespace radar_cdr
