#pragma once

#include <cstdint>
#include <vector>

#include "radar_cdr/common.hpp"
#include "radar_cdr/radar_params.hpp"
#include "radar_cdr/rng.hpp"
#include "radar_cdr/scene.hpp"

namespace radar_cdr {

/// Real-valued dechirped beat signal of one frame: N_s fast-time rows by
/// N_c slow-time columns.
struct DataCube {
  Matrix<double> samples;
  double frame_time_s = 0.0;
  Domain domain = Domain::sim;
};

/// Receiver noise and gain characteristics of a domain.
///
/// `thermal_floor_db` is the expected mean of the dB range-Doppler cells of an
/// empty, clutter-free scene (before `gain_offset_db`). `floor_texture_db` is
/// the standard deviation of a static per-cell floor offset (Gaussian in dB,
/// one value per range-Doppler cell, fixed by `texture_seed`) that sits on top
/// of the Rayleigh scatter of the noise itself. The effective floor seen in RD
/// maps is
/// thermal_floor_db + gain_offset_db.
struct DomainNoiseProfile {
  double thermal_floor_db = -160.0;
  double floor_texture_db = 0.0;
  std::uint64_t texture_seed = 0;
  double gain_offset_db = 0.0;
  double clutter_multiplier = 1.0;
  bool add_noise = true;

  double effective_floor_db() const { return thermal_floor_db + gain_offset_db; }

  static DomainNoiseProfile sim_default();
  static DomainNoiseProfile noise_free();
};

/// Ranges from which a pseudo-real sequence draws its receiver profile.
struct PseudoRealProfileRanges {
  Interval floor_db{-115.0, -105.0};
  Interval texture_db{1.5, 3.0};
  Interval gain_offset_db{-2.0, 2.0};
  double clutter_multiplier = 2.5;
};

DomainNoiseProfile sample_domain_profile(Domain domain, const PseudoRealProfileRanges& ranges, Rng& rng);

/// Linear beat amplitude of a unit-reflectivity scatterer at 1 m. Sets the
/// absolute dB scale of every RD map: a unit reflector at 1 m peaks near
/// -44 dB after the windowed 2D FFT.
inline constexpr double kReferenceAmplitude = 3.1622776601683795e-06;  // -110 dB

struct SimulationOptions {
  bool range_loss = true;  // amplitude ∝ 1/r^2
};

/// Synthesizes one frame. Scatterer positions are taken at `t0` for the beat
/// frequency (stop-and-hop); carrier phase follows the exact range history
/// across chirps, which carries both bulk Doppler and micro-Doppler.
/// Throws Error(invalid_argument) naming the scatterer if it leaves the
/// unambiguous range or velocity interval during the frame.
DataCube simulate_frame(const Scene& scene, const RadarConfig& config, double t0, const DomainNoiseProfile& profile,
                        Rng& rng, const SimulationOptions& options = {});

struct RenderedSequence {
  std::vector<DataCube> frames;
  Occupancy label = Occupancy::empty;
  Scene scene;
  DomainNoiseProfile profile;
};

struct SequenceOptions {
  ScenarioEnvelopes envelopes;
  PseudoRealProfileRanges pseudo_real;
  SimulationOptions simulation;
};

/// Samples one scene and one receiver profile, then renders `n_frames` frames
/// at frame_period intervals. Scene, profile and each frame's noise come from
/// separate substreams of `seed`.
RenderedSequence render_sequence(Occupancy label, int n_frames, Domain domain, const RadarConfig& config,
                                 std::uint64_t seed, const SequenceOptions& options = {});

}  // namespace radar_cdr
