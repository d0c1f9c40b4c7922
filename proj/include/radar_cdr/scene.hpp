#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "radar_cdr/common.hpp"
#include "radar_cdr/radar_params.hpp"
#include "radar_cdr/rng.hpp"

namespace radar_cdr {

/// Point scatterer with bulk radial motion plus an optional sinusoidal
/// micro-Doppler velocity modulation (limb swing).
struct Scatterer {
  double amplitude = 1.0;            // relative linear reflectivity
  double base_range_m = 1.0;         // range at t = 0
  double radial_velocity_m_s = 0.0;  // negative = approaching
  double md_amplitude_m_s = 0.0;
  double md_freq_hz = 0.0;
  double md_phase_rad = 0.0;
  double initial_phase_rad = 0.0;  // carrier phase, fixed per sequence
  int group = -1;                  // walker index, -1 for static clutter

  double range_at(double t) const;
  double velocity_at(double t) const;
  bool is_static() const { return radial_velocity_m_s == 0.0 && md_amplitude_m_s == 0.0; }
};

struct Scene {
  std::vector<Scatterer> scatterers;
  Occupancy label = Occupancy::empty;
  double duration_s = 0.0;

  int walker_groups() const;
  int moving_scatterers() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return v >= lo && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Randomization envelope for one walker.
struct WalkerParams {
  Interval start_range_m{1.5, 8.0};
  Interval speed_m_s{0.3, 2.0};
  Interval gait_freq_hz{1.4, 2.2};
  Interval torso_amplitude{0.8, 1.2};
  int limb_count = 4;
  double torso_to_limb_amplitude_ratio = 3.0;
  // Limb micro-Doppler amplitude as a fraction of walking speed.
  Interval md_ratio{0.4, 1.2};
};

/// Per-domain scene randomization envelope.
struct ScenarioEnvelope {
  WalkerParams walker;
  Interval clutter_count{3, 8};
  Interval clutter_amplitude{0.02, 0.25};  // before the domain's clutter multiplier
  Interval clutter_range_m{2.0, 20.0};
  double min_walker_separation_m = 1.0;
};

struct ScenarioEnvelopes {
  ScenarioEnvelope sim = default_sim();
  ScenarioEnvelope pseudo_real = default_pseudo_real();

  const ScenarioEnvelope& for_domain(Domain d) const { return d == Domain::sim ? sim : pseudo_real; }

  static ScenarioEnvelope default_sim();
  static ScenarioEnvelope default_pseudo_real();
};

/// Throws Error(invalid_argument) when the envelope is malformed or its peak
/// limb velocity would alias for the given radar.
void validate(const WalkerParams& params, const DerivedParams& radar);

/// One torso scatterer followed by `limb_count` limb scatterers sharing the
/// torso's bulk velocity. Walking direction is chosen so the walker stays in
/// the unambiguous range interval for `duration_s`.
std::vector<Scatterer> make_walker(const WalkerParams& params, const DerivedParams& radar,
                                   double duration_s, int group, Rng& rng);

Scene sample_scenario(Occupancy label, Domain domain, const ScenarioEnvelopes& envelopes,
                      const RadarConfig& config, double duration_s, Rng& rng);

/// Reads {"sim": {...}, "pseudo_real": {...}} overrides; unknown keys rejected.
ScenarioEnvelopes scenario_envelopes_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioEnvelopes& envelopes);

}  // namespace radar_cdr
