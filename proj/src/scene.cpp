#include "radar_cdr/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace radar_cdr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxDraws = 200;

void check_interval(const Interval& iv, const std::string& name, bool strictly_positive = false) {
  require(std::isfinite(iv.lo) && std::isfinite(iv.hi) && iv.lo <= iv.hi, ErrorCategory::invalid_argument,
          name + " must be a finite interval with lo <= hi");
  if (strictly_positive)
    require(iv.lo > 0.0, ErrorCategory::invalid_argument, name + " must be strictly positive");
}

// Largest excursion of the micro-Doppler range term A / (2 pi f).
double md_extent(double md_amplitude, double md_freq) {
  return md_freq > 0.0 ? md_amplitude / (kTwoPi * md_freq) : 0.0;
}

}  // namespace

double Scatterer::range_at(double t) const {
  double r = base_range_m + radial_velocity_m_s * t;
  if (md_freq_hz > 0.0) {
    r -= md_extent(md_amplitude_m_s, md_freq_hz) * std::cos(kTwoPi * md_freq_hz * t + md_phase_rad);
  }
  return r;
}

double Scatterer::velocity_at(double t) const {
  double v = radial_velocity_m_s;
  if (md_freq_hz > 0.0) v += md_amplitude_m_s * std::sin(kTwoPi * md_freq_hz * t + md_phase_rad);
  return v;
}

int Scene::walker_groups() const {
  std::set<int> groups;
  for (const auto& s : scatterers)
    if (s.group >= 0) groups.insert(s.group);
  return static_cast<int>(groups.size());
}

int Scene::moving_scatterers() const {
  return static_cast<int>(std::count_if(scatterers.begin(), scatterers.end(),
                                        [](const Scatterer& s) { return !s.is_static(); }));
}

ScenarioEnvelope ScenarioEnvelopes::default_sim() { return ScenarioEnvelope{}; }

ScenarioEnvelope ScenarioEnvelopes::default_pseudo_real() {
  ScenarioEnvelope e;
  e.walker.speed_m_s = {0.4, 1.8};
  e.walker.gait_freq_hz = {1.6, 2.0};
  e.walker.torso_amplitude = {0.6, 1.4};
  // Same reflectivity draw as sim; the domain's clutter multiplier makes it stronger.
  e.clutter_count = {8, 20};
  return e;
}

void validate(const WalkerParams& p, const DerivedParams& radar) {
  check_interval(p.start_range_m, "walker.start_range_m", true);
  check_interval(p.speed_m_s, "walker.speed_m_s", true);
  check_interval(p.gait_freq_hz, "walker.gait_freq_hz", true);
  check_interval(p.torso_amplitude, "walker.torso_amplitude", true);
  check_interval(p.md_ratio, "walker.md_ratio");
  require(p.speed_m_s.lo >= 0.3 && p.speed_m_s.hi <= 2.0, ErrorCategory::invalid_argument,
          "walker.speed_m_s must lie within [0.3, 2.0] m/s");
  require(p.md_ratio.lo >= 0.0,ErrorCategory::invalid_argument, "walker.md_ratio must be >= 0");
  require(p.limb_count >= 0, ErrorCategory::invalid_argument, "walker.limb_count must be >= 0");
  require(p.torso_to_limb_amplitude_ratio > 0.0, ErrorCategory::invalid_argument,
          "walker.torso_to_limb_amplitude_ratio must be > 0");
  require(p.start_range_m.hi < radar.max_range_m, ErrorCategory::invalid_argument,
          "walker.start_range_m exceeds the unambiguous range");
  const double peak = p.speed_m_s.hi * (1.0 + (p.limb_count > 0 ? p.md_ratio.hi : 0.0));
  require(peak < radar.max_velocity_m_s, ErrorCategory::invalid_argument,
          "walker peak velocity " + std::to_string(peak) + " m/s exceeds the unambiguous velocity " +
              std::to_string(radar.max_velocity_m_s) + " m/s");
}

std::vector<Scatterer> make_walker(const WalkerParams& p, const DerivedParams& radar, double duration_s,
                                   int group, Rng& rng) {
  validate(p, radar);
  require(duration_s >= 0.0, ErrorCategory::invalid_argument, "duration must be >= 0");

  const double r_min = 0.5 * radar.range_bin_m;
  const double r_max = radar.max_range_m;
  const double limb_md_max = p.speed_m_s.hi * p.md_ratio.hi;
  const double margin = md_extent(limb_md_max, p.gait_freq_hz.lo) + radar.range_bin_m;

  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    const double start = uniform(rng, p.start_range_m.lo, p.start_range_m.hi);
    const double speed = uniform(rng, p.speed_m_s.lo, p.speed_m_s.hi);
    const double travel = speed * duration_s;
    const bool can_approach = start - travel - margin > r_min;
    const bool can_recede = start + travel + margin < r_max;
    if (!can_approach && !can_recede) continue;
    double direction = can_approach ? -1.0 : 1.0;
    if (can_approach && can_recede && uniform(rng, 0.0, 1.0) < 0.5) direction = 1.0;

    const double gait = uniform(rng, p.gait_freq_hz.lo, p.gait_freq_hz.hi);
    const double torso_amp = uniform(rng, p.torso_amplitude.lo, p.torso_amplitude.hi);

    std::vector<Scatterer> out;
    out.reserve(static_cast<std::size_t>(p.limb_count) + 1);
    Scatterer torso;
    torso.amplitude = torso_amp;
    torso.base_range_m = start;
    torso.radial_velocity_m_s = direction * speed;
    torso.initial_phase_rad = uniform(rng, 0.0, kTwoPi);
    torso.group = group;
    out.push_back(torso);

    const double phase_offset = uniform(rng, 0.0, kTwoPi);
    for (int l = 0; l < p.limb_count; ++l) {
      Scatterer limb = torso;
      limb.amplitude = torso_amp / p.torso_to_limb_amplitude_ratio;
      limb.base_range_m = start + uniform(rng, -0.1, 0.1);
      limb.md_amplitude_m_s = uniform(rng, p.md_ratio.lo, p.md_ratio.hi) * speed;
      limb.md_freq_hz = gait;
      limb.md_phase_rad = std::fmod(phase_offset + kTwoPi * l / p.limb_count, kTwoPi);
      limb.initial_phase_rad = uniform(rng, 0.0, kTwoPi);
      out.push_back(limb);
    }
    return out;
  }
  fail(ErrorCategory::invalid_argument,
       "could not place a walker inside the unambiguous range for a " + std::to_string(duration_s) +
           " s sequence; shorten the sequence or narrow the speed envelope");
}

Scene sample_scenario(Occupancy label, Domain domain, const ScenarioEnvelopes& envelopes,
                      const RadarConfig& config, double duration_s, Rng& rng) {
  const int people = static_cast<int>(occupancy_from_label(static_cast<int>(label)));
  const DerivedParams radar = derive_params(config);
  const ScenarioEnvelope& env = envelopes.for_domain(domain);
  check_interval(env.clutter_count, "clutter_count");
  check_interval(env.clutter_amplitude, "clutter_amplitude", true);
  check_interval(env.clutter_range_m, "clutter_range_m", true);

  Scene scene;
  scene.label = label;
  scene.duration_s = duration_s;

  const double r_lo = std::max(env.clutter_range_m.lo, radar.range_bin_m);
  const double r_hi = std::min(env.clutter_range_m.hi, radar.max_range_m - radar.range_bin_m);
  const int clutter = uniform_int(rng, static_cast<int>(std::lround(env.clutter_count.lo)),
                                  static_cast<int>(std::lround(env.clutter_count.hi)));
  for (int i = 0; i < clutter; ++i) {
    Scatterer s;
    // Log-uniform reflectivity: walls, furniture and floor returns span decades.
    s.amplitude = std::exp(uniform(rng, std::log(env.clutter_amplitude.lo), std::log(env.clutter_amplitude.hi)));
    s.base_range_m = uniform(rng, r_lo, r_hi);
    s.initial_phase_rad = uniform(rng, 0.0, kTwoPi);
    scene.scatterers.push_back(s);
  }

  std::vector<double> starts;
  for (int w = 0; w < people; ++w) {
    for (int attempt = 0;; ++attempt) {
      require(attempt < kMaxDraws, ErrorCategory::invalid_argument,
              "could not separate walkers by the minimum start-range spacing");
      auto walker = make_walker(env.walker, radar, duration_s, w, rng);
      const double start = walker.front().base_range_m;
      const bool separated = std::all_of(starts.begin(), starts.end(), [&](double other) {
        return std::abs(other - start) >= env.min_walker_separation_m;
      });
      if (!separated) continue;
      starts.push_back(start);
      scene.scatterers.insert(scene.scatterers.end(), walker.begin(), walker.end());
      break;
    }
  }
  return scene;
}

namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known, const std::string& where) {
  require(j.is_object(), ErrorCategory::invalid_argument, where + " must be a JSON object");
  for (const auto& [key, _] : j.items())
    require(known.contains(key), ErrorCategory::invalid_argument, "unknown key '" + key + "' in " + where);
}

void read_interval(const nlohmann::json& j, const char* key, Interval& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  require(v.is_array() && v.size() == 2, ErrorCategory::invalid_argument,
          std::string(key) + " must be a two-element array [lo, hi]");
  out = {v[0].get<double>(), v[1].get<double>()};
}

nlohmann::json interval_json(const Interval& iv) { return nlohmann::json::array({iv.lo, iv.hi}); }

ScenarioEnvelope envelope_from_json(const nlohmann::json& j, ScenarioEnvelope env, const std::string& where) {
  reject_unknown(j, {"walker", "clutter_count", "clutter_amplitude", "clutter_range_m", "min_walker_separation_m"},
                 where);
  read_interval(j, "clutter_count", env.clutter_count);
  read_interval(j, "clutter_amplitude", env.clutter_amplitude);
  read_interval(j, "clutter_range_m", env.clutter_range_m);
  env.min_walker_separation_m = j.value("min_walker_separation_m", env.min_walker_separation_m);
  if (j.contains("walker")) {
    const auto& w = j.at("walker");
    reject_unknown(w,
                   {"start_range_m", "speed_m_s", "gait_freq_hz", "torso_amplitude", "limb_count",
                    "torso_to_limb_amplitude_ratio", "md_ratio"},
                   where + ".walker");
    read_interval(w, "start_range_m", env.walker.start_range_m);
    read_interval(w, "speed_m_s", env.walker.speed_m_s);
    read_interval(w, "gait_freq_hz", env.walker.gait_freq_hz);
    read_interval(w, "torso_amplitude", env.walker.torso_amplitude);
    read_interval(w, "md_ratio", env.walker.md_ratio);
    env.walker.limb_count = w.value("limb_count", env.walker.limb_count);
    env.walker.torso_to_limb_amplitude_ratio =
        w.value("torso_to_limb_amplitude_ratio", env.walker.torso_to_limb_amplitude_ratio);
  }
  return env;
}

nlohmann::json envelope_json(const ScenarioEnvelope& e) {
  return {
      {"walker",
       {{"start_range_m", interval_json(e.walker.start_range_m)},
        {"speed_m_s", interval_json(e.walker.speed_m_s)},
        {"gait_freq_hz", interval_json(e.walker.gait_freq_hz)},
        {"torso_amplitude", interval_json(e.walker.torso_amplitude)},
        {"md_ratio", interval_json(e.walker.md_ratio)},
        {"limb_count", e.walker.limb_count},
        {"torso_to_limb_amplitude_ratio", e.walker.torso_to_limb_amplitude_ratio}}},
      {"clutter_count", interval_json(e.clutter_count)},
      {"clutter_amplitude", interval_json(e.clutter_amplitude)},
      {"clutter_range_m", interval_json(e.clutter_range_m)},
      {"min_walker_separation_m", e.min_walker_separation_m},
  };
}

}  // namespace

ScenarioEnvelopes scenario_envelopes_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"sim", "pseudo_real"}, "scenario");
  ScenarioEnvelopes out;
  if (j.contains("sim")) out.sim = envelope_from_json(j.at("sim"), out.sim, "scenario.sim");
  if (j.contains("pseudo_real"))
    out.pseudo_real = envelope_from_json(j.at("pseudo_real"), out.pseudo_real, "scenario.pseudo_real");
  return out;
}

nlohmann::json to_json(const ScenarioEnvelopes& e) {
  return {{"sim", envelope_json(e.sim)}, {"pseudo_real", envelope_json(e.pseudo_real)}};
}

}  // namespace radar_cdr
