#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>
#include <vector>

#include "radar_cdr/diagnostics.hpp"
#include "radar_cdr/domain_randomization.hpp"
#include "radar_cdr/evaluation.hpp"
#include "radar_cdr/experiment.hpp"
#include "radar_cdr/radar_params.hpp"

namespace py = pybind11;
using namespace radar_cdr;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;

RdMap to_map(const FloatArray& a) {
  if (a.ndim() != 2) throw Error(ErrorCategory::shape_mismatch, "RD map must be a 2D array");
  RdMap m;
  m.cells = Matrix<float>(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::copy_n(a.data(), m.cells.size(), m.cells.values().begin());
  return m;
}

FloatArray to_array(const RdMap& m) {
  FloatArray out({m.range_bins(), m.doppler_bins()});
  std::copy(m.cells.values().begin(), m.cells.values().end(), out.mutable_data());
  return out;
}

std::vector<RdMap> to_maps(const std::vector<FloatArray>& arrays) {
  std::vector<RdMap> maps;
  maps.reserve(arrays.size());
  for (const auto& a : arrays) maps.push_back(to_map(a));
  return maps;
}

NoiseFloorStats stats_from(double mean_db, double std_db) {
  NoiseFloorStats s{mean_db, std_db, 1};
  validate(s);
  return s;
}

}  // namespace

PYBIND11_MODULE(_radar_cdr, m) {
  m.doc() = "FMCW radar simulation and calibrated noise-floor randomization";

  static py::exception<Error> error_type(m, "RadarCdrError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, (std::string(to_string(e.category())) + ": " + e.what()).c_str());
    }
  });

  m.def("derived_params", [] {
    const auto d = derive_params(RadarConfig{});
    py::dict out;
    out["chirp_slope_hz_per_s"] = d.chirp_slope_hz_per_s;
    out["range_resolution_m"] = d.range_resolution_m;
    out["max_range_m"] = d.max_range_m;
    out["range_bin_m"] = d.range_bin_m;
    out["wavelength_m"] = d.wavelength_m;
    out["doppler_bin_hz"] = d.doppler_bin_hz;
    out["max_velocity_m_s"] = d.max_velocity_m_s;
    out["range_bins"] = d.range_bins;
    out["doppler_bins"] = d.doppler_bins;
    return out;
  }, "Derived quantities of the default radar configuration.");

  m.def(
      "simulate_maps",
      [](const std::string& domain, int label, int sequences, int frames, std::uint64_t seed) {
        const auto maps = generate_maps(parse_domain(domain), occupancy_from_label(label), sequences, frames,
                                        RadarConfig{}, seed);
        py::list out;
        for (const auto& fm : maps) out.append(to_array(fm.map));
        return out;
      },
      py::arg("domain"), py::arg("label"), py::arg("sequences") = 1, py::arg("frames") = 1, py::arg("seed") = 0,
      "Renders labeled sequences and returns their RD maps in dB, shape (128, 64).");

  m.def(
      "calibrate_noise_floor",
      [](const std::vector<FloatArray>& maps) {
        const auto s = calibrate_noise_floor(to_maps(maps));
        return py::make_tuple(s.mean_db, s.std_db, s.n_cells);
      },
      py::arg("maps"), "Pooled (mean_db, std_db, n_cells) over every cell of the maps.");

  m.def(
      "apply_cdr",
      [](const FloatArray& map, double mean_db, double std_db, std::uint64_t seed) {
        Rng rng(seed);
        return to_array(apply_cdr(to_map(map), stats_from(mean_db, std_db), rng));
      },
      py::arg("map"), py::arg("mean_db"), py::arg("std_db"), py::arg("seed") = 0,
      "Cellwise max with a N(mean_db, std_db^2) noise map.");

  m.def(
      "apply_random_dr",
      [](const FloatArray& map, std::pair<double, double> mean_range, std::pair<double, double> std_range,
         std::uint64_t seed) {
        RandomDrRanges r;
        r.mean_range_db = {mean_range.first, mean_range.second};
        r.std_range_db = {std_range.first, std_range.second};
        validate(r);
        Rng rng(seed);
        return to_array(apply_random_dr(to_map(map), r, rng));
      },
      py::arg("map"), py::arg("mean_range_db") = std::pair{-130.0, -100.0},
      py::arg("std_range_db") = std::pair{1.0, 4.0}, py::arg("seed") = 0,
      "Cellwise max with a noise map whose level is drawn per frame.");

  m.def(
      "balanced_accuracy",
      [](const std::vector<std::vector<std::uint64_t>>& rows) {
        return balanced_accuracy(ConfusionMatrix::from_rows(rows));
      },
      py::arg("confusion"), "Macro-averaged recall; rows are true classes.");

  m.def(
      "wasserstein1",
      [](const std::vector<FloatArray>& a, const std::vector<FloatArray>& b) {
        const auto edges = default_histogram_edges();
        return wasserstein1(magnitude_histogram(to_maps(a), edges), magnitude_histogram(to_maps(b), edges));
      },
      py::arg("a"), py::arg("b"), "W1 distance in dB between pooled magnitude histograms.");

  m.def(
      "static_energy_ratio", [](const FloatArray& map, int halfwidth) { return static_energy_ratio(to_map(map), halfwidth); },
      py::arg("map"), py::arg("halfwidth_bins") = 1, "Fraction of linear power near zero Doppler.");
}
