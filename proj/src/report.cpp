#include "radar_cdr/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "viridis_table.hpp"

namespace radar_cdr {

namespace fs = std::filesystem;

namespace {

using Rgb = std::array<float, 3>;

// Qualitative line colors, cycled per dataset.
constexpr std::array<Rgb, 8> kPalette = {{
    {0.12f, 0.47f, 0.71f},
    {1.00f, 0.50f, 0.05f},
    {0.17f, 0.63f, 0.17f},
    {0.84f, 0.15f, 0.16f},
    {0.58f, 0.40f, 0.74f},
    {0.55f, 0.34f, 0.29f},
    {0.89f, 0.47f, 0.76f},
    {0.50f, 0.50f, 0.50f},
}};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Canvas {
  RdImage image;

  Canvas(std::size_t w, std::size_t h) {
    image.width = w;
    image.height = h;
    image.pixels.assign(w * h * 3, 1.0f);
  }

  void dot(long x, long y, const Rgb& c) {
    if (x < 0 || y < 0 || x >= static_cast<long>(image.width) || y >= static_cast<long>(image.height)) return;
    for (std::size_t ch = 0; ch < 3; ++ch) image.at(static_cast<std::size_t>(y), static_cast<std::size_t>(x), ch) = c[ch];
  }

  void line(long x0, long y0, long x1, long y1, const Rgb& c) {
    const long dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const long sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    long err = dx + dy;
    while (true) {
      dot(x0, y0, c);
      if (x0 == x1 && y0 == y1) break;
      const long e2 = 2 * err;
      if (e2 >= dy) { err += dy; x0 += sx; }
      if (e2 <= dx) { err += dx; y0 += sy; }
    }
  }

  void frame(const Rgb& c) {
    const auto w = static_cast<long>(image.width) - 1, h = static_cast<long>(image.height) - 1;
    line(0, 0, w, 0, c);
    line(0, h, w, h, c);
    line(0, 0, 0, h, c);
    line(w, 0, w, h, c);
  }
};

std::vector<fs::path> sorted_walk(const fs::path& root) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string relative_name(const fs::path& p, const fs::path& root) {
  const auto rel = fs::relative(p, root).generic_string();
  return rel.empty() || rel == "." ? std::string(".") : rel;
}

struct LoadedSet {
  DatasetSummary summary;
  std::map<int, std::vector<RdMap>> by_label;
};

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

RdImage confusion_heatmap(const ConfusionMatrix& cm, std::size_t cell_px) {
  require(cm.num_classes >= 1 && cell_px >= 1, ErrorCategory::invalid_argument, "empty confusion matrix");
  const auto k = static_cast<std::size_t>(cm.num_classes);
  RdImage img{k * cell_px, k * cell_px, std::vector<float>(k * cell_px * k * cell_px * 3)};
  for (int t = 0; t < cm.num_classes; ++t) {
    const auto row = cm.row_sum(t);
    for (int p = 0; p < cm.num_classes; ++p) {
      const double frac = row == 0 ? 0.0 : static_cast<double>(cm.at(t, p)) / static_cast<double>(row);
      const auto& c = detail::kViridis[static_cast<std::size_t>(std::lround(frac * 255.0))];
      for (std::size_t y = 0; y < cell_px; ++y)
        for (std::size_t x = 0; x < cell_px; ++x)
          for (std::size_t ch = 0; ch < 3; ++ch)
            img.at(static_cast<std::size_t>(t) * cell_px + y, static_cast<std::size_t>(p) * cell_px + x, ch) =
                static_cast<float>(c[ch]);
    }
  }
  return img;
}

ReportSummary generate_report(const fs::path& runs_dir, const fs::path& out_dir, const ReportOptions& options) {
  require(fs::is_directory(runs_dir), ErrorCategory::missing_file, "runs directory not found: " + runs_dir.string());
  fs::create_directories(out_dir);
  const auto entries = sorted_walk(runs_dir);

  std::vector<LoadedSet> sets;
  ReportSummary summary;
  std::ofstream ratios(out_dir / "energy_ratios.csv");
  require(static_cast<bool>(ratios), ErrorCategory::io, "cannot write into " + out_dir.string());
  ratios << "dataset,domain,augmentation,label,sequence_id,frame_index,static_energy_ratio\n";

  for (const auto& p : entries) {
    if (p.filename() != kManifestName) continue;
    const Dataset ds = load_dataset(p.parent_path());
    LoadedSet set;
    set.summary.name = relative_name(p.parent_path(), runs_dir);
    set.summary.domain = ds.manifest.domain;
    set.summary.augmentation = ds.manifest.augmentation.method;
    std::map<int, std::vector<double>> per_label;
    for (const auto& fm : ds.frames) {
      const int label = fm.map.label.value_or(-1);
      const double r = static_energy_ratio(fm.map, options.static_halfwidth_bins);
      per_label[label].push_back(r);
      set.by_label[label].push_back(fm.map);
      ratios << set.summary.name << ',' << to_string(set.summary.domain) << ','
             << to_string(set.summary.augmentation) << ',' << label << ',' << fm.sequence_id << ','
             << fm.frame_index << ',' << fmt(r) << '\n';
    }
    for (const auto& [label, v] : per_label) {
      set.summary.frames_per_label[label] = v.size();
      set.summary.mean_static_energy_ratio[label] = mean(v);
    }
    sets.push_back(std::move(set));
  }
  require(!sets.empty(), ErrorCategory::missing_file, "no dataset manifests under " + runs_dir.string());

  // Histograms per dataset and label.
  std::vector<std::map<int, Histogram>> hists(sets.size());
  {
    std::ofstream out(out_dir / "histograms.csv");
    out << "dataset,label,bin_lo,bin_hi,count\n";
    for (std::size_t s = 0; s < sets.size(); ++s) {
      for (const auto& [label, maps] : sets[s].by_label) {
        const auto h = magnitude_histogram(maps, options.histogram_edges);
        for (std::size_t b = 0; b < h.counts.size(); ++b)
          out << sets[s].summary.name << ',' << label << ',' << fmt(h.bin_edges[b]) << ',' << fmt(h.bin_edges[b + 1])
              << ',' << h.counts[b] << '\n';
        hists[s][label] = h;
      }
    }
  }

  // Every simulated dataset against every untouched pseudo-real dataset.
  {
    std::ofstream out(out_dir / "alignment.csv");
    out << "sim_dataset,sim_augmentation,real_dataset,label,w1_db,static_energy_ratio_distance\n";
    for (std::size_t a = 0; a < sets.size(); ++a) {
      if (sets[a].summary.domain != Domain::sim) continue;
      for (std::size_t b = 0; b < sets.size(); ++b) {
        const auto& real = sets[b].summary;
        if (real.domain != Domain::pseudo_real || real.augmentation != AugmentMethod::none) continue;
        AlignmentRow row{sets[a].summary.name, real.name, std::nullopt, {}};
        for (const auto& [label, ratio] : sets[a].summary.mean_static_energy_ratio) {
          const auto it = real.mean_static_energy_ratio.find(label);
          if (it == real.mean_static_energy_ratio.end()) continue;
          const double dist = std::abs(ratio - it->second);
          row.static_energy_ratio_distance[label] = dist;
          std::string w1 = "";
          if (label == 0) {
            row.wasserstein_empty_db = wasserstein1(hists[a].at(0), hists[b].at(0));
            w1 = fmt(*row.wasserstein_empty_db);
          }
          out << row.sim << ',' << to_string(sets[a].summary.augmentation) << ',' << row.real << ',' << label << ','
              << w1 << ',' << fmt(dist) << '\n';
        }
        summary.alignment.push_back(std::move(row));
      }
    }
  }

  // Confusion matrices produced by eval.
  const std::string suffix = ".confusion.csv";
  for (const auto& p : entries) {
    const auto name = p.filename().string();
    if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
    std::ifstream in(p);
    const auto cm = read_confusion_csv(in);
    const auto rel = relative_name(p, runs_dir);
    summary.confusion_files.push_back(rel);
    if (options.plots) {
      std::string stem = rel.substr(0, rel.size() - suffix.size());
      std::replace(stem.begin(), stem.end(), '/', '_');
      fs::create_directories(out_dir / "confusion");
      write_png(confusion_heatmap(cm), out_dir / "confusion" / (stem + ".png"));
    }
  }

  if (options.plots) {
    // Normalized empty-scene histograms, one polyline per dataset.
    const std::size_t w = 400, h = 240;
    Canvas hist_plot(w, h);
    double peak = 0.0;
    for (const auto& m : hists)
      if (const auto it = m.find(0); it != m.end())
        for (auto c : it->second.counts) peak = std::max(peak, static_cast<double>(c) / it->second.total);
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const auto it = hists[s].find(0);
      if (it == hists[s].end() || peak <= 0.0) continue;
      const auto& hg = it->second;
      const auto n = hg.counts.size();
      long px = -1, py = -1;
      for (std::size_t b = 0; b < n; ++b) {
        const long x = static_cast<long>((b + 0.5) * (w - 1) / n);
        const long y = static_cast<long>(h - 1) -
                       std::lround(static_cast<double>(hg.counts[b]) / hg.total / peak * static_cast<double>(h - 11));
        if (px >= 0) hist_plot.line(px, py, x, y, kPalette[s % kPalette.size()]);
        px = x;
        py = y;
      }
    }
    hist_plot.frame({0.0f, 0.0f, 0.0f});
    write_png(hist_plot.image, out_dir / "histograms.png");

    // Per-frame static energy ratios: one column band per dataset, y = ratio.
    Canvas strip(std::max<std::size_t>(sets.size() * 40, 80), 240);
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const long x0 = static_cast<long>(s * 40 + 8);
      std::size_t k = 0;
      for (const auto& [label, maps] : sets[s].by_label) {
        for (const auto& m : maps) {
          const double r = static_energy_ratio(m, options.static_halfwidth_bins);
          const long x = x0 + static_cast<long>(label >= 0 ? label * 8 : 0) + static_cast<long>(k++ % 6);
          const long y = 236 - std::lround(r * 232.0);
          strip.dot(x, y, kPalette[s % kPalette.size()]);
        }
      }
    }
    strip.frame({0.0f, 0.0f, 0.0f});
    write_png(strip.image, out_dir / "energy_ratios.png");
  }

  nlohmann::json j;
  j["datasets"] = nlohmann::json::array();
  for (const auto& set : sets) {
    nlohmann::json d = {{"name", set.summary.name},
                        {"domain", std::string(to_string(set.summary.domain))},
                        {"augmentation", std::string(to_string(set.summary.augmentation))}};
    for (const auto& [label, n] : set.summary.frames_per_label) {
      d["frames"][std::to_string(label)] = n;
      d["mean_static_energy_ratio"][std::to_string(label)] = set.summary.mean_static_energy_ratio.at(label);
    }
    j["datasets"].push_back(d);
    summary.datasets.push_back(set.summary);
  }
  j["alignment"] = nlohmann::json::array();
  for (const auto& row : summary.alignment) {
    nlohmann::json a = {{"sim", row.sim}, {"real", row.real}};
    if (row.wasserstein_empty_db) a["w1_empty_db"] = *row.wasserstein_empty_db;
    for (const auto& [label, d] : row.static_energy_ratio_distance)
      a["static_energy_ratio_distance"][std::to_string(label)] = d;
    j["alignment"].push_back(a);
  }
  j["confusion_files"] = summary.confusion_files;
  write_json_file(out_dir / "summary.json", j);
  return summary;
}

}  // namespace radar_cdr
