#include "radar_cdr/dataset_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace radar_cdr {

namespace fs = std::filesystem;

namespace {

std::string frame_filename(const FrameMap& fm) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "frames/s%05d_l%d_f%04d.f32", fm.sequence_id, fm.map.label.value_or(0),
                fm.frame_index);
  return buf;
}

void write_blob(const fs::path& path, const Matrix<float>& cells) {
  std::vector<char> bytes(cells.size() * 4);
  auto values = cells.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint32_t>(values[i]);
    for (int b = 0; b < 4; ++b) bytes[4 * i + static_cast<std::size_t>(b)] = static_cast<char>(bits >> (8 * b));
  }
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCategory::io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  require(static_cast<bool>(out), ErrorCategory::io, "failed writing " + path.string());
}

Matrix<float> read_blob(const fs::path& path, std::size_t rows, std::size_t cols) {
  require(fs::exists(path), ErrorCategory::missing_file, "frame file not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCategory::io, "cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  require(bytes.size() == rows * cols * 4, ErrorCategory::shape_mismatch,
          path.string() + " holds " + std::to_string(bytes.size()) + " bytes, expected " +
              std::to_string(rows * cols * 4) + " for " + std::to_string(rows) + "x" + std::to_string(cols));
  Matrix<float> cells(rows, cols);
  auto values = cells.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(bytes[4 * i + static_cast<std::size_t>(b)]) << (8 * b);
    values[i] = std::bit_cast<float>(bits);
  }
  return cells;
}

}  // namespace

nlohmann::json read_json_file(const fs::path& path) {
  require(fs::exists(path), ErrorCategory::missing_file, "file not found: " + path.string());
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCategory::io, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::io, path.string() + " is not valid JSON: " + e.what());
  }
}

void write_json_file(const fs::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCategory::io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

nlohmann::json to_json(const DatasetManifest& m) {
  nlohmann::json classes = nlohmann::json::object();
  for (const auto& [label, count] : m.classes) classes[std::to_string(label)] = count;
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& f : m.frames)
    frames.push_back({{"path", f.path}, {"label", f.label}, {"sequence_id", f.sequence_id}, {"frame_index", f.frame_index}});
  nlohmann::json aug = {{"method", std::string(to_string(m.augmentation.method))}};
  if (m.augmentation.random_dr) aug["random_dr"] = to_json(*m.augmentation.random_dr);
  if (m.augmentation.stats) aug["noise_floor_stats"] = to_json(*m.augmentation.stats);
  if (m.augmentation.seed) aug["seed"] = *m.augmentation.seed;
  return {
      {"version", m.version},
      {"radar_config", to_json(m.radar_config)},
      {"domain", std::string(to_string(m.domain))},
      {"classes", classes},
      {"shape", {m.rows, m.cols}},
      {"frames", frames},
      {"augmentation", aug},
      {"seed", m.seed},
      {"extra", m.extra},
  };
}

DatasetManifest manifest_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("version"), ErrorCategory::io, "manifest lacks a version field");
  DatasetManifest m;
  m.version = j.at("version").get<int>();
  require(m.version == kManifestVersion, ErrorCategory::version_mismatch,
          "manifest version " + std::to_string(m.version) + " is not supported (expected " +
              std::to_string(kManifestVersion) + ")");
  try {
    m.radar_config = radar_config_from_json(j.at("radar_config"));
    m.domain = parse_domain(j.at("domain").get<std::string>());
    for (const auto& [label, count] : j.at("classes").items()) m.classes[std::stoi(label)] = count.get<int>();
    m.rows = j.at("shape").at(0).get<std::size_t>();
    m.cols = j.at("shape").at(1).get<std::size_t>();
    for (const auto& f : j.at("frames"))
      m.frames.push_back({f.at("path").get<std::string>(), f.at("label").get<int>(), f.at("sequence_id").get<int>(),
                          f.at("frame_index").get<int>()});
    const auto& aug = j.at("augmentation");
    m.augmentation.method = parse_augment_method(aug.at("method").get<std::string>());
    if (aug.contains("random_dr")) m.augmentation.random_dr = random_dr_ranges_from_json(aug.at("random_dr"));
    if (aug.contains("noise_floor_stats"))
      m.augmentation.stats = noise_floor_stats_from_json(aug.at("noise_floor_stats"));
    if (aug.contains("seed")) m.augmentation.seed = aug.at("seed").get<std::uint64_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("extra")) m.extra = j.at("extra");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::io, std::string("malformed manifest: ") + e.what());
  }
  if (m.augmentation.method == AugmentMethod::cdr)
    require(m.augmentation.stats.has_value(), ErrorCategory::contract,
            "cdr-augmented manifest must embed its noise floor stats");
  return m;
}

DatasetManifest save_dataset(const fs::path& dir, const DatasetManifest& base, std::span<const FrameMap> frames) {
  require(!frames.empty(), ErrorCategory::invalid_argument, "refusing to save an empty dataset");
  if (base.augmentation.method == AugmentMethod::cdr)
    require(base.augmentation.stats.has_value(), ErrorCategory::contract, "cdr dataset needs noise floor stats");
  fs::create_directories(dir / "frames");

  DatasetManifest m = base;
  m.version = kManifestVersion;
  m.rows = frames.front().map.cells.rows();
  m.cols = frames.front().map.cells.cols();
  m.frames.clear();
  m.classes.clear();
  for (const auto& fm : frames) {
    require(fm.map.cells.rows() == m.rows && fm.map.cells.cols() == m.cols, ErrorCategory::shape_mismatch,
            "all frames of a dataset must share one shape");
    require(fm.map.label.has_value(), ErrorCategory::invalid_argument, "dataset frames must carry a label");
    require(fm.map.domain == m.domain, ErrorCategory::contract, "frame domain differs from the dataset domain");
    FrameRecord rec{frame_filename(fm), *fm.map.label, fm.sequence_id, fm.frame_index};
    write_blob(dir / rec.path, fm.map.cells);
    ++m.classes[rec.label];
    m.frames.push_back(std::move(rec));
  }
  write_json_file(dir / kManifestName, to_json(m));
  return m;
}

Dataset load_dataset(const fs::path& dir) {
  const fs::path manifest_path = dir / kManifestName;
  require(fs::exists(manifest_path), ErrorCategory::missing_file, "manifest not found: " + manifest_path.string());
  Dataset ds;
  ds.manifest = manifest_from_json(read_json_file(manifest_path));
  const auto& m = ds.manifest;
  require(m.rows > 0 && m.cols > 0, ErrorCategory::shape_mismatch, "manifest declares an empty frame shape");
  ds.frames.reserve(m.frames.size());
  for (const auto& rec : m.frames) {
    FrameMap fm;
    fm.map.cells = read_blob(dir / rec.path, m.rows, m.cols);
    fm.map.domain = m.domain;
    fm.map.label = rec.label;
    fm.sequence_id = rec.sequence_id;
    fm.frame_index = rec.frame_index;
    ds.frames.push_back(std::move(fm));
  }
  return ds;
}

}  // namespace radar_cdr
