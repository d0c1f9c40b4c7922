#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "radar_cdr/dataset_io.hpp"

using namespace radar_cdr;
namespace fs = std::filesystem;

namespace {

class DatasetIo : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("radar_cdr_ds_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::vector<FrameMap> frames(Domain domain = Domain::sim) {
    std::mt19937_64 rng(1);
    std::normal_distribution<float> g(-110.0f, 5.0f);
    std::vector<FrameMap> out;
    for (int i = 0; i < 6; ++i) {
      FrameMap fm;
      fm.map.cells = Matrix<float>(8, 4);
      for (float& v : fm.map.cells.values()) v = g(rng);
      fm.map.domain = domain;
      fm.map.label = i % 3;
      fm.sequence_id = i / 2;
      fm.frame_index = i % 2;
      out.push_back(std::move(fm));
    }
    return out;
  }

  template <typename F>
  static ErrorCategory category_of(F&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.category();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCategory::usage;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(DatasetIo, RoundTripPreservesEverything) {
  DatasetManifest base;
  base.domain = Domain::pseudo_real;
  base.seed = 42;
  base.augmentation.method = AugmentMethod::none;
  base.extra = {{"note", "unit"}};
  const auto src = frames(Domain::pseudo_real);
  const auto written = save_dataset(dir_, base, src);
  EXPECT_EQ(written.rows, 8u);
  EXPECT_EQ(written.cols, 4u);
  EXPECT_EQ(written.classes.at(0), 2);
  EXPECT_EQ(written.classes.at(2), 2);

  const auto ds = load_dataset(dir_);
  EXPECT_EQ(ds.manifest.domain, Domain::pseudo_real);
  EXPECT_EQ(ds.manifest.seed, 42u);
  EXPECT_EQ(ds.manifest.extra["note"], "unit");
  EXPECT_EQ(ds.manifest.radar_config, RadarConfig{});
  ASSERT_EQ(ds.frames.size(), src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    EXPECT_EQ(ds.frames[i].map.cells, src[i].map.cells);
    EXPECT_EQ(ds.frames[i].map.label, src[i].map.label);
    EXPECT_EQ(ds.frames[i].sequence_id, src[i].sequence_id);
    EXPECT_EQ(ds.frames[i].frame_index, src[i].frame_index);
  }
}

TEST_F(DatasetIo, BlobsAreLittleEndianFloat32) {
  const auto src = frames();
  const auto m = save_dataset(dir_, {}, src);
  std::ifstream in(dir_ / m.frames[0].path, std::ios::binary);
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  const std::uint32_t bits = b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  float v;
  std::memcpy(&v, &bits, 4);
  EXPECT_EQ(v, src[0].map.cells(0, 0));
  EXPECT_EQ(fs::file_size(dir_ / m.frames[0].path), 8u * 4u * 4u);
}

TEST_F(DatasetIo, AugmentationRecordRoundTrip) {
  DatasetManifest base;
  base.augmentation.method = AugmentMethod::cdr;
  base.augmentation.stats = NoiseFloorStats{-112.0, 6.1, 8192};
  base.augmentation.seed = 9;
  save_dataset(dir_, base, frames());
  const auto ds = load_dataset(dir_);
  ASSERT_TRUE(ds.manifest.augmentation.stats.has_value());
  EXPECT_EQ(ds.manifest.augmentation.method, AugmentMethod::cdr);
  EXPECT_EQ(ds.manifest.augmentation.stats->mean_db, -112.0);
  EXPECT_EQ(ds.manifest.augmentation.seed, 9u);
}

TEST_F(DatasetIo, MissingFrameIsReportedByPath) {
  const auto m = save_dataset(dir_, {}, frames());
  fs::remove(dir_ / m.frames[3].path);
  try {
    load_dataset(dir_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::missing_file);
    EXPECT_NE(std::string(e.what()).find(m.frames[3].path), std::string::npos);
  }
  EXPECT_EQ(category_of([&] { load_dataset(dir_ / "nowhere"); }), ErrorCategory::missing_file);
}

TEST_F(DatasetIo, TruncatedBlobIsShapeMismatch) {
  const auto m = save_dataset(dir_, {}, frames());
  fs::resize_file(dir_ / m.frames[1].path, 8 * 4 * 4 - 4);
  EXPECT_EQ(category_of([&] { load_dataset(dir_); }), ErrorCategory::shape_mismatch);
}

TEST_F(DatasetIo, VersionAndContractChecks) {
  save_dataset(dir_, {}, frames());
  auto j = read_json_file(dir_ / kManifestName);
  j["version"] = 2;
  write_json_file(dir_ / kManifestName, j);
  EXPECT_EQ(category_of([&] { load_dataset(dir_); }), ErrorCategory::version_mismatch);

  j["version"] = kManifestVersion;
  j["augmentation"]["method"] = "cdr";
  j["augmentation"].erase("noise_floor_stats");
  EXPECT_EQ(category_of([&] { manifest_from_json(j); }), ErrorCategory::contract);

  DatasetManifest cdr;
  cdr.augmentation.method = AugmentMethod::cdr;
  EXPECT_EQ(category_of([&] { save_dataset(dir_, cdr, frames()); }), ErrorCategory::contract);
  EXPECT_EQ(category_of([&] { save_dataset(dir_, {}, frames(Domain::pseudo_real)); }), ErrorCategory::contract);

  std::ofstream(dir_ / kManifestName) << "{ not json";
  EXPECT_EQ(category_of([&] { load_dataset(dir_); }), ErrorCategory::io);
}
