#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "radar_cdr/dataset_io.hpp"

#ifndef RADAR_CDR_CLI_PATH
#error "RADAR_CDR_CLI_PATH must point at the radar-cdr executable"
#endif

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / "radar_cdr_cli_test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "train.json") << R"({"epochs": 1, "batch_size": 4})";
    ASSERT_EQ(run("simulate --domain sim --sequences 1 --frames 2 --seed 1 --out " + p("sim")).code, 0);
    ASSERT_EQ(run("simulate --domain pseudo_real --sequences 1 --frames 2 --seed 2 --out " + p("real")).code, 0);
    ASSERT_EQ(run("simulate --domain pseudo_real --class 0 --sequences 1 --frames 3 --seed 3 --out " + p("calib"))
                  .code,
              0);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string p(const std::string& name) { return (dir_ / name).string(); }

  static Outcome run(const std::string& args) {
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string(RADAR_CDR_CLI_PATH) + " " + args + " > /dev/null 2> " + err.string();
    const int status = std::system(cmd.c_str());
    Outcome o;
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(err);
    std::stringstream ss;
    ss << in.rdbuf();
    o.err = ss.str();
    return o;
  }

  static inline fs::path dir_;
};

}  // namespace

TEST_F(Cli, CdrWithoutStatsIsUsageError) {
  const auto o = run("augment --in " + p("sim") + " --method cdr --out " + p("aug_nostats"));
  EXPECT_EQ(o.code, 2);
  EXPECT_EQ(o.err.rfind("error: usage:", 0), 0u) << o.err;
  EXPECT_FALSE(fs::exists(p("aug_nostats")));
}

TEST_F(Cli, UnknownSubcommandAndMissingArguments) {
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("train --in " + p("sim")).code, 2);
  EXPECT_EQ(run("simulate --class 5 --out " + p("bad_class")).code, 2);
}

TEST_F(Cli, MissingDatasetNamesCategory) {
  const auto o = run("calibrate --in " + p("does_not_exist") + " --out " + p("stats.json"));
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("error: missing_file:"), std::string::npos) << o.err;
}

TEST_F(Cli, FullWorkflowAndEvalRefusesAugmentedData) {
  ASSERT_EQ(run("calibrate --in " + p("calib") + " --out " + p("stats.json")).code, 0);
  const auto stats = radar_cdr::read_json_file(p("stats.json"));
  EXPECT_EQ(stats["n_cells"].get<std::uint64_t>(), 3u * 128u * 64u);

  ASSERT_EQ(run("augment --in " + p("sim") + " --method cdr --stats " + p("stats.json") + " --seed 4 --out " +
                p("sim_cdr"))
                .code,
            0);
  const auto ds = radar_cdr::load_dataset(p("sim_cdr"));
  EXPECT_EQ(ds.manifest.augmentation.method, radar_cdr::AugmentMethod::cdr);
  ASSERT_TRUE(ds.manifest.augmentation.stats.has_value());
  EXPECT_DOUBLE_EQ(ds.manifest.augmentation.stats->mean_db, stats["mean_db"].get<double>());

  // Augmenting pseudo-real data is a contract violation.
  const auto bad_aug = run("augment --in " + p("real") + " --method cdr --stats " + p("stats.json") + " --out " +
                           p("real_cdr"));
  EXPECT_EQ(bad_aug.code, 1);
  EXPECT_NE(bad_aug.err.find("error: contract:"), std::string::npos);

  ASSERT_EQ(run("train --in " + p("sim_cdr") + " --task counting --config " + p("train.json") + " --seed 5 --out " +
                p("model.safetensors"))
                .code,
            0);
  EXPECT_TRUE(fs::exists(p("model.safetensors.clip.json")));

  const auto refused = run("eval --model " + p("model.safetensors") + " --in " + p("sim_cdr") + " --out " +
                           p("metrics_bad.csv"));
  EXPECT_EQ(refused.code, 1);
  EXPECT_NE(refused.err.find("error: contract:"), std::string::npos) << refused.err;
  EXPECT_FALSE(fs::exists(p("metrics_bad.csv")));

  ASSERT_EQ(run("eval --model " + p("model.safetensors") + " --in " + p("real") + " --out " + p("metrics.csv")).code,
            0);
  std::ifstream in(p("metrics.csv"));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "method,task,seed,accuracy,balanced_accuracy");
  EXPECT_EQ(row.rfind("cdr,counting,5,", 0), 0u) << row;
  EXPECT_TRUE(fs::exists(p("model.confusion.csv")));

  ASSERT_EQ(run("report --runs " + dir_.string() + " --out " + p("report_out") + " --no-plots").code, 0);
  EXPECT_TRUE(fs::exists(p("report_out/summary.json")));
  EXPECT_TRUE(fs::exists(p("report_out/alignment.csv")));
}
