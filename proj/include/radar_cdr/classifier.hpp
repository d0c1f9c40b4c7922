#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radar_cdr/common.hpp"
#include "radar_cdr/rd_pipeline.hpp"

namespace radar_cdr {

enum class Task { occupancy, counting };

std::string_view to_string(Task task);
Task parse_task(std::string_view text);
int num_classes(Task task);
/// Maps an occupancy label (0/1/2) to the task's class index.
int task_label(Task task, int occupancy_label);

inline constexpr std::size_t kImageSize = 64;

struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> values;

  static Tensor zeros(std::vector<std::size_t> shape);
  std::size_t size() const { return values.size(); }
};

/// conv1 3->8 (3x3, stride 2, pad 1) -> ReLU -> conv2 8->16 (3x3, stride 2,
/// pad 1) -> ReLU -> global average pool -> dense 16->K.
struct ClassifierParams {
  Tensor conv1_weight;  // [8, 3, 3, 3]
  Tensor conv1_bias;    // [8]
  Tensor conv2_weight;  // [16, 8, 3, 3]
  Tensor conv2_bias;    // [16]
  Tensor head_weight;   // [K, 16]
  Tensor head_bias;     // [K]

  static ClassifierParams zeros(int num_classes);
  int num_classes() const { return static_cast<int>(head_bias.size()); }

  template <typename F>
  void for_each(F&& f) {
    f("conv1.weight", conv1_weight);
    f("conv1.bias", conv1_bias);
    f("conv2.weight", conv2_weight);
    f("conv2.bias", conv2_bias);
    f("head.weight", head_weight);
    f("head.bias", head_bias);
  }
  template <typename F>
  void for_each(F&& f) const {
    const_cast<ClassifierParams&>(*this).for_each(
        [&](const char* name, Tensor& t) { f(name, static_cast<const Tensor&>(t)); });
  }
};

/// Glorot-uniform weights, zero biases.
ClassifierParams init_params(int num_classes, std::uint64_t seed);

enum class Optimizer { sgd, adam };

std::string_view to_string(Optimizer optimizer);
Optimizer parse_optimizer(std::string_view text);

struct TrainConfig {
  Optimizer optimizer = Optimizer::sgd;
  double learning_rate = 0.05;
  int epochs = 30;
  int batch_size = 32;
  std::uint64_t seed = 0;
  Task task = Task::occupancy;
};

void validate(const TrainConfig& config);
nlohmann::json to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const nlohmann::json& j);

struct LabeledItem {
  RdImage image;  // 64 x 64 x 3
  int label = 0;  // task class index
};

enum class Split { train, test };

struct LabeledDataset {
  std::vector<LabeledItem> items;
  Split split = Split::train;
  Domain domain = Domain::sim;
};

/// Training data must be simulated, test data pseudo-real; labels < K.
void validate(const LabeledDataset& dataset, int num_classes);

std::vector<double> forward(const ClassifierParams& params, const RdImage& image);

struct LossAndGrads {
  double loss = 0.0;
  ClassifierParams grads;
};

/// Mean softmax cross-entropy over the batch and its exact gradient.
LossAndGrads loss_and_grads(const ClassifierParams& params, std::span<const LabeledItem> batch);

struct TrainResult {
  ClassifierParams params;
  double initial_loss = 0.0;         // full-dataset loss before the first update
  std::vector<double> loss_history;  // mean minibatch loss per epoch
};

/// Mini-batch SGD (plain, no momentum) or Adam with seed-driven
/// initialization and shuffling.
/// Throws Error(divergence) if the loss becomes non-finite.
TrainResult train(const LabeledDataset& dataset, const TrainConfig& config);

/// Argmax of the logits; ties go to the smaller class index.
int predict(const ClassifierParams& params, const RdImage& image);
std::vector<int> predict_batch(const ClassifierParams& params, std::span<const LabeledItem> items);

/// Flat little-endian float32 blob preceded by a u64 header length and a
/// JSON header mapping tensor names to dtype, shape and byte offsets.
void save_params(const ClassifierParams& params, const std::filesystem::path& path,
                 const nlohmann::json& metadata = nlohmann::json::object());

struct LoadedModel {
  ClassifierParams params;
  nlohmann::json metadata;
};

LoadedModel load_params(const std::filesystem::path& path);

}  // namespace radar_cdr
