#include "radar_cdr/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>

#include "radar_cdr/rng.hpp"

namespace radar_cdr {

namespace {

constexpr std::size_t kIn = 3;
constexpr std::size_t kC1 = 8;
constexpr std::size_t kC2 = 16;
constexpr std::size_t kKernel = 3;
constexpr std::size_t kTaps = kKernel * kKernel;
constexpr std::size_t kS1 = kImageSize / 2;  // 32
constexpr std::size_t kS2 = kS1 / 2;         // 16
constexpr std::size_t kP1 = kS1 * kS1;
constexpr std::size_t kP2 = kS2 * kS2;
constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

// Sum of a[i] * b[i] with four interleaved partial sums, which keeps the
// reduction order fixed while letting the compiler vectorize it.
double dot(const double* a, const double* b, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t body = n & ~std::size_t{3};
  for (std::size_t i = 0; i < body; i += 4)
    for (std::size_t j = 0; j < 4; ++j) acc[j] += a[i + j] * b[i + j];
  for (std::size_t i = body; i < n; ++i) acc[0] += a[i] * b[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

// 3x3, stride 2, zero padding 1. cols is (channels*9) x (out*out).
void im2col(const double* in, std::size_t channels, std::size_t size, std::size_t out_size, double* cols) {
  const std::size_t positions = out_size * out_size;
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t ky = 0; ky < kKernel; ++ky) {
      for (std::size_t kx = 0; kx < kKernel; ++kx) {
        double* dst = cols + ((c * kKernel + ky) * kKernel + kx) * positions;
        // With pad 1 and stride 2 only the first row/column can fall outside.
        const std::size_t ox0 = kx == 0 ? 1 : 0;
        for (std::size_t oy = 0; oy < out_size; ++oy) {
          double* row = dst + oy * out_size;
          if (2 * oy + ky == 0) {
            std::fill(row, row + out_size, 0.0);
            continue;
          }
          const double* src = in + (c * size + 2 * oy + ky - 1) * size;
          if (ox0 == 1) row[0] = 0.0;
          for (std::size_t ox = ox0; ox < out_size; ++ox) row[ox] = src[2 * ox + kx - 1];
        }
      }
    }
  }
}

void col2im(const double* cols, std::size_t channels, std::size_t size, std::size_t out_size, double* in) {
  const std::size_t positions = out_size * out_size;
  std::fill(in, in + channels * size * size, 0.0);
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t ky = 0; ky < kKernel; ++ky) {
      for (std::size_t kx = 0; kx < kKernel; ++kx) {
        const double* src = cols + ((c * kKernel + ky) * kKernel + kx) * positions;
        for (std::size_t oy = 0; oy < out_size; ++oy) {
          const auto y = static_cast<std::ptrdiff_t>(2 * oy + ky) - 1;
          if (y < 0 || y >= static_cast<std::ptrdiff_t>(size)) continue;
          for (std::size_t ox = 0; ox < out_size; ++ox) {
            const auto x = static_cast<std::ptrdiff_t>(2 * ox + kx) - 1;
            if (x < 0 || x >= static_cast<std::ptrdiff_t>(size)) continue;
            in[(c * size + static_cast<std::size_t>(y)) * size + static_cast<std::size_t>(x)] +=
                src[oy * out_size + ox];
          }
        }
      }
    }
  }
}

// out[f][p] = b[f] + sum_r w[f][r] * cols[r][p]
void conv_forward(const Tensor& w, const Tensor& b, const double* cols, std::size_t filters, std::size_t rows,
                  std::size_t positions, double* out) {
  for (std::size_t f = 0; f < filters; ++f) {
    double* o = out + f * positions;
    std::fill(o, o + positions, b.values[f]);
    for (std::size_t r = 0; r < rows; ++r) {
      const double wf = w.values[f * rows + r];
      const double* c = cols + r * positions;
      for (std::size_t p = 0; p < positions; ++p) o[p] += wf * c[p];
    }
  }
}

// Accumulates dW, db; writes dcols when non-null.
void conv_backward(const Tensor& w, const double* cols, const double* dout, std::size_t filters, std::size_t rows,
                   std::size_t positions, Tensor& dw, Tensor& db, double* dcols) {
  for (std::size_t f = 0; f < filters; ++f) {
    const double* d = dout + f * positions;
    double bsum = 0.0;
    for (std::size_t p = 0; p < positions; ++p) bsum += d[p];
    db.values[f] += bsum;
    for (std::size_t r = 0; r < rows; ++r) dw.values[f * rows + r] += dot(d, cols + r * positions, positions);
  }
  if (dcols == nullptr) return;
  std::fill(dcols, dcols + rows * positions, 0.0);
  for (std::size_t f = 0; f < filters; ++f) {
    const double* d = dout + f * positions;
    for (std::size_t r = 0; r < rows; ++r) {
      const double wf = w.values[f * rows + r];
      double* dc = dcols + r * positions;
      for (std::size_t p = 0; p < positions; ++p) dc[p] += wf * d[p];
    }
  }
}

void check_image(const RdImage& image) {
  require(image.height == kImageSize && image.width == kImageSize &&
              image.pixels.size() == kImageSize * kImageSize * 3,
          ErrorCategory::shape_mismatch,
          "classifier expects a 64x64x3 image, got " + std::to_string(image.height) + "x" +
              std::to_string(image.width));
}

void check_params(const ClassifierParams& p) {
  const int k = p.num_classes();
  require(k >= 2 && p.conv1_weight.size() == kC1 * kIn * kTaps && p.conv1_bias.size() == kC1 &&
              p.conv2_weight.size() == kC2 * kC1 * kTaps && p.conv2_bias.size() == kC2 &&
              p.head_weight.size() == static_cast<std::size_t>(k) * kC2,
          ErrorCategory::shape_mismatch, "classifier parameter tensors have unexpected shapes");
}

// Per-sample activations and scratch space.
struct Workspace {
  std::vector<double> input = std::vector<double>(kIn * kImageSize * kImageSize);
  std::vector<double> cols1 = std::vector<double>(kIn * kTaps * kP1);
  std::vector<double> z1 = std::vector<double>(kC1 * kP1);
  std::vector<double> a1 = std::vector<double>(kC1 * kP1);
  std::vector<double> cols2 = std::vector<double>(kC1 * kTaps * kP2);
  std::vector<double> z2 = std::vector<double>(kC2 * kP2);
  std::vector<double> pooled = std::vector<double>(kC2);
  std::vector<double> logits;
  std::vector<double> dz2 = std::vector<double>(kC2 * kP2);
  std::vector<double> dcols2 = std::vector<double>(kC1 * kTaps * kP2);
  std::vector<double> da1 = std::vector<double>(kC1 * kP1);
};

void load_input(const RdImage& image, std::vector<double>& chw) {
  check_image(image);
  for (std::size_t y = 0; y < kImageSize; ++y)
    for (std::size_t x = 0; x < kImageSize; ++x)
      for (std::size_t c = 0; c < kIn; ++c) chw[(c * kImageSize + y) * kImageSize + x] = image.at(y, x, c);
}

void run_forward(const ClassifierParams& p, Workspace& ws) {
  im2col(ws.input.data(), kIn, kImageSize, kS1, ws.cols1.data());
  conv_forward(p.conv1_weight, p.conv1_bias, ws.cols1.data(), kC1, kIn * kTaps, kP1, ws.z1.data());
  for (std::size_t i = 0; i < ws.z1.size(); ++i) ws.a1[i] = std::max(ws.z1[i], 0.0);
  im2col(ws.a1.data(), kC1, kS1, kS2, ws.cols2.data());
  conv_forward(p.conv2_weight, p.conv2_bias, ws.cols2.data(), kC2, kC1 * kTaps, kP2, ws.z2.data());
  for (std::size_t f = 0; f < kC2; ++f) {
    double acc = 0.0;
    for (std::size_t q = 0; q < kP2; ++q) acc += std::max(ws.z2[f * kP2 + q], 0.0);
    ws.pooled[f] = acc / kP2;
  }
  const auto k = static_cast<std::size_t>(p.num_classes());
  ws.logits.assign(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    double acc = p.head_bias.values[c];
    for (std::size_t f = 0; f < kC2; ++f) acc += p.head_weight.values[c * kC2 + f] * ws.pooled[f];
    ws.logits[c] = acc;
  }
}

double cross_entropy(const std::vector<double>& logits, int label) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  double denom = 0.0;
  for (double v : logits) denom += std::exp(v - peak);
  return -(logits[static_cast<std::size_t>(label)] - peak - std::log(denom));
}

// Cross-entropy of one sample; accumulates scale * gradient into g.
double run_backward(const ClassifierParams& p, Workspace& ws, int label, double scale, ClassifierParams& g) {
  const auto k = ws.logits.size();
  const double peak = *std::max_element(ws.logits.begin(), ws.logits.end());
  std::vector<double> prob(k);
  double denom = 0.0;
  for (std::size_t c = 0; c < k; ++c) denom += (prob[c] = std::exp(ws.logits[c] - peak));
  for (double& v : prob) v /= denom;
  const double loss = cross_entropy(ws.logits, label);

  std::vector<double> dlogits(prob);
  dlogits[static_cast<std::size_t>(label)] -= 1.0;
  for (double& v : dlogits) v *= scale;

  double dpooled[kC2] = {};
  for (std::size_t c = 0; c < k; ++c) {
    g.head_bias.values[c] += dlogits[c];
    for (std::size_t f = 0; f < kC2; ++f) {
      g.head_weight.values[c * kC2 + f] += dlogits[c] * ws.pooled[f];
      dpooled[f] += p.head_weight.values[c * kC2 + f] * dlogits[c];
    }
  }
  for (std::size_t f = 0; f < kC2; ++f)
    for (std::size_t q = 0; q < kP2; ++q)
      ws.dz2[f * kP2 + q] = ws.z2[f * kP2 + q] > 0.0 ? dpooled[f] / kP2 : 0.0;

  conv_backward(p.conv2_weight, ws.cols2.data(), ws.dz2.data(), kC2, kC1 * kTaps, kP2, g.conv2_weight,
                g.conv2_bias, ws.dcols2.data());
  col2im(ws.dcols2.data(), kC1, kS1, kS2, ws.da1.data());
  for (std::size_t i = 0; i < ws.da1.size(); ++i)
    if (ws.z1[i] <= 0.0) ws.da1[i] = 0.0;
  conv_backward(p.conv1_weight, ws.cols1.data(), ws.da1.data(), kC1, kIn * kTaps, kP1, g.conv1_weight,
                g.conv1_bias, nullptr);
  return loss;
}

void glorot(Tensor& t, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-a, a);
  for (double& v : t.values) v = dist(rng);
}

}  // namespace

std::string_view to_string(Task task) { return task == Task::occupancy ? "occupancy" : "counting"; }

Task parse_task(std::string_view text) {
  if (text == "occupancy") return Task::occupancy;
  if (text == "counting") return Task::counting;
  fail(ErrorCategory::invalid_argument, "unknown task '" + std::string(text) + "'");
}

std::string_view to_string(Optimizer optimizer) { return optimizer == Optimizer::sgd ? "sgd" : "adam"; }

Optimizer parse_optimizer(std::string_view text) {
  if (text == "sgd") return Optimizer::sgd;
  if (text == "adam") return Optimizer::adam;
  fail(ErrorCategory::invalid_argument, "unknown optimizer '" + std::string(text) + "'");
}

int num_classes(Task task) { return task == Task::occupancy ? 2 : 3; }

int task_label(Task task, int occupancy_label) {
  occupancy_from_label(occupancy_label);
  return task == Task::occupancy ? (occupancy_label > 0 ? 1 : 0) : occupancy_label;
}

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
  const std::size_t n = std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
  return Tensor{std::move(shape), std::vector<double>(n, 0.0)};
}

ClassifierParams ClassifierParams::zeros(int num_classes) {
  require(num_classes >= 2, ErrorCategory::invalid_argument, "classifier needs at least two classes");
  const auto k = static_cast<std::size_t>(num_classes);
  return {Tensor::zeros({kC1, kIn, kKernel, kKernel}),
          Tensor::zeros({kC1}),
          Tensor::zeros({kC2, kC1, kKernel, kKernel}),
          Tensor::zeros({kC2}),
          Tensor::zeros({k, kC2}),
          Tensor::zeros({k})};
}

ClassifierParams init_params(int num_classes, std::uint64_t seed) {
  ClassifierParams p = ClassifierParams::zeros(num_classes);
  Rng rng = make_rng(seed, "init");
  glorot(p.conv1_weight, kIn * kTaps, kC1 * kTaps, rng);
  glorot(p.conv2_weight, kC1 * kTaps, kC2 * kTaps, rng);
  glorot(p.head_weight, kC2, static_cast<std::size_t>(num_classes), rng);
  return p;
}

void validate(const TrainConfig& c) {
  require(std::isfinite(c.learning_rate) && c.learning_rate > 0.0, ErrorCategory::invalid_argument,
          "learning_rate must be > 0");
  require(c.epochs >= 1, ErrorCategory::invalid_argument, "epochs must be >= 1");
  require(c.batch_size >= 1, ErrorCategory::invalid_argument, "batch_size must be >= 1");
}

nlohmann::json to_json(const TrainConfig& c) {
  return {{"optimizer", std::string(to_string(c.optimizer))},
          {"learning_rate", c.learning_rate},
          {"epochs", c.epochs},
          {"batch_size", c.batch_size},
          {"seed", c.seed},
          {"task", std::string(to_string(c.task))}};
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
  require(j.is_object(), ErrorCategory::invalid_argument, "train config must be a JSON object");
  for (const auto& [key, _] : j.items())
    require(key == "optimizer" || key == "learning_rate" || key == "epochs" || key == "batch_size" || key == "seed" || key == "task",
            ErrorCategory::invalid_argument, "unknown train config key '" + key + "'");
  TrainConfig c;
  if (j.contains("optimizer")) c.optimizer = parse_optimizer(j.at("optimizer").get<std::string>());
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.seed = j.value("seed", c.seed);
  if (j.contains("task")) c.task = parse_task(j.at("task").get<std::string>());
  validate(c);
  return c;
}

void validate(const LabeledDataset& ds, int k) {
  if (ds.split == Split::train)
    require(ds.domain == Domain::sim, ErrorCategory::contract, "training data must come from simulation");
  else
    require(ds.domain == Domain::pseudo_real, ErrorCategory::contract, "test data must be pseudo-real");
  for (const auto& item : ds.items) {
    require(item.label >= 0 && item.label < k, ErrorCategory::invalid_argument,
            "label " + std::to_string(item.label) + " out of range for " + std::to_string(k) + " classes");
    check_image(item.image);
  }
}

std::vector<double> forward(const ClassifierParams& params, const RdImage& image) {
  check_params(params);
  thread_local Workspace ws;
  load_input(image, ws.input);
  run_forward(params, ws);
  return ws.logits;
}

LossAndGrads loss_and_grads(const ClassifierParams& params, std::span<const LabeledItem> batch) {
  check_params(params);
  require(!batch.empty(), ErrorCategory::invalid_argument, "loss_and_grads needs a non-empty batch");
  LossAndGrads out{0.0, ClassifierParams::zeros(params.num_classes())};
  thread_local Workspace ws;
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (const auto& item : batch) {
    require(item.label >= 0 && item.label < params.num_classes(), ErrorCategory::invalid_argument,
            "label out of range");
    load_input(item.image, ws.input);
    run_forward(params, ws);
    out.loss += run_backward(params, ws, item.label, scale, out.grads);
  }
  out.loss *= scale;
  return out;
}

TrainResult train(const LabeledDataset& dataset, const TrainConfig& config) {
  validate(config);
  const int k = num_classes(config.task);
  validate(dataset, k);
  require(!dataset.items.empty(), ErrorCategory::invalid_argument, "training set is empty");

  TrainResult result;
  result.params = init_params(k, config.seed);
  ClassifierParams& p = result.params;

  // Inputs are converted once; training then only touches the CHW buffers.
  const std::size_t n = dataset.items.size();
  const std::size_t input_size = kIn * kImageSize * kImageSize;
  std::vector<double> inputs(n * input_size);
  {
    std::vector<double> chw(input_size);
    for (std::size_t i = 0; i < n; ++i) {
      load_input(dataset.items[i].image, chw);
      std::copy(chw.begin(), chw.end(), inputs.begin() + static_cast<std::ptrdiff_t>(i * input_size));
    }
  }

  Workspace ws;
  auto evaluate = [&](std::size_t i) {
    std::copy_n(inputs.begin() + static_cast<std::ptrdiff_t>(i * input_size), input_size, ws.input.begin());
    run_forward(p, ws);
  };

  {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      evaluate(i);
      total += cross_entropy(ws.logits, dataset.items[i].label);
    }
    result.initial_loss = total / static_cast<double>(n);
  }

  Rng shuffle_rng = make_rng(config.seed, "shuffle");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  ClassifierParams grads = ClassifierParams::zeros(k);
  std::vector<Tensor> moment1, moment2;
  grads.for_each([&](const char*, const Tensor& t) {
    moment1.push_back(t);
    moment2.push_back(t);
  });
  long step = 0;
  const auto batch = static_cast<std::size_t>(config.batch_size);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      const double scale = 1.0 / static_cast<double>(end - start);
      grads.for_each([](const char*, Tensor& t) { std::fill(t.values.begin(), t.values.end(), 0.0); });
      double loss = 0.0;
      for (std::size_t b = start; b < end; ++b) {
        evaluate(order[b]);
        loss += run_backward(p, ws, dataset.items[order[b]].label, scale, grads);
      }
      loss *= scale;
      if (!std::isfinite(loss))
        fail(ErrorCategory::divergence, "training diverged at epoch " + std::to_string(epoch) + " (loss " +
                                            std::to_string(loss) + "); lower the learning rate");
      ++step;
      std::vector<const Tensor*> gt;
      grads.for_each([&](const char*, const Tensor& t) { gt.push_back(&t); });
      std::size_t idx = 0;
      p.for_each([&](const char*, Tensor& t) {
        const auto& g = gt[idx]->values;
        if (config.optimizer == Optimizer::sgd) {
          for (std::size_t i = 0; i < t.values.size(); ++i) t.values[i] -= config.learning_rate * g[i];
        } else {
          auto& m = moment1[idx].values;
          auto& v = moment2[idx].values;
          const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
          const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
          for (std::size_t i = 0; i < t.values.size(); ++i) {
            m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * g[i];
            v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * g[i] * g[i];
            t.values[i] -= config.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + kAdamEps);
          }
        }
        ++idx;
      });
      epoch_loss += loss;
      ++batches;
    }
    result.loss_history.push_back(epoch_loss / static_cast<double>(batches));
  }
  return result;
}

int predict(const ClassifierParams& params, const RdImage& image) {
  const auto logits = forward(params, image);
  // max_element returns the first maximum, i.e. the smaller index on ties.
  return static_cast<int>(std::max_element(logits.begin(), logits.end()) - logits.begin());
}

std::vector<int> predict_batch(const ClassifierParams& params, std::span<const LabeledItem> items) {
  std::vector<int> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(predict(params, item.image));
  return out;
}

void save_params(const ClassifierParams& params, const std::filesystem::path& path, const nlohmann::json& metadata) {
  check_params(params);
  nlohmann::json header = nlohmann::json::object();
  std::vector<unsigned char> blob;
  params.for_each([&](const char* name, const Tensor& t) {
    const std::size_t begin = blob.size();
    for (double v : t.values) {
      const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
      for (int b = 0; b < 4; ++b) blob.push_back(static_cast<unsigned char>(bits >> (8 * b)));
    }
    header[name] = {{"dtype", "F32"}, {"shape", t.shape}, {"data_offsets", {begin, blob.size()}}};
  });
  header["__metadata__"] = metadata;
  const std::string text = header.dump();

  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCategory::io, "cannot open " + path.string() + " for writing");
  const auto len = static_cast<std::uint64_t>(text.size());
  for (int b = 0; b < 8; ++b) out.put(static_cast<char>((len >> (8 * b)) & 0xff));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.write(reinterpret_cast<const char*>(blob.data()), static_cast<std::streamsize>(blob.size()));
  require(static_cast<bool>(out), ErrorCategory::io, "failed writing " + path.string());
}

LoadedModel load_params(const std::filesystem::path& path) {
  require(std::filesystem::exists(path), ErrorCategory::missing_file, "model file not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCategory::io, "cannot open " + path.string());
  unsigned char lenbuf[8];
  in.read(reinterpret_cast<char*>(lenbuf), 8);
  require(in.gcount() == 8, ErrorCategory::shape_mismatch, "model file truncated: " + path.string());
  std::uint64_t len = 0;
  for (int b = 0; b < 8; ++b) len |= static_cast<std::uint64_t>(lenbuf[b]) << (8 * b);
  require(len < (1u << 24), ErrorCategory::shape_mismatch, "implausible model header length");
  std::string text(len, '\0');
  in.read(text.data(), static_cast<std::streamsize>(len));
  require(static_cast<std::uint64_t>(in.gcount()) == len, ErrorCategory::shape_mismatch, "model header truncated");
  const std::vector<unsigned char> blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::io, std::string("model header is not valid JSON: ") + e.what());
  }
  require(header.contains("head.bias"), ErrorCategory::shape_mismatch, "model header lacks head.bias");
  const auto k = header["head.bias"]["shape"].at(0).get<int>();
  LoadedModel model{ClassifierParams::zeros(k), header.value("__metadata__", nlohmann::json::object())};
  model.params.for_each([&](const char* name, Tensor& t) {
    require(header.contains(name), ErrorCategory::shape_mismatch, std::string("model lacks tensor ") + name);
    const auto& entry = header[name];
    require(entry["shape"].get<std::vector<std::size_t>>() == t.shape, ErrorCategory::shape_mismatch,
            std::string("tensor ") + name + " has an unexpected shape");
    const auto begin = entry["data_offsets"].at(0).get<std::size_t>();
    const auto end = entry["data_offsets"].at(1).get<std::size_t>();
    require(end - begin == 4 * t.size() && end <= blob.size(), ErrorCategory::shape_mismatch,
            std::string("tensor ") + name + " data is truncated");
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::uint32_t bits = 0;
      for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(blob[begin + 4 * i + b]) << (8 * b);
      t.values[i] = std::bit_cast<float>(bits);
    }
  });
  return model;
}

}  // namespace radar_cdr
