/* Copyright 2026 The editlens Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "editlens/kernels.hpp"
#include "editlens/labeler.hpp"
#include "editlens/simmetrics.hpp"

// Hashed n-gram features feeding a linear edit head (bucket classification or
// regression) and an optional linear prompt-category head.
namespace editlens::model {

enum class Family : std::uint32_t {
  kWordUnigram = 1u << 0,
  kWordBigram = 1u << 1,
  kChar3 = 1u << 2,
  kChar4 = 1u << 3,
  kChar5 = 1u << 4,
};

std::string_view family_name(Family f);  // "word_unigram", ..., "char_5gram"
Family parse_family(std::string_view name);

struct FeatureSpec {
  std::uint64_t dim = 1u << 18;
  std::uint32_t families = static_cast<std::uint32_t>(Family::kWordUnigram) |
                           static_cast<std::uint32_t>(Family::kWordBigram) |
                           static_cast<std::uint32_t>(Family::kChar3);
  std::uint64_t hash_seed = 0;

  bool has(Family f) const { return (families & static_cast<std::uint32_t>(f)) != 0; }
  void validate() const;  // dim a power of two >= 1024, some family enabled
  bool operator==(const FeatureSpec&) const = default;
};

// L2-normalized counts of every enabled n-gram family hashed into dim bins.
// Throws InvalidInput for blank text.
kernels::SparseVector featurize(std::string_view text, const FeatureSpec& spec);

enum class HeadKind : std::uint32_t { kClassification = 0, kRegression = 1 };

inline constexpr std::size_t kAuxClasses = 9;

struct LinearHead {
  std::vector<double> weights;  // [n_out x dim], row-major
  std::vector<double> bias;     // [n_out]
  bool operator==(const LinearHead&) const = default;
};

struct ModelParams {
  HeadKind head_kind = HeadKind::kClassification;
  std::size_t n_outputs = 4;
  std::size_t dim = 1u << 18;
  LinearHead edit;
  std::optional<LinearHead> aux;  // prompt-category head, kAuxClasses outputs
  simmetrics::BucketSpec bucket_spec;
  FeatureSpec feature_spec;
  double aux_weight = 1.0;

  // All-zero parameters. The aux head exists iff aux_weight > 0.
  static ModelParams zeros(HeadKind head, const simmetrics::BucketSpec& buckets, const FeatureSpec& features,
                           double aux_weight = 1.0);
  // Same, over a raw feature dimension that bypasses FeatureSpec limits.
  static ModelParams zeros_raw(HeadKind head, std::size_t n_outputs, std::size_t dim, double aux_weight);

  void validate() const;
  bool operator==(const ModelParams&) const = default;
};

// One training row: features plus the edit target (bucket index for the
// classification head, scaled score for regression) and an optional prompt
// category index for the aux head.
struct TrainRow {
  kernels::SparseVector x;
  double target = 0.0;
  std::optional<int> category;
};

std::vector<TrainRow> make_rows(std::span<const labeler::LabeledExample> examples, const ModelParams& model);

// Softmax of the edit head. Throws WrongHead for a regression model.
std::vector<double> predict_probs(const ModelParams& model, std::string_view text);
std::vector<double> predict_probs(const ModelParams& model, const kernels::SparseVector& x);

// Classification: normalize_score(decode_weighted(probs)); regression: the
// head output clamped to [0, 1].
double predict_score(const ModelParams& model, std::string_view text);
double predict_score(const ModelParams& model, const kernels::SparseVector& x);

// Scores many texts concurrently; results are independent of thread count.
std::vector<double> predict_scores(const ModelParams& model, std::span<const std::string> texts);

// Probabilities over the aux categories; throws WrongHead without an aux head.
std::vector<double> predict_category_probs(const ModelParams& model, std::string_view text);

struct Gradient {
  LinearHead edit;
  std::optional<LinearHead> aux;
};

struct LossAndGrad {
  double loss = 0.0;
  Gradient grad;
};

// Mean CE (classification) or MSE (regression) over the batch plus
// aux_weight times the mean CE of the aux head over rows with a category.
// The gradient is dense and has the same shape as the parameters.
LossAndGrad loss_and_grad(const ModelParams& model, std::span<const TrainRow> batch);
LossAndGrad loss_and_grad(const ModelParams& model, std::span<const labeler::LabeledExample> batch);

// Loss alone, computed the same way as loss_and_grad.
double loss(const ModelParams& model, std::span<const TrainRow> rows);

struct TrainConfig {
  double lr = 0.1;
  std::size_t epochs = 20;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
  double aux_weight = 1.0;
  HeadKind head = HeadKind::kClassification;

  void validate() const;
};

struct EpochLog {
  std::size_t epoch = 0;
  double loss = 0.0;
  std::optional<double> val_macro_f1;
};

struct TrainResult {
  ModelParams model;
  std::vector<EpochLog> log;
};

// Mini-batch gradient descent from zero parameters. Throws TrainingDiverged
// as soon as the epoch loss is not finite. `validation` (may be empty) yields
// the bucket-level macro-F1 recorded per epoch.
TrainResult train(std::span<const labeler::LabeledExample> train_set,
                  std::span<const labeler::LabeledExample> validation, const simmetrics::BucketSpec& buckets,
                  const FeatureSpec& features, const TrainConfig& config);
TrainResult train_rows(std::span<const TrainRow> rows, ModelParams initial, const TrainConfig& config,
                       const std::function<std::optional<double>(const ModelParams&)>& validate_epoch = {});

// Bucket a score falls in when mapped back onto the raw threshold range.
int score_bucket(double score, const simmetrics::BucketSpec& spec);

// Versioned little-endian binary container.
std::vector<std::uint8_t> serialize(const ModelParams& model);
ModelParams deserialize(std::span<const std::uint8_t> bytes);
void save(const ModelParams& model, const std::filesystem::path& path);
ModelParams load(const std::filesystem::path& path);

}  // namespace editlens::model
