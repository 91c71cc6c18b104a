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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "editlens/embedding.hpp"
#include "editlens/simmetrics.hpp"

namespace editlens::labeler {

enum class Editor { kHuman, kLlm, kRule };
enum class Split { kTrain, kVal, kTest };
enum class Ternary { kHuman, kAiEdited, kAiGenerated };

inline constexpr std::array<Split, 3> kSplits = {Split::kTrain, Split::kVal, Split::kTest};
inline constexpr std::array<Ternary, 3> kTernaryClasses = {Ternary::kHuman, Ternary::kAiEdited, Ternary::kAiGenerated};

std::string_view editor_name(Editor e);
std::string_view split_name(Split s);
std::string_view ternary_name(Ternary t);
Editor parse_editor(std::string_view name);
Split parse_split(std::string_view name);
Ternary parse_ternary(std::string_view name);

// The nine editing-prompt categories used by the auxiliary prompt head.
const std::array<std::string_view, 9>& prompt_categories();
std::optional<int> category_index(std::string_view name);

struct DocumentPair {
  std::string id;
  std::string source_text;
  std::string edited_text;
  Editor editor = Editor::kLlm;
  std::optional<std::string> prompt_id;
  std::optional<std::string> prompt_category;
  std::string domain = "unknown";
  std::optional<Split> split;
  // Fully machine-written counterpart of the source; labeled without
  // computing a distance.
  bool mirror = false;
};

struct LabeledExample {
  std::string id;
  std::string text;
  simmetrics::MetricKind metric_kind = simmetrics::MetricKind::kCosineDistance;
  double raw_score = 0.0;  // distance orientation
  double target = 0.0;
  int bucket = 0;
  Ternary ternary = Ternary::kHuman;
  Split split = Split::kTrain;
  bool sentinel = false;  // raw_score is the tau_high placeholder of a mirror
  std::optional<std::string> prompt_category;

  bool operator==(const LabeledExample&) const = default;
};

struct LabelSpec {
  simmetrics::MetricKind kind = simmetrics::MetricKind::kCosineDistance;
  simmetrics::ScaleSpec scale = simmetrics::default_scale(simmetrics::MetricKind::kCosineDistance);
  int buckets = 4;
  simmetrics::SoftNgramParams soft_ngrams;

  simmetrics::BucketSpec bucket_spec() const { return {buckets, scale.tau_low, scale.tau_high}; }
  void validate() const;
  static LabelSpec defaults(simmetrics::MetricKind kind, int buckets = 4);
};

struct Embedders {
  embedding::Embedder* doc = nullptr;     // cosine distance
  embedding::Embedder* phrase = nullptr;  // soft n-grams
};

// raw <= tau_low -> human; raw >= tau_high -> ai_generated; otherwise ai_edited.
Ternary ternary_of(double raw, const simmetrics::ScaleSpec& scale);

// Distance-orientation score of the pair under spec.kind.
double raw_distance(const DocumentPair& pair, const LabelSpec& spec, const Embedders& embedders);

// Builds the example for pair.edited_text from its raw distance.
LabeledExample label_from_raw(const DocumentPair& pair, double raw, const LabelSpec& spec);
LabeledExample label_pair(const DocumentPair& pair, const LabelSpec& spec, const Embedders& embedders);
LabeledExample label_fully_ai(const std::string& id, const std::string& text, const LabelSpec& spec,
                              Split split = Split::kTrain);

// Labels every pair (mirrors through label_fully_ai), concurrently. A pair
// without a split takes splits[i] when provided, else train.
std::vector<LabeledExample> label_pairs(std::span<const DocumentPair> pairs, const LabelSpec& spec,
                                        const Embedders& embedders, std::span<const Split> splits = {});

// Empty when the example satisfies every labeling invariant, otherwise a
// description of the first violation.
std::optional<std::string> check_example(const LabeledExample& example, const LabelSpec& spec);

struct SplitFractions {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;

  void validate() const;
};

// Prompt-disjoint assignment: every prompt_id lands in exactly one split;
// pairs without a prompt_id are assigned independently by id. Throws
// InsufficientPrompts when there are some, but fewer distinct prompt ids than
// nonzero fractions.
std::vector<Split> split_by_prompt(std::span<const DocumentPair> pairs, const SplitFractions& fractions,
                                   std::uint64_t seed);

struct WordCountStats {
  std::size_t count = 0;
  double mean_words = 0.0;
  std::size_t min_words = 0;
  std::size_t max_words = 0;
};

struct DatasetStats {
  WordCountStats total;
  std::map<std::pair<Split, Ternary>, WordCountStats> by_split_ternary;
  std::map<Split, WordCountStats> by_split;
  std::map<Ternary, WordCountStats> by_ternary;
};

DatasetStats dataset_stats(std::span<const LabeledExample> examples);
nlohmann::json stats_to_json(const DatasetStats& stats);

// JSONL record conversions. Parsing throws InvalidInput naming the key.
DocumentPair pair_from_json(const nlohmann::json& j);
nlohmann::json pair_to_json(const DocumentPair& pair);
LabeledExample example_from_json(const nlohmann::json& j);
nlohmann::json example_to_json(const LabeledExample& example);

}  // namespace editlens::labeler
