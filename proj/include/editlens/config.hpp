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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "editlens/baseline_model.hpp"
#include "editlens/embedding.hpp"
#include "editlens/labeler.hpp"
#include "editlens/simmetrics.hpp"

namespace editlens::config {

struct AgreementConfig {
  std::size_t bootstrap = 1000;
  std::vector<int> bucket_variants = {4, 5, 6};
};

struct HistogramConfig {
  std::size_t bins = 20;
  double lo = 0.0;
  double hi = 1.0;
};

// Everything a command needs, resolved from defaults, the JSON config file
// and command-line overrides.
struct RunConfig {
  simmetrics::MetricKind metric = simmetrics::MetricKind::kCosineDistance;
  std::optional<simmetrics::ScaleSpec> scale;  // defaults per metric when unset
  int buckets = 4;
  simmetrics::SoftNgramParams soft_ngrams;
  embedding::EmbedderConfig doc_embedder;
  model::FeatureSpec features;
  model::TrainConfig training;
  labeler::SplitFractions splits;
  AgreementConfig agreement;
  HistogramConfig histogram;
  std::uint64_t seed = 0;

  simmetrics::ScaleSpec resolved_scale() const;
  labeler::LabelSpec label_spec() const;
  // Sets every seed in the configuration.
  void set_seed(std::uint64_t s);
  void validate() const;
};

// Merges a JSON object over the defaults. Unknown keys and wrongly typed
// values throw InvalidInput naming the offending key; settings that are
// required in context (a remote embedder's endpoint_url) too.
RunConfig from_json(const nlohmann::json& j);
RunConfig load(const std::filesystem::path& path);

// Complete resolved configuration, suitable for provenance records and for
// reading back with from_json.
nlohmann::json to_json(const RunConfig& config);

}  // namespace editlens::config
