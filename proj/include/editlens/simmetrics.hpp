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
#include <span>
#include <string>
#include <string_view>

#include "editlens/embedding.hpp"

namespace editlens::simmetrics {

enum class MetricKind { kCosineDistance, kSoftNgrams };

std::string_view metric_name(MetricKind kind);  // "cosine" | "soft-ngrams"
// Accepts "cosine", "cosine_distance", "soft-ngrams" and "soft_ngrams".
MetricKind parse_metric(std::string_view name);

struct SoftNgramParams {
  std::size_t a = 3;  // min phrase words
  std::size_t b = 5;  // max phrase words
  double tau = 0.85;  // phrase match threshold, inclusive
  embedding::EmbedderConfig phrase_embedder = default_phrase_embedder();

  void validate() const;
  static embedding::EmbedderConfig default_phrase_embedder();
};

// Thresholds of the piecewise-linear target: 0 at or below tau_low, 1 at or
// above tau_high.
struct ScaleSpec {
  double tau_low = 0.03;
  double tau_high = 0.15;

  void validate() const;
};

struct BucketSpec {
  int n = 4;
  double tau_min = 0.03;
  double tau_max = 0.15;

  void validate() const;
  ScaleSpec as_scale() const { return {tau_min, tau_max}; }
  bool operator==(const BucketSpec&) const = default;
};

// Distance-orientation thresholds: cosine (0.03, 0.15); soft n-grams on
// 1 - precision (0.06, 0.72).
ScaleSpec default_scale(MetricKind kind);
BucketSpec default_buckets(MetricKind kind, int n = 4);

// 1 - cos(embed(source), embed(edited)), in [0, 2].
double cosine_distance_score(const std::string& source, const std::string& edited, embedding::Embedder& doc_embedder);
double cosine_distance_score(const std::string& source, const std::string& edited,
                             const embedding::EmbedderConfig& doc_embedder);

// Fraction of the edited text's a..b-word phrases whose best cosine
// similarity to any source phrase is >= tau. Throws InvalidInput when the
// edited text has no words.
double soft_ngrams_precision(const std::string& source, const std::string& edited, const SoftNgramParams& params,
                             embedding::Embedder& phrase_embedder);
double soft_ngrams_precision(const std::string& source, const std::string& edited, const SoftNgramParams& params);

// 0 means no detectable change. Cosine distance passes through; soft n-grams
// precision p maps to 1 - p.
double edit_magnitude(double raw, MetricKind kind);

double scale_target(double s, const ScaleSpec& spec);

// min(n - 1, floor((s - tau_min) / (tau_max - tau_min) * n)), clamped below at 0.
int bucket_of(double s, const BucketSpec& spec);

// tau_min + (j + 0.5) * (tau_max - tau_min) / n
double bucket_midpoint(int j, const BucketSpec& spec);

// sum_j probs[j] * m_j after renormalizing probs.
double decode_weighted(std::span<const double> probs, const BucketSpec& spec);

// Index of the largest entry; ties go to the lower index.
std::size_t decode_argmax(std::span<const double> probs);

// scale_target(s_raw, (tau_min, tau_max)).
double normalize_score(double s_raw, const BucketSpec& spec);

}  // namespace editlens::simmetrics
