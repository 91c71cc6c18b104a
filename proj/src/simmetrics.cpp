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

#include "editlens/simmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "editlens/error.hpp"
#include "editlens/kernels.hpp"
#include "editlens/segmentation.hpp"

namespace editlens::simmetrics {

std::string_view metric_name(MetricKind kind) {
  return kind == MetricKind::kCosineDistance ? "cosine" : "soft-ngrams";
}

MetricKind parse_metric(std::string_view name) {
  if (name == "cosine" || name == "cosine_distance") return MetricKind::kCosineDistance;
  if (name == "soft-ngrams" || name == "soft_ngrams") return MetricKind::kSoftNgrams;
  fail(ErrorKind::kInvalidInput, "unknown metric '" + std::string(name) + "' (expected cosine or soft-ngrams)");
}

embedding::EmbedderConfig SoftNgramParams::default_phrase_embedder() {
  embedding::EmbedderConfig config;
  config.dim = 128;
  config.position_weight = 1.0;
  return config;
}

void SoftNgramParams::validate() const {
  require(a >= 1 && a <= b, "soft n-grams requires 1 <= a <= b");
  require(tau > 0.0 && tau <= 1.0, "soft n-grams tau must lie in (0, 1]");
  phrase_embedder.validate();
}

void ScaleSpec::validate() const {
  require(std::isfinite(tau_low) && std::isfinite(tau_high) && tau_low >= 0.0 && tau_low < tau_high,
          "scale thresholds must satisfy 0 <= tau_low < tau_high");
}

void BucketSpec::validate() const {
  require(n >= 2, "bucket count must be at least 2");
  require(std::isfinite(tau_min) && std::isfinite(tau_max) && tau_min < tau_max,
          "bucket thresholds must satisfy tau_min < tau_max");
}

ScaleSpec default_scale(MetricKind kind) {
  return kind == MetricKind::kCosineDistance ? ScaleSpec{0.03, 0.15} : ScaleSpec{0.06, 0.72};
}

BucketSpec default_buckets(MetricKind kind, int n) {
  const ScaleSpec s = default_scale(kind);
  return {n, s.tau_low, s.tau_high};
}

double cosine_distance_score(const std::string& source, const std::string& edited, embedding::Embedder& doc_embedder) {
  const std::string texts[] = {source, edited};
  auto vectors = doc_embedder.embed_batch(texts);
  return 1.0 - embedding::cosine_similarity(vectors[0], vectors[1]);
}

double cosine_distance_score(const std::string& source, const std::string& edited,
                             const embedding::EmbedderConfig& doc_embedder) {
  auto embedder = embedding::make_embedder(doc_embedder);
  return cosine_distance_score(source, edited, *embedder);
}

double soft_ngrams_precision(const std::string& source, const std::string& edited, const SoftNgramParams& params,
                             embedding::Embedder& phrase_embedder) {
  params.validate();
  const auto edited_phrases = segmentation::enumerate_phrases(segmentation::tokenize_words(edited), params.a, params.b);
  require(!edited_phrases.empty(), "soft n-grams: edited text has no phrases");
  const auto source_phrases = segmentation::enumerate_phrases(segmentation::tokenize_words(source), params.a, params.b);
  if (source_phrases.empty()) return 0.0;

  // Identical surface forms embed identically, so exact repeats of a source
  // phrase match at any tau <= 1 without being compared.
  std::unordered_map<std::string, std::size_t> source_index;
  std::vector<std::string> source_texts;
  for (const auto& p : source_phrases) {
    if (source_index.emplace(p.text, source_texts.size()).second) source_texts.push_back(p.text);
  }
  std::size_t matched = 0;
  std::unordered_map<std::string, std::size_t> pending_index;
  std::vector<std::string> pending_texts;
  std::vector<std::size_t> pending_counts;
  for (const auto& p : edited_phrases) {
    if (source_index.count(p.text) != 0) {
      ++matched;
      continue;
    }
    auto [it, inserted] = pending_index.emplace(p.text, pending_texts.size());
    if (inserted) {
      pending_texts.push_back(p.text);
      pending_counts.push_back(0);
    }
    ++pending_counts[it->second];
  }

  if (!pending_texts.empty()) {
    auto source_vectors = phrase_embedder.embed_batch(source_texts);
    auto pending_vectors = phrase_embedder.embed_batch(pending_texts);
    const auto best = kernels::max_cosine(pending_vectors, source_vectors);
    for (std::size_t k = 0; k < best.size(); ++k) {
      if (best[k] >= params.tau) matched += pending_counts[k];
    }
  }
  return static_cast<double>(matched) / static_cast<double>(edited_phrases.size());
}

double soft_ngrams_precision(const std::string& source, const std::string& edited, const SoftNgramParams& params) {
  auto embedder = embedding::make_embedder(params.phrase_embedder);
  return soft_ngrams_precision(source, edited, params, *embedder);
}

double edit_magnitude(double raw, MetricKind kind) {
  return kind == MetricKind::kCosineDistance ? raw : 1.0 - raw;
}

double scale_target(double s, const ScaleSpec& spec) {
  spec.validate();
  require(!std::isnan(s), "scale_target: score is NaN");
  if (s <= spec.tau_low) return 0.0;
  if (s >= spec.tau_high) return 1.0;
  return (s - spec.tau_low) / (spec.tau_high - spec.tau_low);
}

int bucket_of(double s, const BucketSpec& spec) {
  spec.validate();
  require(!std::isnan(s), "bucket_of: score is NaN");
  const double x = std::floor((s - spec.tau_min) / (spec.tau_max - spec.tau_min) * spec.n);
  if (!(x > 0.0)) return 0;
  if (x >= spec.n - 1) return spec.n - 1;
  return static_cast<int>(x);
}

double bucket_midpoint(int j, const BucketSpec& spec) {
  spec.validate();
  require(j >= 0 && j < spec.n, "bucket index " + std::to_string(j) + " out of range");
  return spec.tau_min + (j + 0.5) * (spec.tau_max - spec.tau_min) / spec.n;
}

double decode_weighted(std::span<const double> probs, const BucketSpec& spec) {
  spec.validate();
  require(probs.size() == static_cast<std::size_t>(spec.n),
          "decode_weighted: expected " + std::to_string(spec.n) + " probabilities, got " + std::to_string(probs.size()));
  double total = 0.0;
  for (double p : probs) {
    require(std::isfinite(p) && p >= 0.0, "decode_weighted: probabilities must be finite and non-negative");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-6, "decode_weighted: probabilities must sum to 1");
  double s = 0.0;
  for (int j = 0; j < spec.n; ++j) s += probs[static_cast<std::size_t>(j)] * bucket_midpoint(j, spec);
  s /= total;
  return std::clamp(s, bucket_midpoint(0, spec), bucket_midpoint(spec.n - 1, spec));
}

std::size_t decode_argmax(std::span<const double> probs) {
  require(!probs.empty(), "decode_argmax: empty probability vector");
  std::size_t best = 0;
  for (std::size_t j = 1; j < probs.size(); ++j) {
    if (probs[j] > probs[best]) best = j;
  }
  return best;
}

double normalize_score(double s_raw, const BucketSpec& spec) { return scale_target(s_raw, spec.as_scale()); }

}  // namespace editlens::simmetrics
