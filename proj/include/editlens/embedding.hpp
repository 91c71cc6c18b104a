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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "editlens/resources.hpp"

namespace editlens::embedding {

struct EmbeddingVector {
  std::vector<double> components;

  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> values) : components(std::move(values)) {}

  std::size_t dim() const { return components.size(); }
  double norm() const;
  // Throws InvalidInput on a zero vector.
  EmbeddingVector normalized() const;
  // dim >= 1 and every component finite.
  bool valid() const;

  bool operator==(const EmbeddingVector&) const = default;
};

// cos(u, v) clamped to [-1, 1]. Symmetric bit-for-bit, and exactly 1.0 when
// u and v are the same vector. Throws InvalidInput on dimension mismatch or a
// zero vector.
double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v);

enum class ProviderKind { kDeterministicTest, kRemote };

struct EmbedderConfig {
  ProviderKind provider_kind = ProviderKind::kDeterministicTest;
  std::string model_id = "editlens-hash-embedder";
  std::size_t dim = 256;
  std::string endpoint_url;  // remote only
  std::size_t batch_size = 64;
  std::optional<std::filesystem::path> cache_path;
  std::uint64_t seed = 0;  // test provider only

  // Test provider: share one vector per synonym group.
  bool synonyms = true;
  // Test provider: weight of the adjacent-word-pair component that makes
  // embeddings sensitive to word order. 0 gives a pure bag of words.
  double order_weight = 0.5;
  // Test provider: weight of the (position, word) component. Positive values
  // make short phrases with different word sequences embed differently.
  double position_weight = 0.0;

  // Remote provider transport knobs (not part of the JSON config).
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{250};
  std::chrono::seconds timeout{30};

  void validate() const;
  // Key under which cached vectors are filed; includes every setting that
  // changes the vectors a provider returns.
  std::string cache_model_key() const;
};

// Append-only on-disk record log keyed by (model key, sha256 of text).
// Concurrent readers, serialized writers.
class EmbeddingCache {
 public:
  // In-memory only when path is empty; otherwise loads the existing log.
  explicit EmbeddingCache(std::optional<std::filesystem::path> path = std::nullopt);

  // Throws CacheCorrupt if the stored record for the key failed validation.
  std::optional<EmbeddingVector> get(const std::string& model_id, const std::string& content_digest) const;
  // Throws CacheConflict if a different vector is already stored for the
  // key. Re-putting identical bits is a no-op; a corrupt record is replaced.
  void put(const std::string& model_id, const std::string& content_digest, const EmbeddingVector& vector);

  std::size_t size() const;

  // One log line, exposed for tests of the record format.
  static std::string format_record(const std::string& model_id, const std::string& content_digest,
                                   const EmbeddingVector& vector);

 private:
  struct Entry {
    std::optional<EmbeddingVector> vector;  // nullopt marks a corrupt record
  };
  void load();
  static std::string key(const std::string& model_id, const std::string& digest) {
    return model_id + '\x1f' + digest;
  }

  std::optional<std::filesystem::path> path_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, Entry> entries_;
};

std::string content_digest(std::string_view text);

class Embedder {
 public:
  explicit Embedder(EmbedderConfig config);
  virtual ~Embedder() = default;

  Embedder(const Embedder&) = delete;
  Embedder& operator=(const Embedder&) = delete;

  // One vector per text, in input order. Validates inputs (InvalidInput) and
  // the returned dimensions (ProviderContractViolation).
  std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts);
  EmbeddingVector embed(const std::string& text);

  const EmbedderConfig& config() const { return config_; }

 protected:
  virtual std::vector<EmbeddingVector> compute(std::span<const std::string> texts) = 0;

 private:
  EmbedderConfig config_;
};

// Hash-seeded word vectors averaged over the text; see EmbedderConfig for
// the synonym and word-order options.
class DeterministicEmbedder final : public Embedder {
 public:
  explicit DeterministicEmbedder(EmbedderConfig config,
                                 const SynonymTable& synonyms = SynonymTable::builtin());

  // Unit vector for a single lowercase token.
  std::vector<double> word_vector(std::string_view word) const;

 protected:
  std::vector<EmbeddingVector> compute(std::span<const std::string> texts) override;

 private:
  EmbeddingVector embed_one(const std::string& text) const;
  const std::vector<double>& memo(const std::string& key) const;
  std::vector<double> random_unit(std::string_view domain, std::string_view key) const;

  const SynonymTable& synonyms_;
  mutable std::shared_mutex memo_mutex_;
  mutable std::unordered_map<std::string, std::vector<double>> memo_;
};

// POST {"model", "input"} to an embeddings endpoint; responses are reordered
// by "index". Retries transport failures and 429/5xx with exponential backoff.
class RemoteEmbedder final : public Embedder {
 public:
  explicit RemoteEmbedder(EmbedderConfig config);

 protected:
  std::vector<EmbeddingVector> compute(std::span<const std::string> texts) override;

 private:
  std::vector<EmbeddingVector> request(std::span<const std::string> texts);
};

// Serves hits from an EmbeddingCache and forwards misses to the inner
// provider. Corrupt records are recomputed and replaced.
class CachingEmbedder final : public Embedder {
 public:
  CachingEmbedder(std::unique_ptr<Embedder> inner, std::shared_ptr<EmbeddingCache> cache);

  const EmbeddingCache& cache() const { return *cache_; }

 protected:
  std::vector<EmbeddingVector> compute(std::span<const std::string> texts) override;

 private:
  std::unique_ptr<Embedder> inner_;
  std::shared_ptr<EmbeddingCache> cache_;
};

std::unique_ptr<Embedder> make_embedder(const EmbedderConfig& config);

std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts, const EmbedderConfig& config);

}  // namespace editlens::embedding
