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

#include "editlens/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <mutex>

#include "editlens/error.hpp"
#include "editlens/hashing.hpp"
#include "editlens/kernels.hpp"
#include "editlens/segmentation.hpp"

namespace editlens::embedding {

double EmbeddingVector::norm() const {
  double s = 0.0;
  for (double x : components) s += x * x;
  return std::sqrt(s);
}

EmbeddingVector EmbeddingVector::normalized() const {
  const double n = norm();
  require(n > 0.0, "cannot normalize a zero vector");
  EmbeddingVector out = *this;
  for (double& x : out.components) x /= n;
  return out;
}

bool EmbeddingVector::valid() const {
  return !components.empty() && std::all_of(components.begin(), components.end(),
                                             [](double x) { return std::isfinite(x); });
}

double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v) {
  require(u.dim() == v.dim(), "cosine_similarity: dimension mismatch (" + std::to_string(u.dim()) + " vs " +
                                  std::to_string(v.dim()) + ")");
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    dot += u.components[i] * v.components[i];
    uu += u.components[i] * u.components[i];
    vv += v.components[i] * v.components[i];
  }
  require(uu > 0.0 && vv > 0.0, "cosine_similarity: zero vector");
  // sqrt(uu * uu) == uu exactly in IEEE arithmetic, so cos(u, u) == 1.
  const double c = dot / std::sqrt(uu * vv);
  return std::clamp(c, -1.0, 1.0);
}

void EmbedderConfig::validate() const {
  require(dim >= 1, "embedder dim must be positive");
  require(batch_size >= 1, "embedder batch_size must be positive");
  require(!model_id.empty(), "embedder model_id must be non-empty");
  require(std::isfinite(order_weight) && order_weight >= 0.0, "embedder order_weight must be >= 0");
  require(std::isfinite(position_weight) && position_weight >= 0.0, "embedder position_weight must be >= 0");
  if (provider_kind == ProviderKind::kRemote) {
    require(!endpoint_url.empty(), "missing config key: endpoint_url (required for the remote provider)");
  }
}

std::string EmbedderConfig::cache_model_key() const {
  if (provider_kind == ProviderKind::kRemote) return model_id;
  std::string key = model_id + "#test;dim=" + std::to_string(dim) + ";seed=" + std::to_string(seed) +
                    ";syn=" + (synonyms ? "1" : "0");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", order_weight);
  key += std::string(";order=") + buf;
  if (position_weight > 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", position_weight);
    key += std::string(";position=") + buf;
  }
  return key;
}

std::string content_digest(std::string_view text) { return sha256_hex(text); }

Embedder::Embedder(EmbedderConfig config) : config_(std::move(config)) { config_.validate(); }

std::vector<EmbeddingVector> Embedder::embed_batch(std::span<const std::string> texts) {
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto& t = texts[i];
    bool blank = std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); });
    require(!blank, "text " + std::to_string(i) + " is empty after trimming");
  }
  if (texts.empty()) return {};
  std::vector<EmbeddingVector> out = compute(texts);
  if (out.size() != texts.size()) {
    fail(ErrorKind::kProviderContractViolation, "provider returned " + std::to_string(out.size()) +
                                                    " vectors for " + std::to_string(texts.size()) + " texts");
  }
  for (const auto& v : out) {
    if (v.dim() != config_.dim) {
      fail(ErrorKind::kProviderContractViolation,
           "expected dim " + std::to_string(config_.dim) + ", provider returned " + std::to_string(v.dim()));
    }
    if (!v.valid()) fail(ErrorKind::kProviderContractViolation, "provider returned non-finite components");
  }
  return out;
}

EmbeddingVector Embedder::embed(const std::string& text) {
  return std::move(embed_batch(std::span<const std::string>(&text, 1)).front());
}

DeterministicEmbedder::DeterministicEmbedder(EmbedderConfig config, const SynonymTable& synonyms)
    : Embedder(std::move(config)), synonyms_(synonyms) {}

std::vector<double> DeterministicEmbedder::random_unit(std::string_view domain, std::string_view key) const {
  const std::uint64_t h = hash64(config().seed, {config().model_id, domain, key});
  std::vector<double> v(config().dim);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::uint64_t x = mix64(h + 0x9e3779b97f4a7c15ULL * (i + 1));
    v[i] = static_cast<double>(x >> 11) * 0x1.0p-52 - 1.0;
    s += v[i] * v[i];
  }
  if (s == 0.0) {
    v[0] = 1.0;
    s = 1.0;
  }
  const double n = std::sqrt(s);
  for (double& x : v) x /= n;
  return v;
}

const std::vector<double>& DeterministicEmbedder::memo(const std::string& key) const {
  {
    std::shared_lock lock(memo_mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  auto sep = key.find('\x1f');
  std::vector<double> v = random_unit(std::string_view(key).substr(0, sep), std::string_view(key).substr(sep + 1));
  std::unique_lock lock(memo_mutex_);
  return memo_.try_emplace(key, std::move(v)).first->second;
}

std::vector<double> DeterministicEmbedder::word_vector(std::string_view word) const {
  std::string_view canon = config().synonyms ? synonyms_.canonical(word) : word;
  return memo("w\x1f" + std::string(canon));
}

EmbeddingVector DeterministicEmbedder::embed_one(const std::string& text) const {
  std::vector<std::string> tokens = segmentation::tokenize_words(text);
  if (tokens.empty()) tokens.push_back(text);  // punctuation-only text
  std::vector<std::string> canon;
  canon.reserve(tokens.size());
  for (const auto& t : tokens) canon.emplace_back(config().synonyms ? synonyms_.canonical(t) : t);

  std::vector<double> acc(config().dim, 0.0);
  const double word_scale = 1.0 / static_cast<double>(canon.size());
  for (const auto& c : canon) {
    const auto& v = memo("w\x1f" + c);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += word_scale * v[i];
  }
  if (canon.size() >= 2 && config().order_weight > 0.0) {
    const double pair_scale = config().order_weight / static_cast<double>(canon.size() - 1);
    for (std::size_t k = 0; k + 1 < canon.size(); ++k) {
      const auto& v = memo("b\x1f" + canon[k] + '\x1f' + canon[k + 1]);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += pair_scale * v[i];
    }
  }
  if (config().position_weight > 0.0) {
    const double position_scale = config().position_weight / static_cast<double>(canon.size());
    for (std::size_t k = 0; k < canon.size(); ++k) {
      const auto& v = memo("p\x1f" + std::to_string(k) + '\x1f' + canon[k]);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += position_scale * v[i];
    }
  }
  EmbeddingVector out(std::move(acc));
  if (out.norm() == 0.0) return EmbeddingVector(memo("w\x1f" + canon.front()));
  return out.normalized();
}

std::vector<EmbeddingVector> DeterministicEmbedder::compute(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out(texts.size());
  kernels::parallel_for(texts.size(), [&](std::size_t i) { out[i] = embed_one(texts[i]); });
  return out;
}

CachingEmbedder::CachingEmbedder(std::unique_ptr<Embedder> inner, std::shared_ptr<EmbeddingCache> cache)
    : Embedder(inner->config()), inner_(std::move(inner)), cache_(std::move(cache)) {}

std::vector<EmbeddingVector> CachingEmbedder::compute(std::span<const std::string> texts) {
  const std::string model = config().cache_model_key();
  std::vector<EmbeddingVector> out(texts.size());
  std::vector<std::string> digests(texts.size());
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    digests[i] = content_digest(texts[i]);
    std::optional<EmbeddingVector> hit;
    try {
      hit = cache_->get(model, digests[i]);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kCacheCorrupt) throw;
    }
    if (hit && hit->dim() == config().dim) {
      out[i] = std::move(*hit);
    } else {
      missing.push_back(i);
    }
  }
  if (missing.empty()) return out;

  std::vector<std::string> todo;
  todo.reserve(missing.size());
  for (std::size_t i : missing) todo.push_back(texts[i]);
  std::vector<EmbeddingVector> fresh = inner_->embed_batch(todo);
  for (std::size_t k = 0; k < missing.size(); ++k) {
    cache_->put(model, digests[missing[k]], fresh[k]);
    out[missing[k]] = std::move(fresh[k]);
  }
  return out;
}

std::unique_ptr<Embedder> make_embedder(const EmbedderConfig& config) {
  config.validate();
  std::unique_ptr<Embedder> base;
  if (config.provider_kind == ProviderKind::kRemote) {
    base = std::make_unique<RemoteEmbedder>(config);
  } else {
    base = std::make_unique<DeterministicEmbedder>(config);
  }
  if (!config.cache_path) return base;
  return std::make_unique<CachingEmbedder>(std::move(base), std::make_shared<EmbeddingCache>(config.cache_path));
}

std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts, const EmbedderConfig& config) {
  return make_embedder(config)->embed_batch(texts);
}

}  // namespace editlens::embedding
