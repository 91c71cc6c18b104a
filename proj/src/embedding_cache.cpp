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

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>

#include "editlens/embedding.hpp"
#include "editlens/error.hpp"
#include "editlens/hashing.hpp"

// Record layout, one per line, tab-separated:
//   content_digest  model_id  dim  base64(little-endian IEEE-754 binary64 components)

namespace editlens::embedding {

namespace {

bool is_hex_digest(std::string_view s) {
  if (s.size() != 64) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

std::vector<std::uint8_t> to_bytes(const EmbeddingVector& v) {
  std::vector<std::uint8_t> bytes(8 * v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(v.components[i]);
    for (int b = 0; b < 8; ++b) bytes[8 * i + b] = static_cast<std::uint8_t>(bits >> (8 * b));
  }
  return bytes;
}

std::optional<EmbeddingVector> from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t dim) {
  if (bytes.size() != 8 * dim || dim == 0) return std::nullopt;
  EmbeddingVector v{std::vector<double>(dim)};
  for (std::size_t i = 0; i < dim; ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[8 * i + b]) << (8 * b);
    v.components[i] = std::bit_cast<double>(bits);
  }
  if (!v.valid()) return std::nullopt;
  return v;
}

bool bit_equal(const EmbeddingVector& a, const EmbeddingVector& b) {
  return a.dim() == b.dim() &&
         std::memcmp(a.components.data(), b.components.data(), a.dim() * sizeof(double)) == 0;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = line.find('\t', pos);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  return fields;
}

}  // namespace

EmbeddingCache::EmbeddingCache(std::optional<std::filesystem::path> path) : path_(std::move(path)) {
  if (path_ && std::filesystem::exists(*path_)) load();
}

void EmbeddingCache::load() {
  std::ifstream in(*path_, std::ios::binary);
  if (!in) fail(ErrorKind::kCacheCorrupt, "cannot read cache file " + path_->string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() < 2 || !is_hex_digest(fields[0]) || fields[1].empty()) continue;  // unattributable
    const std::string k = key(std::string(fields[1]), std::string(fields[0]));

    std::optional<EmbeddingVector> parsed;
    if (fields.size() == 4) {
      std::size_t dim = 0;
      bool dim_ok = !fields[2].empty() && fields[2].size() < 10;
      for (char c : fields[2]) {
        dim_ok = dim_ok && c >= '0' && c <= '9';
        if (dim_ok) dim = dim * 10 + static_cast<std::size_t>(c - '0');
      }
      std::vector<std::uint8_t> bytes;
      if (dim_ok && base64_decode(fields[3], bytes)) parsed = from_bytes(bytes, dim);
    }

    auto it = entries_.find(k);
    if (it == entries_.end()) {
      entries_.emplace(k, Entry{std::move(parsed)});
    } else if (parsed) {
      // A valid record supersedes a corrupt one; two valid records that
      // disagree poison the key.
      if (!it->second.vector || bit_equal(*it->second.vector, *parsed)) {
        it->second.vector = std::move(parsed);
      } else {
        it->second.vector.reset();
      }
    }
  }
}

std::optional<EmbeddingVector> EmbeddingCache::get(const std::string& model_id,
                                                   const std::string& content_digest) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key(model_id, content_digest));
  if (it == entries_.end()) return std::nullopt;
  if (!it->second.vector) {
    fail(ErrorKind::kCacheCorrupt, "corrupt cache record for " + model_id + " / " + content_digest);
  }
  return it->second.vector;
}

std::string EmbeddingCache::format_record(const std::string& model_id, const std::string& content_digest,
                                          const EmbeddingVector& vector) {
  return content_digest + '\t' + model_id + '\t' + std::to_string(vector.dim()) + '\t' +
         base64_encode(to_bytes(vector)) + '\n';
}

void EmbeddingCache::put(const std::string& model_id, const std::string& content_digest,
                         const EmbeddingVector& vector) {
  require(is_hex_digest(content_digest), "content digest must be 64 lowercase hex characters");
  require(!model_id.empty() && model_id.find_first_of("\t\n\r") == std::string::npos,
          "model id must be non-empty and free of tabs and newlines");
  require(vector.valid(), "cannot cache an empty or non-finite vector");

  std::unique_lock lock(mutex_);
  const std::string k = key(model_id, content_digest);
  auto it = entries_.find(k);
  if (it != entries_.end() && it->second.vector) {
    if (bit_equal(*it->second.vector, vector)) return;
    fail(ErrorKind::kCacheConflict, "a different vector is already cached for " + model_id + " / " + content_digest);
  }
  if (path_) {
    std::ofstream out(*path_, std::ios::binary | std::ios::app);
    if (!out) fail(ErrorKind::kCacheCorrupt, "cannot append to cache file " + path_->string());
    out << format_record(model_id, content_digest, vector);
    out.flush();
    if (!out) fail(ErrorKind::kCacheCorrupt, "write to cache file failed: " + path_->string());
  }
  entries_[k] = Entry{vector};
}

std::size_t EmbeddingCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace editlens::embedding
