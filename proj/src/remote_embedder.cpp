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

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>
#include <thread>

#include "editlens/embedding.hpp"
#include "editlens/error.hpp"

namespace editlens::embedding {

namespace {

struct Endpoint {
  std::string scheme_host_port;
  std::string path;
};

Endpoint split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  require(scheme_end != std::string::npos, "endpoint_url must include a scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

bool retryable_status(int status) { return status == 429 || status >= 500; }

}  // namespace

RemoteEmbedder::RemoteEmbedder(EmbedderConfig config) : Embedder(std::move(config)) {
  split_url(this->config().endpoint_url);
}

std::vector<EmbeddingVector> RemoteEmbedder::compute(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  const std::size_t step = config().batch_size;
  for (std::size_t begin = 0; begin < texts.size(); begin += step) {
    auto chunk = texts.subspan(begin, std::min(step, texts.size() - begin));
    auto vectors = request(chunk);
    for (auto& v : vectors) out.push_back(std::move(v));
  }
  return out;
}

std::vector<EmbeddingVector> RemoteEmbedder::request(std::span<const std::string> texts) {
  const Endpoint endpoint = split_url(config().endpoint_url);
  nlohmann::json body = {{"model", config().model_id},
                         {"input", std::vector<std::string>(texts.begin(), texts.end())}};
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (const char* key = std::getenv("EDITLENS_EMBED_API_KEY"); key != nullptr && *key != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  std::string last_error;
  auto backoff = config().initial_backoff;
  for (int attempt = 0; attempt <= config().max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(endpoint.scheme_host_port);
    client.set_connection_timeout(config().timeout);
    client.set_read_timeout(config().timeout);
    client.set_write_timeout(config().timeout);
    auto res = client.Post(endpoint.path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      if (retryable_status(res->status)) continue;
      fail(ErrorKind::kProviderUnavailable, "embedding endpoint returned " + last_error);
    }

    nlohmann::json doc = nlohmann::json::parse(res->body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("data") || !doc["data"].is_array()) {
      fail(ErrorKind::kProviderContractViolation, "response is not an embeddings object with a data array");
    }
    const auto& data = doc["data"];
    if (data.size() != texts.size()) {
      fail(ErrorKind::kProviderContractViolation, "response has " + std::to_string(data.size()) +
                                                      " embeddings for " + std::to_string(texts.size()) + " inputs");
    }
    std::vector<std::optional<EmbeddingVector>> slots(texts.size());
    for (const auto& item : data) {
      if (!item.is_object() || !item.contains("index") || !item["index"].is_number_unsigned() ||
          !item.contains("embedding") || !item["embedding"].is_array()) {
        fail(ErrorKind::kProviderContractViolation, "malformed embedding item");
      }
      const auto index = item["index"].get<std::size_t>();
      if (index >= slots.size() || slots[index]) {
        fail(ErrorKind::kProviderContractViolation, "invalid or duplicate index " + std::to_string(index));
      }
      std::vector<double> values;
      values.reserve(item["embedding"].size());
      for (const auto& x : item["embedding"]) {
        if (!x.is_number()) fail(ErrorKind::kProviderContractViolation, "non-numeric embedding component");
        values.push_back(x.get<double>());
      }
      slots[index] = EmbeddingVector(std::move(values));
    }
    std::vector<EmbeddingVector> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
  }
  fail(ErrorKind::kProviderUnavailable, "embedding endpoint unreachable after " +
                                            std::to_string(config().max_retries) + " retries: " + last_error);
}

}  // namespace editlens::embedding
