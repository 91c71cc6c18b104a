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

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include "editlens/error.hpp"
#include "editlens/hashing.hpp"
#include "editlens/random.hpp"
#include "test_util.hpp"

namespace editlens::embedding {
namespace {

using ::editlens::testing::slurp;
using ::editlens::testing::spit;
using ::editlens::testing::TempDir;

EmbedderConfig test_config(std::size_t dim = 8, std::uint64_t seed = 7) {
  EmbedderConfig c;
  c.dim = dim;
  c.seed = seed;
  return c;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an editlens::Error";
  return ErrorKind::kInvalidInput;
}

TEST(CosineSimilarityTest, HandComputedValues) {
  EmbeddingVector u({1.0, 1.0});
  EmbeddingVector v({1.0, 0.0});
  EmbeddingVector w({0.0, 1.0});
  EXPECT_EQ(cosine_similarity(u, u), 1.0);
  EXPECT_EQ(cosine_similarity(v, w), 0.0);
  EXPECT_NEAR(cosine_similarity(u, v), 0.7071067811865475, 1e-12);
}

TEST(CosineSimilarityTest, RejectsMismatchAndZero) {
  EmbeddingVector a({1.0, 0.0});
  EmbeddingVector b({1.0, 0.0, 0.0});
  EmbeddingVector z({0.0, 0.0});
  EXPECT_EQ(kind_of([&] { cosine_similarity(a, b); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(kind_of([&] { cosine_similarity(a, z); }), ErrorKind::kInvalidInput);
}

TEST(CosineSimilarityTest, SymmetricAndScaleInvariantOnRandomVectors) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 1 + rng.below(40);
    std::vector<double> x(dim), y(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] = rng.uniform() * 2.0 - 1.0;
      y[i] = rng.uniform() * 2.0 - 1.0;
    }
    EmbeddingVector u(x), v(y);
    EXPECT_EQ(cosine_similarity(u, v), cosine_similarity(v, u));
    const double c = 0.01 + rng.uniform() * 100.0;
    std::vector<double> scaled(x);
    for (double& s : scaled) s *= c;
    EXPECT_NEAR(cosine_similarity(u, EmbeddingVector(scaled)), 1.0, 1e-12);
    EXPECT_LE(std::abs(cosine_similarity(u, v)), 1.0);
  }
}

TEST(DeterministicEmbedderTest, RepeatedCallsAreBitIdentical) {
  auto embedder = make_embedder(test_config());
  const std::vector<std::string> texts = {"abc", "abc"};
  auto first = embedder->embed_batch(texts);
  ASSERT_EQ(first.size(), 2u);
  EXPECT_EQ(first[0].dim(), 8u);
  EXPECT_NEAR(first[0].norm(), 1.0, 1e-12);
  EXPECT_EQ(first[0], first[1]);
  EXPECT_EQ(embedder->embed("abc"), first[0]);
  EXPECT_EQ(make_embedder(test_config())->embed("abc"), first[0]);
}

TEST(DeterministicEmbedderTest, EmptyTextIsRejected) {
  auto embedder = make_embedder(test_config());
  const std::vector<std::string> texts = {""};
  EXPECT_EQ(kind_of([&] { embedder->embed_batch(texts); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(kind_of([&] { embedder->embed("   "); }), ErrorKind::kInvalidInput);
}

TEST(DeterministicEmbedderTest, EachIdentityComponentChangesTheVector) {
  const std::string text = "the committee approved the budget";
  const auto base = make_embedder(test_config(64, 1))->embed(text);
  EXPECT_NE(make_embedder(test_config(64, 2))->embed(text), base);
  auto renamed = test_config(64, 1);
  renamed.model_id = "other-model";
  EXPECT_NE(make_embedder(renamed)->embed(text), base);
  EXPECT_NE(make_embedder(test_config(64, 1))->embed(text + " today"), base);
}

TEST(DeterministicEmbedderTest, CaseAndEdgePunctuationDoNotMatter) {
  auto embedder = make_embedder(test_config(32));
  EXPECT_EQ(embedder->embed("The cat sat."), embedder->embed("the cat sat"));
}

TEST(DeterministicEmbedderTest, SynonymsShareVectors) {
  const auto& table = SynonymTable::builtin();
  ASSERT_FALSE(table.empty());
  const auto& group = table.groups().front();
  ASSERT_GE(group.size(), 2u);
  DeterministicEmbedder with(test_config(32));
  EXPECT_EQ(with.word_vector(group[0]), with.word_vector(group[1]));
  auto plain = test_config(32);
  plain.synonyms = false;
  DeterministicEmbedder without(plain);
  EXPECT_NE(without.word_vector(group[0]), without.word_vector(group[1]));
}

TEST(DeterministicEmbedderTest, WordOrderMattersOnlyWithOrderWeight) {
  auto ordered = make_embedder(test_config(64));
  EXPECT_NE(ordered->embed("dog bites man"), ordered->embed("man bites dog"));
  auto bag_config = test_config(64);
  bag_config.order_weight = 0.0;
  auto bag = make_embedder(bag_config);
  EXPECT_NEAR(cosine_similarity(bag->embed("dog bites man"), bag->embed("man bites dog")), 1.0, 1e-12);
}

TEST(DeterministicEmbedderTest, ConcurrentCallersSeeTheSameVectors) {
  auto embedder = make_embedder(test_config(16));
  std::vector<std::string> texts;
  for (int i = 0; i < 200; ++i) texts.push_back("word" + std::to_string(i % 37) + " other" + std::to_string(i));
  const auto expected = make_embedder(test_config(16))->embed_batch(texts);
  std::vector<std::thread> threads;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      if (embedder->embed_batch(texts) != expected) ++mismatches;
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(mismatches.load(), 0);
}

TEST(EmbeddingCacheTest, RoundTripAndAbsentKey) {
  EmbeddingCache cache;
  const std::string digest = content_digest("hello");
  EmbeddingVector v({0.25, -0.5, 1.0});
  EXPECT_FALSE(cache.get("m", digest).has_value());
  cache.put("m", digest, v);
  EXPECT_EQ(cache.get("m", digest), v);
  EXPECT_FALSE(cache.get("other", digest).has_value());
}

TEST(EmbeddingCacheTest, ConflictingPutIsRejected) {
  EmbeddingCache cache;
  const std::string digest = content_digest("hello");
  cache.put("m", digest, EmbeddingVector({1.0, 0.0}));
  cache.put("m", digest, EmbeddingVector({1.0, 0.0}));
  EXPECT_EQ(kind_of([&] { cache.put("m", digest, EmbeddingVector({0.0, 1.0})); }), ErrorKind::kCacheConflict);
}

TEST(EmbeddingCacheTest, DiskRoundTripIsBitExactForRandomVectors) {
  TempDir dir;
  const auto path = dir / "cache.log";
  std::vector<EmbeddingVector> stored;
  {
    EmbeddingCache cache(path);
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
      std::vector<double> x(1 + rng.below(12));
      for (double& c : x) c = (rng.uniform() - 0.5) * std::ldexp(1.0, static_cast<int>(rng.below(40)) - 20);
      stored.emplace_back(x);
      cache.put("m", content_digest("text " + std::to_string(i)), stored.back());
    }
  }
  EmbeddingCache reloaded(path);
  ASSERT_EQ(reloaded.size(), 1000u);
  for (int i = 0; i < 1000; ++i) {
    auto got = reloaded.get("m", content_digest("text " + std::to_string(i)));
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(*got, stored[static_cast<std::size_t>(i)]);
  }
}

TEST(EmbeddingCacheTest, CorruptRecordRaisesCacheCorrupt) {
  TempDir dir;
  const auto path = dir / "cache.log";
  const std::string digest = content_digest("hello");
  spit(path, digest + "\tm\t3\tnot-base64!!\n");
  EmbeddingCache cache(path);
  EXPECT_EQ(kind_of([&] { cache.get("m", digest); }), ErrorKind::kCacheCorrupt);
  cache.put("m", digest, EmbeddingVector({1.0, 2.0, 3.0}));
  EXPECT_EQ(cache.get("m", digest), EmbeddingVector({1.0, 2.0, 3.0}));
}

TEST(EmbeddingCacheTest, RecordFormatFieldsAreTabSeparated) {
  const std::string digest = content_digest("x");
  const std::string line = EmbeddingCache::format_record("m", digest, EmbeddingVector({1.0}));
  EXPECT_EQ(line.rfind(digest + "\tm\t1\t", 0), 0u);
  EXPECT_EQ(line.back(), '\n');
  std::vector<std::uint8_t> bytes;
  ASSERT_TRUE(base64_decode(line.substr(line.rfind('\t') + 1, line.size() - line.rfind('\t') - 2), bytes));
  ASSERT_EQ(bytes.size(), 8u);
  EXPECT_EQ(bytes[7], 0x3f);  // 1.0 little-endian
  EXPECT_EQ(bytes[6], 0xf0);
}

TEST(CachingEmbedderTest, SecondRunIsServedFromDisk) {
  TempDir dir;
  auto config = test_config(16);
  config.cache_path = dir / "cache.log";
  const std::vector<std::string> texts = {"alpha beta", "gamma delta", "alpha beta"};
  const auto first = make_embedder(config)->embed_batch(texts);
  const std::string log_after_first = slurp(*config.cache_path);
  const auto second = make_embedder(config)->embed_batch(texts);
  EXPECT_EQ(first, second);
  EXPECT_EQ(slurp(*config.cache_path), log_after_first);
  EmbeddingCache reread(config.cache_path);
  EXPECT_EQ(reread.size(), 2u);
}

TEST(CachingEmbedderTest, CorruptRecordIsRecomputed) {
  TempDir dir;
  auto config = test_config(16);
  config.cache_path = dir / "cache.log";
  const auto expected = make_embedder(test_config(16))->embed("alpha beta");
  spit(*config.cache_path,
       content_digest("alpha beta") + "\t" + config.cache_model_key() + "\t16\tgarbage\n");
  EXPECT_EQ(make_embedder(config)->embed("alpha beta"), expected);
  EmbeddingCache reread(config.cache_path);
  EXPECT_EQ(reread.get(config.cache_model_key(), content_digest("alpha beta")), expected);
}

// Local embeddings endpoint that answers in reverse index order.
class FakeEndpoint {
 public:
  explicit FakeEndpoint(std::size_t dim) : dim_(dim) {
    server_.Post("/v1/embeddings", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests_;
      last_auth_ = req.get_header_value("Authorization");
      if (failures_before_success_ > 0) {
        --failures_before_success_;
        res.status = 503;
        return;
      }
      if (hard_status_ != 0) {
        res.status = hard_status_;
        return;
      }
      auto body = nlohmann::json::parse(req.body);
      const auto& input = body["input"];
      nlohmann::json data = nlohmann::json::array();
      for (std::size_t i = input.size(); i-- > 0;) {
        std::vector<double> v(dim_ + extra_dims_, 0.0);
        v[hash64(0, {input[i].get<std::string>()}) % dim_] = 1.0;
        data.push_back({{"index", i}, {"embedding", v}});
      }
      last_model_ = body["model"].get<std::string>();
      res.set_content(nlohmann::json{{"data", data}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/embeddings"; }

  std::size_t dim_;
  std::size_t extra_dims_ = 0;
  int failures_before_success_ = 0;
  int hard_status_ = 0;
  std::atomic<int> requests_{0};
  std::string last_auth_;
  std::string last_model_;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

EmbedderConfig remote_config(const FakeEndpoint& endpoint, std::size_t dim) {
  EmbedderConfig c;
  c.provider_kind = ProviderKind::kRemote;
  c.model_id = "remote-model";
  c.dim = dim;
  c.endpoint_url = endpoint.url();
  c.batch_size = 2;
  c.initial_backoff = std::chrono::milliseconds(1);
  c.timeout = std::chrono::seconds(5);
  return c;
}

TEST(RemoteEmbedderTest, ReordersByIndexAndSendsBearerToken) {
  FakeEndpoint endpoint(16);
  ::setenv("EDITLENS_EMBED_API_KEY", "secret-token", 1);
  auto embedder = make_embedder(remote_config(endpoint, 16));
  const std::vector<std::string> texts = {"one", "two", "three", "four", "five"};
  auto out = embedder->embed_batch(texts);
  ::unsetenv("EDITLENS_EMBED_API_KEY");
  ASSERT_EQ(out.size(), texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    EXPECT_EQ(out[i].components[hash64(0, {texts[i]}) % 16], 1.0) << texts[i];
  }
  EXPECT_EQ(endpoint.requests_.load(), 3);  // batches of 2, 2, 1
  EXPECT_EQ(endpoint.last_auth_, "Bearer secret-token");
  EXPECT_EQ(endpoint.last_model_, "remote-model");
}

TEST(RemoteEmbedderTest, RetriesServerErrors) {
  FakeEndpoint endpoint(4);
  endpoint.failures_before_success_ = 2;
  auto embedder = make_embedder(remote_config(endpoint, 4));
  EXPECT_EQ(embedder->embed("hello").dim(), 4u);
  EXPECT_EQ(endpoint.requests_.load(), 3);
}

TEST(RemoteEmbedderTest, GivesUpAfterRetries) {
  FakeEndpoint endpoint(4);
  endpoint.failures_before_success_ = 100;
  auto embedder = make_embedder(remote_config(endpoint, 4));
  EXPECT_EQ(kind_of([&] { embedder->embed("hello"); }), ErrorKind::kProviderUnavailable);
  EXPECT_EQ(endpoint.requests_.load(), 4);
}

TEST(RemoteEmbedderTest, ClientErrorIsNotRetried) {
  FakeEndpoint endpoint(4);
  endpoint.hard_status_ = 401;
  auto embedder = make_embedder(remote_config(endpoint, 4));
  EXPECT_EQ(kind_of([&] { embedder->embed("hello"); }), ErrorKind::kProviderUnavailable);
  EXPECT_EQ(endpoint.requests_.load(), 1);
}

TEST(RemoteEmbedderTest, WrongDimensionIsAContractViolation) {
  FakeEndpoint endpoint(4);
  endpoint.extra_dims_ = 1;
  auto embedder = make_embedder(remote_config(endpoint, 4));
  EXPECT_EQ(kind_of([&] { embedder->embed("hello"); }), ErrorKind::kProviderContractViolation);
}

TEST(RemoteEmbedderTest, UnreachableEndpoint) {
  EmbedderConfig c;
  c.provider_kind = ProviderKind::kRemote;
  c.dim = 4;
  c.endpoint_url = "http://127.0.0.1:1/v1/embeddings";
  c.max_retries = 1;
  c.initial_backoff = std::chrono::milliseconds(1);
  c.timeout = std::chrono::seconds(2);
  auto embedder = make_embedder(c);
  EXPECT_EQ(kind_of([&] { embedder->embed("hello"); }), ErrorKind::kProviderUnavailable);
}

TEST(RemoteEmbedderTest, MissingEndpointIsAConfigError) {
  EmbedderConfig c;
  c.provider_kind = ProviderKind::kRemote;
  EXPECT_EQ(kind_of([&] { make_embedder(c); }), ErrorKind::kInvalidInput);
}

}  // namespace
}  // namespace editlens::embedding
