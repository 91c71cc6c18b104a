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

#include "editlens/config.hpp"

#include <string>

#include <gtest/gtest.h>

#include "editlens/error.hpp"

namespace editlens::config {
namespace {

std::string error_text(const nlohmann::json& j) {
  try {
    from_json(j);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidInput);
    return e.what();
  }
  ADD_FAILURE() << "expected a config error for " << j.dump();
  return {};
}

TEST(ConfigTest, EmptyObjectGivesDefaults) {
  auto cfg = from_json(nlohmann::json::object());
  EXPECT_EQ(cfg.metric, simmetrics::MetricKind::kCosineDistance);
  EXPECT_EQ(cfg.buckets, 4);
  EXPECT_EQ(cfg.resolved_scale().tau_low, 0.03);
  EXPECT_EQ(cfg.training.epochs, 20u);
  EXPECT_EQ(cfg.agreement.bucket_variants, (std::vector<int>{4, 5, 6}));
}

TEST(ConfigTest, ScaleFollowsMetricUnlessSet) {
  auto soft = from_json({{"metric", "soft-ngrams"}});
  EXPECT_EQ(soft.resolved_scale().tau_high, 0.72);
  auto custom = from_json({{"metric", "soft-ngrams"}, {"scale", {{"tau_low", 0.1}, {"tau_high", 0.5}}}});
  EXPECT_EQ(custom.resolved_scale().tau_high, 0.5);
  EXPECT_EQ(custom.label_spec().bucket_spec().tau_min, 0.1);
}

TEST(ConfigTest, UnknownKeysAreNamed) {
  EXPECT_NE(error_text({{"metrc", "cosine"}}).find("metrc"), std::string::npos);
  EXPECT_NE(error_text({{"training", {{"learning_rate", 0.1}}}}).find("training.learning_rate"), std::string::npos);
}

TEST(ConfigTest, WrongTypesAreNamed) {
  EXPECT_NE(error_text({{"buckets", "four"}}).find("buckets"), std::string::npos);
  EXPECT_NE(error_text({{"soft_ngrams", {{"tau", "high"}}}}).find("soft_ngrams.tau"), std::string::npos);
}

TEST(ConfigTest, RemoteEmbedderNeedsEndpoint) {
  const auto text = error_text({{"doc_embedder", {{"provider", "remote"}}}});
  EXPECT_NE(text.find("doc_embedder.endpoint_url"), std::string::npos);
  auto ok = from_json({{"doc_embedder", {{"provider", "remote"}, {"endpoint_url", "http://localhost:9/x"}}}});
  EXPECT_EQ(ok.doc_embedder.provider_kind, embedding::ProviderKind::kRemote);
}

TEST(ConfigTest, InvalidValuesAreRejected) {
  EXPECT_THROW(from_json({{"buckets", 1}}), Error);
  EXPECT_THROW(from_json({{"splits", {{"train", 0.9}, {"val", 0.2}, {"test", 0.1}}}}), Error);
  EXPECT_THROW(from_json({{"features", {{"dim", 1000}}}}), Error);
}

TEST(ConfigTest, ResolvedConfigRoundTrips) {
  auto cfg = from_json({{"metric", "soft-ngrams"},
                        {"buckets", 5},
                        {"soft_ngrams", {{"a", 2}, {"b", 4}, {"tau", 0.9}}},
                        {"features", {{"families", {"word_unigram", "char_4gram"}}}},
                        {"training", {{"epochs", 3}, {"head", "regression"}}},
                        {"seed", 17}});
  auto again = from_json(to_json(cfg));
  EXPECT_EQ(to_json(again), to_json(cfg));
  EXPECT_EQ(again.features.families,
            static_cast<std::uint32_t>(model::Family::kWordUnigram) | static_cast<std::uint32_t>(model::Family::kChar4));
  EXPECT_EQ(again.training.head, model::HeadKind::kRegression);
}

TEST(ConfigTest, SetSeedReachesEverySeed) {
  RunConfig cfg;
  cfg.set_seed(99);
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(cfg.training.seed, 99u);
  EXPECT_EQ(cfg.features.hash_seed, 99u);
  EXPECT_EQ(cfg.doc_embedder.seed, 99u);
  EXPECT_EQ(cfg.soft_ngrams.phrase_embedder.seed, 99u);
}

}  // namespace
}  // namespace editlens::config
