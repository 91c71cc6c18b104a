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

#include "editlens/perturb.hpp"

#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "editlens/error.hpp"
#include "editlens/random.hpp"
#include "editlens/simmetrics.hpp"

namespace editlens::perturb {
namespace {

constexpr Profile kProfiles[] = {Profile::kProofread, Profile::kParaphrase, Profile::kRestructure, Profile::kRewrite};

std::set<std::size_t> touched_words(const EditTrace& trace) {
  std::set<std::size_t> out;
  for (const auto& op : trace.ops) {
    if (op.kind == MicroEdit::Kind::kDeleteWord || op.kind == MicroEdit::Kind::kSubstituteWord ||
        op.kind == MicroEdit::Kind::kInjectTypo) {
      out.insert(op.i);
    }
  }
  return out;
}

TEST(ProfileTest, NamesRoundTrip) {
  for (Profile p : kProfiles) EXPECT_EQ(parse_profile(profile_name(p)), p);
  EXPECT_THROW(parse_profile("translate"), Error);
}

TEST(ApplyEditTest, LambdaZeroIsIdentity) {
  const std::string t = synthesize_source(1).text;
  for (Profile p : kProfiles) {
    auto r = apply_edit(t, 0.0, 99, p);
    EXPECT_EQ(r.edited, t);
    EXPECT_TRUE(r.trace.ops.empty());
  }
}

TEST(ApplyEditTest, RejectsBadInput) {
  EXPECT_THROW(apply_edit("", 0.5, 1, Profile::kParaphrase), Error);
  EXPECT_THROW(apply_edit("   ", 0.5, 1, Profile::kParaphrase), Error);
  EXPECT_THROW(apply_edit("some text", 1.5, 1, Profile::kParaphrase), Error);
  EXPECT_THROW(apply_edit("some text", -0.1, 1, Profile::kParaphrase), Error);
}

TEST(ApplyEditTest, DeterministicInAllInputs) {
  const std::string t = synthesize_source(2).text;
  auto a = apply_edit(t, 0.6, 5, Profile::kRewrite);
  auto b = apply_edit(t, 0.6, 5, Profile::kRewrite);
  EXPECT_EQ(a.edited, b.edited);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_NE(apply_edit(t, 0.6, 6, Profile::kRewrite).edited, a.edited);
}

TEST(ApplyEditTest, ReplayReproducesEditedTextOnRandomDraws) {
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    const std::string t = synthesize_source(rng.next()).text;
    const double lambda = rng.uniform();
    const Profile p = kProfiles[rng.below(4)];
    auto r = apply_edit(t, lambda, rng.next(), p);
    EXPECT_EQ(replay(r.trace, t), r.edited);
    EXPECT_EQ(replay(trace_from_json(trace_to_json(r.trace)), t), r.edited);
  }
}

TEST(ApplyEditTest, ReplayRejectsOutOfRangeIndex) {
  EditTrace trace;
  trace.lambda = 0.5;
  trace.ops.push_back({MicroEdit::Kind::kDeleteWord, 50, 0, {}, 0});
  EXPECT_THROW(replay(trace, "only three words"), Error);
}

TEST(ApplyEditTest, TouchedWordsGrowWithLambda) {
  Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    const std::string t = synthesize_source(rng.next()).text;
    const std::uint64_t seed = rng.next();
    const Profile p = kProfiles[rng.below(4)];
    std::set<std::size_t> previous;
    for (double lambda : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
      auto touched = touched_words(apply_edit(t, lambda, seed, p).trace);
      for (std::size_t w : previous) EXPECT_TRUE(touched.count(w)) << "word " << w << " lambda " << lambda;
      previous = touched;
    }
  }
}

TEST(ApplyEditTest, MeanMagnitudeIncreasesWithLambda) {
  embedding::EmbedderConfig config;
  auto embedder = embedding::make_embedder(config);
  const std::string t = synthesize_source(7).text;
  double means[3] = {0, 0, 0};
  const double lambdas[3] = {0.2, 0.5, 0.9};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    for (int k = 0; k < 3; ++k) {
      means[k] += simmetrics::cosine_distance_score(t, apply_edit(t, lambdas[k], seed, Profile::kParaphrase).edited,
                                                    *embedder);
    }
  }
  EXPECT_LT(means[0], means[1]);
  EXPECT_LT(means[1], means[2]);
}

TEST(ApplyEditTest, RewriteIsAtLeastAsInvasiveAsProofread) {
  embedding::EmbedderConfig config;
  auto embedder = embedding::make_embedder(config);
  int heavier = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::string t = synthesize_source(1000 + i).text;
    const double proof = simmetrics::cosine_distance_score(t, apply_edit(t, 1.0, i, Profile::kProofread).edited, *embedder);
    const double rewrite = simmetrics::cosine_distance_score(t, apply_edit(t, 1.0, i, Profile::kRewrite).edited, *embedder);
    if (rewrite >= proof) ++heavier;
  }
  EXPECT_GE(heavier, 90);
}

TEST(ApplyEditTest, ProofreadOnlyInjectsTypos) {
  const std::string t = synthesize_source(3).text;
  auto r = apply_edit(t, 1.0, 3, Profile::kProofread);
  for (const auto& op : r.trace.ops) EXPECT_EQ(op.kind, MicroEdit::Kind::kInjectTypo);
}

TEST(ApplyEditSequenceTest, EdgeCases) {
  EXPECT_TRUE(apply_edit_sequence("a b c", 0, {}, {}, {}).empty());
  const std::string t = synthesize_source(4).text;
  const std::vector<double> zeros(5, 0.0);
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  const std::vector<Profile> profiles(5, Profile::kParaphrase);
  auto out = apply_edit_sequence(t, 5, zeros, seeds, profiles);
  ASSERT_EQ(out.size(), 5u);
  for (const auto& r : out) EXPECT_EQ(r.edited, t);
  EXPECT_THROW(apply_edit_sequence(t, 4, zeros, seeds, profiles), Error);
}

TEST(ApplyEditSequenceTest, EachStepEditsThePreviousOutput) {
  const std::string t = synthesize_source(5).text;
  const std::vector<double> lambdas(3, 0.3);
  const std::vector<std::uint64_t> seeds = {10, 11, 12};
  const std::vector<Profile> profiles(3, Profile::kParaphrase);
  auto out = apply_edit_sequence(t, 3, lambdas, seeds, profiles);
  EXPECT_EQ(out[0].edited, apply_edit(t, 0.3, 10, Profile::kParaphrase).edited);
  EXPECT_EQ(out[1].edited, apply_edit(out[0].edited, 0.3, 11, Profile::kParaphrase).edited);
  EXPECT_EQ(out[2].edited, replay(out[2].trace, out[1].edited));
}

TEST(ApplyEditSequenceTest, MeanMagnitudeNonDecreasingAcrossSteps) {
  embedding::EmbedderConfig config;
  auto embedder = embedding::make_embedder(config);
  std::vector<double> means(5, 0.0);
  for (std::uint64_t d = 0; d < 50; ++d) {
    const std::string t = synthesize_source(500 + d).text;
    const std::vector<double> lambdas(5, 0.3);
    const std::vector<std::uint64_t> seeds = {d * 10 + 1, d * 10 + 2, d * 10 + 3, d * 10 + 4, d * 10 + 5};
    const std::vector<Profile> profiles(5, Profile::kParaphrase);
    auto steps = apply_edit_sequence(t, 5, lambdas, seeds, profiles);
    for (std::size_t k = 0; k < 5; ++k) means[k] += simmetrics::cosine_distance_score(t, steps[k].edited, *embedder);
  }
  for (std::size_t k = 1; k < 5; ++k) EXPECT_GE(means[k], means[k - 1]) << "step " << k;
}

TEST(SplitSentencesTest, SplitsAfterTerminalPunctuation) {
  auto s = split_sentences("One two. Three! Four five? Six");
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], (std::vector<std::string>{"One", "two."}));
  EXPECT_EQ(s[3], (std::vector<std::string>{"Six"}));
}

TEST(SyntheticTextTest, SourcesAndMirrorsAreDeterministic) {
  EXPECT_EQ(synthesize_source(9).text, synthesize_source(9).text);
  EXPECT_NE(synthesize_source(9).text, synthesize_source(10).text);
  const std::string src = synthesize_source(9).text;
  EXPECT_EQ(synthesize_mirror(src, 1), synthesize_mirror(src, 1));
  EXPECT_NE(synthesize_mirror(src, 1), src);
}

}  // namespace
}  // namespace editlens::perturb
