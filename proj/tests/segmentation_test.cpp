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

#include "editlens/segmentation.hpp"

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "editlens/error.hpp"
#include "editlens/random.hpp"

namespace editlens::segmentation {
namespace {

std::vector<std::string> texts_of(const std::vector<Phrase>& phrases) {
  std::vector<std::string> out;
  for (const auto& p : phrases) out.push_back(p.text);
  return out;
}

TEST(TokenizeWordsTest, LowercasesAndStripsEdgePunctuation) {
  EXPECT_EQ(tokenize_words("The cat sat."), (std::vector<std::string>{"the", "cat", "sat"}));
  EXPECT_EQ(tokenize_words("  "), std::vector<std::string>{});
  EXPECT_EQ(tokenize_words(""), std::vector<std::string>{});
  EXPECT_EQ(tokenize_words("\"Hello,\" she said..."), (std::vector<std::string>{"hello", "she", "said"}));
}

TEST(TokenizeWordsTest, KeepsInteriorPunctuation) {
  EXPECT_EQ(tokenize_words("don't stop—now"), (std::vector<std::string>{"don't", "stop—now"}));
  EXPECT_EQ(tokenize_words("e-mail U.S.A."), (std::vector<std::string>{"e-mail", "u.s.a"}));
}

TEST(TokenizeWordsTest, DropsPunctuationOnlyTokens) {
  EXPECT_EQ(tokenize_words("wait -- what ?!"), (std::vector<std::string>{"wait", "what"}));
}

TEST(TokenizeWordsTest, SplitsOnUnicodeWhitespaceAndFoldsNonAsciiCase) {
  EXPECT_EQ(tokenize_words("cafÉ NAÏVE"), (std::vector<std::string>{"café", "naïve"}));
  EXPECT_EQ(tokenize_words("Αθήνα　МОСКВА"),
            (std::vector<std::string>{"αθήνα", "москва"}));
}

TEST(EnumeratePhrasesTest, DirectEnumeration) {
  const std::vector<std::string> words = {"the", "cat", "sat"};
  EXPECT_EQ(texts_of(enumerate_phrases(words, 1, 2)),
            (std::vector<std::string>{"the", "cat", "sat", "the cat", "cat sat"}));
  EXPECT_EQ(texts_of(enumerate_phrases(words, 2, 3)), (std::vector<std::string>{"the cat", "cat sat", "the cat sat"}));
}

TEST(EnumeratePhrasesTest, ShortTextFallsBackToItself) {
  auto phrases = enumerate_phrases({"hi"}, 3, 5);
  ASSERT_EQ(phrases.size(), 1u);
  EXPECT_EQ(phrases[0].text, "hi");
  EXPECT_EQ(phrases[0].start_index, 0u);
  EXPECT_TRUE(enumerate_phrases({}, 3, 5).empty());
}

TEST(EnumeratePhrasesTest, RejectsBadWindowBounds) {
  const std::vector<std::string> words = {"a", "b"};
  EXPECT_THROW(enumerate_phrases(words, 3, 2), Error);
  EXPECT_THROW(enumerate_phrases(words, 0, 2), Error);
}

TEST(EnumeratePhrasesTest, CountsAndOffsetsMatchForRandomLengths) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t len = rng.below(30);
    const std::size_t a = 1 + rng.below(5);
    const std::size_t b = a + rng.below(4);
    std::vector<std::string> words;
    for (std::size_t i = 0; i < len; ++i) words.push_back("w" + std::to_string(rng.below(10)));
    const auto phrases = enumerate_phrases(words, a, b);
    EXPECT_EQ(phrases.size(), phrase_count(len, a, b));
    for (const auto& p : phrases) {
      ASSERT_LE(p.start_index + p.words.size(), len);
      for (std::size_t k = 0; k < p.words.size(); ++k) EXPECT_EQ(p.words[k], words[p.start_index + k]);
      if (len >= a) {
        EXPECT_GE(p.words.size(), a);
        EXPECT_LE(p.words.size(), b);
      }
    }
  }
}

}  // namespace
}  // namespace editlens::segmentation
