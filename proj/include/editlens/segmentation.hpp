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
#include <string>
#include <string_view>
#include <vector>

namespace editlens::segmentation {

// Splits on Unicode whitespace, lowercases, and strips leading/trailing
// punctuation from every token. Interior punctuation ("don't") is kept and
// tokens that end up empty are dropped. Lowercasing covers ASCII, Latin-1,
// Latin Extended-A, Greek and Cyrillic.
std::vector<std::string> tokenize_words(std::string_view text);

struct Phrase {
  std::vector<std::string> words;
  std::size_t start_index = 0;
  std::string text;  // words joined by single spaces

  bool operator==(const Phrase&) const = default;
};

// All contiguous windows of a..b words in reading order: n = a first, then
// every start offset. A non-empty sequence shorter than `a` yields itself as
// a single phrase. Throws InvalidInput unless 1 <= a <= b.
std::vector<Phrase> enumerate_phrases(const std::vector<std::string>& words, std::size_t a, std::size_t b);

// Number of phrases enumerate_phrases returns, without building them.
std::size_t phrase_count(std::size_t length, std::size_t a, std::size_t b);

}  // namespace editlens::segmentation
