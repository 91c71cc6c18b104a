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

#include <array>
#include <string>
#include <vector>

#include "editlens/hashing.hpp"
#include "editlens/perturb.hpp"
#include "editlens/random.hpp"

// Small phrase grammar for synthetic "human" source texts and their fully
// machine-styled mirrors. Vocabulary overlaps the synonym table on purpose so
// that synonym substitutions have something to act on.

namespace editlens::perturb {

namespace {

using Pool = std::vector<std::string_view>;

const Pool kNouns = {"dog",    "garden", "river",  "kitchen", "teacher", "window",  "market", "letter",  "village",
                     "train",  "bridge", "school", "doctor",  "coffee",  "table",   "road",   "mountain", "story",
                     "friend", "city",   "office", "family",  "book",    "morning", "dinner", "phone",   "street",
                     "team",   "game",   "movie",  "song",    "shop",    "price",   "product", "weather", "beach",
                     "forest", "farmer", "student", "manager", "plan",   "meeting", "trip",   "hotel",   "room",
                     "chair",  "door",   "house",  "car",     "job",     "idea",    "answer", "bread",   "lake",
                     "bike",   "jacket", "radio",  "paper",   "ticket",  "island"};
const Pool kAdjectives = {"old",   "new",   "red",   "green", "warm",  "cold",      "quiet", "loud",  "bright",
                          "dark",  "busy",  "empty", "clean", "dirty", "cheap",     "early", "late",  "long",
                          "short", "heavy", "big",   "small", "happy", "sad",       "fast",  "slow",  "good",
                          "bad",   "smart", "easy",  "fresh", "plain", "important", "soft",  "loose", "round"};
const Pool kVerbsPast = {"saw",    "found",   "left",   "took",    "made",    "liked",  "opened", "closed",
                         "carried", "painted", "moved", "fixed",   "watched", "called", "visited", "cooked",
                         "cleaned", "wanted",  "needed", "kept",   "sold",    "lost",   "checked", "picked"};
const Pool kVerbsBase = {"see",  "find", "leave", "take",  "make",  "like",  "open",  "close", "carry", "paint",
                         "move", "fix",  "watch", "call",  "visit", "cook",  "clean", "want",  "need",  "keep",
                         "begin", "end", "help",  "show",  "buy",   "use",   "sell",  "check"};
const Pool kAdverbs = {"often", "rarely", "quietly", "carefully", "together", "again", "today", "yesterday", "twice"};
const Pool kPreps = {"near", "behind", "under", "over", "beside", "after", "before", "inside", "across"};
const Pool kNames = {"Anna", "Tom", "Maria", "Ken", "Lucy", "Omar", "Sara", "Ben", "Priya", "Jonas"};
const Pool kDomains = {"reviews", "creative", "news", "education"};

std::string_view pick(Rng& rng, const Pool& pool) { return pool[rng.below(pool.size())]; }

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string human_sentence(Rng& rng) {
  std::string s;
  auto add = [&s](std::string_view w) {
    if (!s.empty()) s.push_back(' ');
    s += w;
  };
  switch (rng.below(6)) {
    case 0:
      add("the"), add(pick(rng, kAdjectives)), add(pick(rng, kNouns)), add(pick(rng, kVerbsPast)), add("the"),
          add(pick(rng, kNouns)), add(pick(rng, kPreps)), add("the"), add(pick(rng, kNouns));
      break;
    case 1:
      add("we"), add(pick(rng, kAdverbs)), add(pick(rng, kVerbsBase)), add("a"), add(pick(rng, kAdjectives)),
          add(pick(rng, kNouns)), add("for"), add("our"), add(pick(rng, kNouns));
      break;
    case 2:
      add("my"), add(pick(rng, kNouns)), add("was"), add(pick(rng, kAdjectives)), add("and"),
          add(pick(rng, kAdjectives)), add("when"), add("we"), add(pick(rng, kVerbsPast)), add("the"),
          add(pick(rng, kNouns));
      break;
    case 3:
      add(pick(rng, kNames)), add(pick(rng, kVerbsPast)), add("the"), add(pick(rng, kAdjectives)),
          add(pick(rng, kNouns)), add(pick(rng, kPreps)), add("the"), add(pick(rng, kNouns)), add(pick(rng, kAdverbs));
      break;
    case 4:
      add("they"), add("did"), add("not"), add(pick(rng, kVerbsBase)), add("the"), add(pick(rng, kNouns)),
          add("but"), add("the"), add(pick(rng, kNouns)), add("was"), add(pick(rng, kAdjectives));
      break;
    default:
      add("there"), add("was"), add("a"), add(pick(rng, kAdjectives)), add(pick(rng, kNouns)), add(pick(rng, kPreps)),
          add("the"), add(pick(rng, kAdjectives)), add(pick(rng, kNouns)), add("and"), add("it"),
          add(pick(rng, kVerbsPast)), add("us");
      break;
  }
  return capitalize(s) + (rng.below(8) == 0 ? "!" : ".");
}

}  // namespace

SyntheticSource synthesize_source(std::uint64_t seed) {
  Rng rng(hash64(seed, {"synthetic-source"}));
  SyntheticSource out;
  out.domain = std::string(pick(rng, kDomains));
  const std::size_t sentences = 6 + rng.below(5);
  for (std::size_t k = 0; k < sentences; ++k) {
    if (!out.text.empty()) out.text.push_back(' ');
    out.text += human_sentence(rng);
  }
  return out;
}

std::string synthesize_mirror(const std::string& source, std::uint64_t seed, const EditResources& resources) {
  Rng rng(hash64(seed, {"synthetic-mirror", source}));
  const std::size_t sentences = std::max<std::size_t>(split_sentences(source).size(), 1);
  const auto& lex = resources.lexicon;
  auto word = [&]() -> std::string { return lex.empty() ? std::string("text") : lex[rng.below(lex.size())]; };
  std::string out;
  for (std::size_t k = 0; k < sentences; ++k) {
    std::string s;
    switch (rng.below(3)) {
      case 0: s = "the " + word() + " " + word() + " " + word() + " the " + word() + " " + word() + " of " + word(); break;
      case 1: s = word() + ", this " + word() + " " + word() + " a " + word() + " and " + word() + " " + word(); break;
      default: s = "it is " + word() + " to " + word() + " the " + word() + " " + word() + " " + word(); break;
    }
    if (!out.empty()) out.push_back(' ');
    out += capitalize(s) + ".";
  }
  return out;
}

}  // namespace editlens::perturb
