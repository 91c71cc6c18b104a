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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "editlens/resources.hpp"

namespace editlens::perturb {

enum class Profile { kProofread, kParaphrase, kRestructure, kRewrite };

std::string_view profile_name(Profile profile);
Profile parse_profile(std::string_view name);

struct MicroEdit {
  enum class Kind { kDeleteWord, kSubstituteWord, kSwapSentences, kInjectTypo, kRewriteSentence };

  Kind kind = Kind::kDeleteWord;
  std::size_t i = 0;            // word index, or first sentence index
  std::size_t j = 0;            // second sentence index (swap only)
  std::string replacement;      // substitute only
  std::size_t template_id = 0;  // rewrite only

  bool operator==(const MicroEdit&) const = default;
};

// Word indices count whitespace-separated tokens of the source; sentence
// indices count sentences of the source. Replay applies word edits, then
// sentence rewrites, then swaps in listed order.
struct EditTrace {
  std::vector<MicroEdit> ops;
  double lambda = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const EditTrace&) const = default;
};

nlohmann::json trace_to_json(const EditTrace& trace);
EditTrace trace_from_json(const nlohmann::json& j);

struct EditResources {
  const SynonymTable* synonyms = &SynonymTable::builtin();
  std::vector<std::string> templates = builtin_templates();
  std::vector<std::string> lexicon = builtin_lexicon();

  static const EditResources& builtin();
};

struct EditResult {
  std::string edited;
  EditTrace trace;
};

// Deterministic in (source, lambda, seed, profile). lambda == 0 returns the
// source unchanged with an empty trace. For a fixed seed the set of touched
// words only grows with lambda.
EditResult apply_edit(const std::string& source, double lambda, std::uint64_t seed, Profile profile,
                      const EditResources& resources = EditResources::builtin());

// Reproduces apply_edit's output from the trace. Throws InvalidInput when an
// index does not fit the source.
std::string replay(const EditTrace& trace, const std::string& source,
                   const EditResources& resources = EditResources::builtin());

// Edit i is applied to the output of edit i - 1.
std::vector<EditResult> apply_edit_sequence(const std::string& source, std::size_t k, std::span<const double> lambdas,
                                            std::span<const std::uint64_t> seeds, std::span<const Profile> profiles,
                                            const EditResources& resources = EditResources::builtin());

// Sentences split after tokens ending in '.', '!' or '?'.
std::vector<std::vector<std::string>> split_sentences(const std::string& text);

// Synthetic corpus used by the tests, the acceptance suite and
// `perturb --synthetic`.
struct SyntheticSource {
  std::string text;
  std::string domain;
};
SyntheticSource synthesize_source(std::uint64_t seed);
// A fully machine-styled counterpart of roughly the same length.
std::string synthesize_mirror(const std::string& source, std::uint64_t seed,
                              const EditResources& resources = EditResources::builtin());

}  // namespace editlens::perturb
