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
#include <string>
#include <vector>

#include "editlens/labeler.hpp"
#include "editlens/perturb.hpp"

// Graded synthetic corpus: every source appears unedited, edited at several
// lambda levels under one prompt, rewritten at full strength, and mirrored.
namespace editlens::synthetic {

struct Prompt {
  std::string id;
  std::string category;
  perturb::Profile profile = perturb::Profile::kParaphrase;
};

// Eight variants of each prompt category. The profile follows the category:
// grammar prompts proofread, structure prompts restructure, tone, detail and
// general prompts rewrite, the rest paraphrase.
const std::vector<Prompt>& prompts();

struct CorpusConfig {
  std::size_t n_sources = 2000;
  std::vector<double> lambdas = {0.0, 0.25, 0.5, 0.75};
  bool full_rewrite = true;  // extra rewrite-profile pair at lambda 1
  bool mirrors = true;
  std::uint64_t seed = 0;
};

enum class Group { kGraded, kFullRewrite, kMirror };

struct CorpusPair {
  labeler::DocumentPair pair;
  Group group = Group::kGraded;
  double lambda = 0.0;  // 1 for the full rewrite and the mirror
  std::size_t source_index = 0;
};

// Deterministic in the config. Unedited pairs (lambda 0) and mirrors carry
// no prompt id; edited pairs carry the prompt that produced them.
std::vector<CorpusPair> build_corpus(const CorpusConfig& config,
                                     const perturb::EditResources& resources = perturb::EditResources::builtin());

}  // namespace editlens::synthetic
