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

#include "editlens/synthetic.hpp"

#include <cmath>
#include <sstream>

#include "editlens/error.hpp"
#include "editlens/hashing.hpp"
#include "editlens/random.hpp"

namespace editlens::synthetic {

using perturb::Profile;

namespace {

Profile profile_for(std::string_view category) {
  if (category == "Grammar and Mechanics") return Profile::kProofread;
  if (category == "Structure and Organization") return Profile::kRestructure;
  if (category == "Tone and Style Adjustments" || category == "Adding Detail" || category == "General Improvement") {
    return Profile::kRewrite;
  }
  return Profile::kParaphrase;
}

std::string lambda_tag(double lambda) {
  std::ostringstream out;
  out << lambda;
  return out.str();
}

}  // namespace

const std::vector<Prompt>& prompts() {
  static const std::vector<Prompt> kPrompts = [] {
    std::vector<Prompt> out;
    const auto& cats = labeler::prompt_categories();
    for (std::size_t c = 0; c < cats.size(); ++c) {
      for (int v = 1; v <= 8; ++v) {
        out.push_back({"prompt-" + std::to_string(c + 1) + "-" + std::to_string(v), std::string(cats[c]),
                       profile_for(cats[c])});
      }
    }
    return out;
  }();
  return kPrompts;
}

std::vector<CorpusPair> build_corpus(const CorpusConfig& config, const perturb::EditResources& resources) {
  for (double l : config.lambdas) require(std::isfinite(l) && l >= 0.0 && l <= 1.0, "lambda must lie in [0, 1]");
  const auto& all = prompts();
  std::vector<std::size_t> rewrite_prompts;
  for (std::size_t p = 0; p < all.size(); ++p) {
    if (all[p].profile == Profile::kRewrite) rewrite_prompts.push_back(p);
  }

  std::vector<CorpusPair> out;
  for (std::size_t i = 0; i < config.n_sources; ++i) {
    const std::string idx = std::to_string(i);
    const auto source = perturb::synthesize_source(hash64(config.seed, {"source", idx}));
    const std::uint64_t edit_seed = hash64(config.seed, {"edit", idx});
    Rng rng(hash64(config.seed, {"prompt", idx}));
    const Prompt& graded = all[rng.below(all.size())];
    const Prompt& rewrite = all[rewrite_prompts[rng.below(rewrite_prompts.size())]];

    auto base = [&](const std::string& id, std::string edited) {
      labeler::DocumentPair p;
      p.id = id;
      p.source_text = source.text;
      p.edited_text = std::move(edited);
      p.domain = source.domain;
      return p;
    };

    for (double lambda : config.lambdas) {
      CorpusPair cp;
      cp.lambda = lambda;
      cp.source_index = i;
      cp.pair = base("s" + idx + "-l" + lambda_tag(lambda),
                     perturb::apply_edit(source.text, lambda, edit_seed, graded.profile, resources).edited);
      if (lambda == 0.0) {
        cp.pair.editor = labeler::Editor::kHuman;
      } else {
        cp.pair.editor = labeler::Editor::kRule;
        cp.pair.prompt_id = graded.id;
        cp.pair.prompt_category = graded.category;
      }
      out.push_back(std::move(cp));
    }
    if (config.full_rewrite) {
      CorpusPair cp;
      cp.group = Group::kFullRewrite;
      cp.lambda = 1.0;
      cp.source_index = i;
      cp.pair = base("s" + idx + "-rewrite",
                     perturb::apply_edit(source.text, 1.0, edit_seed, Profile::kRewrite, resources).edited);
      cp.pair.editor = labeler::Editor::kRule;
      cp.pair.prompt_id = rewrite.id;
      cp.pair.prompt_category = rewrite.category;
      out.push_back(std::move(cp));
    }
    if (config.mirrors) {
      CorpusPair cp;
      cp.group = Group::kMirror;
      cp.lambda = 1.0;
      cp.source_index = i;
      cp.pair = base("s" + idx + "-mirror", perturb::synthesize_mirror(source.text, edit_seed, resources));
      cp.pair.editor = labeler::Editor::kLlm;
      cp.pair.mirror = true;
      out.push_back(std::move(cp));
    }
  }
  return out;
}

}  // namespace editlens::synthetic
