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

#include "editlens/labeler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "editlens/error.hpp"
#include "editlens/hashing.hpp"
#include "editlens/kernels.hpp"
#include "editlens/random.hpp"
#include "editlens/segmentation.hpp"

namespace editlens::labeler {

using simmetrics::MetricKind;

std::string_view editor_name(Editor e) {
  switch (e) {
    case Editor::kHuman: return "human";
    case Editor::kLlm: return "llm";
    case Editor::kRule: return "rule";
  }
  return "llm";
}

std::string_view split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "train";
}

std::string_view ternary_name(Ternary t) {
  switch (t) {
    case Ternary::kHuman: return "human";
    case Ternary::kAiEdited: return "ai_edited";
    case Ternary::kAiGenerated: return "ai_generated";
  }
  return "human";
}

Editor parse_editor(std::string_view name) {
  for (Editor e : {Editor::kHuman, Editor::kLlm, Editor::kRule}) {
    if (editor_name(e) == name) return e;
  }
  fail(ErrorKind::kInvalidInput, "unknown editor '" + std::string(name) + "'");
}

Split parse_split(std::string_view name) {
  for (Split s : kSplits) {
    if (split_name(s) == name) return s;
  }
  if (name == "validation") return Split::kVal;
  fail(ErrorKind::kInvalidInput, "unknown split '" + std::string(name) + "'");
}

Ternary parse_ternary(std::string_view name) {
  for (Ternary t : kTernaryClasses) {
    if (ternary_name(t) == name) return t;
  }
  fail(ErrorKind::kInvalidInput, "unknown ternary class '" + std::string(name) + "'");
}

const std::array<std::string_view, 9>& prompt_categories() {
  static constexpr std::array<std::string_view, 9> kCategories = {
      "Tone and Style Adjustments", "Adding Detail",        "Concision",
      "Fluency and Flow",           "Paraphrasing",         "Structure and Organization",
      "General Improvement",        "Clarity and Precision", "Grammar and Mechanics"};
  return kCategories;
}

std::optional<int> category_index(std::string_view name) {
  const auto& cats = prompt_categories();
  for (std::size_t k = 0; k < cats.size(); ++k) {
    if (cats[k] == name) return static_cast<int>(k);
  }
  return std::nullopt;
}

void LabelSpec::validate() const {
  scale.validate();
  bucket_spec().validate();
  if (kind == MetricKind::kSoftNgrams) soft_ngrams.validate();
}

LabelSpec LabelSpec::defaults(MetricKind kind, int buckets) {
  LabelSpec spec;
  spec.kind = kind;
  spec.scale = simmetrics::default_scale(kind);
  spec.buckets = buckets;
  return spec;
}

Ternary ternary_of(double raw, const simmetrics::ScaleSpec& scale) {
  if (raw <= scale.tau_low) return Ternary::kHuman;
  if (raw >= scale.tau_high) return Ternary::kAiGenerated;
  return Ternary::kAiEdited;
}

double raw_distance(const DocumentPair& pair, const LabelSpec& spec, const Embedders& embedders) {
  if (spec.kind == MetricKind::kCosineDistance) {
    require(embedders.doc != nullptr, "cosine labeling needs a document embedder");
    return simmetrics::cosine_distance_score(pair.source_text, pair.edited_text, *embedders.doc);
  }
  require(embedders.phrase != nullptr, "soft n-grams labeling needs a phrase embedder");
  const double precision =
      simmetrics::soft_ngrams_precision(pair.source_text, pair.edited_text, spec.soft_ngrams, *embedders.phrase);
  return simmetrics::edit_magnitude(precision, MetricKind::kSoftNgrams);
}

LabeledExample label_from_raw(const DocumentPair& pair, double raw, const LabelSpec& spec) {
  LabeledExample ex;
  ex.id = pair.id;
  ex.text = pair.edited_text;
  ex.metric_kind = spec.kind;
  ex.raw_score = raw;
  ex.target = simmetrics::scale_target(raw, spec.scale);
  ex.bucket = simmetrics::bucket_of(raw, spec.bucket_spec());
  ex.ternary = ternary_of(raw, spec.scale);
  ex.split = pair.split.value_or(Split::kTrain);
  ex.prompt_category = pair.prompt_category;
  return ex;
}

LabeledExample label_pair(const DocumentPair& pair, const LabelSpec& spec, const Embedders& embedders) {
  spec.validate();
  require(!pair.source_text.empty() && !pair.edited_text.empty(), "pair '" + pair.id + "' has an empty text");
  return label_from_raw(pair, raw_distance(pair, spec, embedders), spec);
}

LabeledExample label_fully_ai(const std::string& id, const std::string& text, const LabelSpec& spec, Split split) {
  spec.validate();
  require(!text.empty(), "label_fully_ai: empty text");
  LabeledExample ex;
  ex.id = id;
  ex.text = text;
  ex.metric_kind = spec.kind;
  ex.raw_score = spec.scale.tau_high;
  ex.target = 1.0;
  ex.bucket = spec.buckets - 1;
  ex.ternary = Ternary::kAiGenerated;
  ex.split = split;
  ex.sentinel = true;
  return ex;
}

std::vector<LabeledExample> label_pairs(std::span<const DocumentPair> pairs, const LabelSpec& spec,
                                        const Embedders& embedders, std::span<const Split> splits) {
  spec.validate();
  require(splits.empty() || splits.size() == pairs.size(), "label_pairs: split assignment size mismatch");
  std::vector<LabeledExample> out(pairs.size());
  kernels::parallel_for(pairs.size(), [&](std::size_t i) {
    DocumentPair pair = pairs[i];
    if (!pair.split && !splits.empty()) pair.split = splits[i];
    if (pair.mirror) {
      out[i] = label_fully_ai(pair.id, pair.edited_text, spec, pair.split.value_or(Split::kTrain));
      out[i].prompt_category = pair.prompt_category;
    } else {
      out[i] = label_pair(pair, spec, embedders);
    }
  });
  return out;
}

std::optional<std::string> check_example(const LabeledExample& ex, const LabelSpec& spec) {
  if (ex.metric_kind != spec.kind) return "metric kind differs from the labeling spec";
  if (!std::isfinite(ex.raw_score)) return "raw score is not finite";
  if (ex.target != simmetrics::scale_target(ex.raw_score, spec.scale)) return "target != scale_target(raw_score)";
  if (ex.bucket != simmetrics::bucket_of(ex.raw_score, spec.bucket_spec())) return "bucket != bucket_of(raw_score)";
  if (ex.ternary != ternary_of(ex.raw_score, spec.scale)) return "ternary class inconsistent with thresholds";
  if (ex.sentinel && ex.raw_score != spec.scale.tau_high) return "sentinel raw score must equal tau_high";
  return std::nullopt;
}

void SplitFractions::validate() const {
  for (double f : {train, val, test}) require(std::isfinite(f) && f >= 0.0, "split fractions must be non-negative");
  require(std::abs(train + val + test - 1.0) <= 1e-9, "split fractions must sum to 1");
}

std::vector<Split> split_by_prompt(std::span<const DocumentPair> pairs, const SplitFractions& fractions,
                                   std::uint64_t seed) {
  fractions.validate();
  const std::array<double, 3> f = {fractions.train, fractions.val, fractions.test};
  const auto nonzero = static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [](double x) { return x > 0.0; }));

  std::set<std::string> distinct;
  for (const auto& p : pairs) {
    if (p.prompt_id) distinct.insert(*p.prompt_id);
  }
  const std::size_t n_prompts = distinct.size();
  if (n_prompts > 0 && n_prompts < nonzero) {
    fail(ErrorKind::kInsufficientPrompts, std::to_string(n_prompts) + " distinct prompt ids cannot fill " +
                                              std::to_string(nonzero) + " non-empty splits");
  }

  std::vector<std::string> prompts(distinct.begin(), distinct.end());
  Rng rng(hash64(seed, {"split-prompts"}));
  rng.shuffle(std::span<std::string>(prompts));

  // Train and val sizes round to nearest; test takes the remainder. Every
  // nonzero fraction receives at least one prompt.
  std::array<std::size_t, 3> counts{};
  for (int k = 0; k < 2; ++k) {
    counts[k] = static_cast<std::size_t>(std::llround(f[k] * static_cast<double>(n_prompts)));
  }
  auto fix_counts = [&] {
    for (int k = 0; k < 3; ++k) {
      if (f[k] > 0.0 && counts[k] == 0 && n_prompts > 0) counts[k] = 1;
      if (f[k] == 0.0) counts[k] = 0;
    }
  };
  fix_counts();
  while (counts[0] + counts[1] > n_prompts) --counts[counts[0] >= counts[1] ? 0 : 1];
  counts[2] = n_prompts - counts[0] - counts[1];
  if (f[2] > 0.0 && counts[2] == 0 && n_prompts >= nonzero) {
    --counts[counts[0] >= counts[1] ? 0 : 1];
    counts[2] = 1;
  }
  if (f[2] == 0.0 && counts[2] > 0) {
    counts[f[0] > 0.0 ? 0 : 1] += counts[2];
    counts[2] = 0;
  }

  std::map<std::string, Split> assignment;
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    for (std::size_t c = 0; c < counts[k]; ++c) assignment[prompts[pos++]] = kSplits[k];
  }

  std::vector<Split> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p.prompt_id) {
      out.push_back(assignment.at(*p.prompt_id));
      continue;
    }
    Rng r(hash64(seed, {"split-iid", p.id}));
    const double u = r.uniform();
    if (u < f[0]) {
      out.push_back(Split::kTrain);
    } else if (u < f[0] + f[1] || f[2] == 0.0) {
      out.push_back(f[1] > 0.0 ? Split::kVal : Split::kTrain);
    } else {
      out.push_back(Split::kTest);
    }
  }
  return out;
}

namespace {

struct Accumulator {
  std::size_t count = 0;
  double sum = 0.0;
  std::size_t min = std::numeric_limits<std::size_t>::max();
  std::size_t max = 0;

  void add(std::size_t words) {
    ++count;
    sum += static_cast<double>(words);
    min = std::min(min, words);
    max = std::max(max, words);
  }
  WordCountStats stats() const {
    if (count == 0) return {};
    return {count, sum / static_cast<double>(count), min, max};
  }
};

nlohmann::json wc_json(const WordCountStats& s) {
  return {{"count", s.count}, {"mean_words", s.mean_words}, {"min_words", s.min_words}, {"max_words", s.max_words}};
}

template <typename T>
T get_required(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorKind::kInvalidInput, std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::kInvalidInput, std::string("key \"") + key + "\" has the wrong type");
  }
}

std::optional<std::string> get_optional_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get_required<std::string>(j, key);
}

}  // namespace

DatasetStats dataset_stats(std::span<const LabeledExample> examples) {
  Accumulator total;
  std::map<std::pair<Split, Ternary>, Accumulator> by_group;
  std::map<Split, Accumulator> by_split;
  std::map<Ternary, Accumulator> by_ternary;
  for (const auto& ex : examples) {
    const std::size_t words = segmentation::tokenize_words(ex.text).size();
    total.add(words);
    by_group[{ex.split, ex.ternary}].add(words);
    by_split[ex.split].add(words);
    by_ternary[ex.ternary].add(words);
  }
  DatasetStats stats;
  stats.total = total.stats();
  for (Split s : kSplits) {
    stats.by_split[s] = by_split[s].stats();
    for (Ternary t : kTernaryClasses) stats.by_split_ternary[{s, t}] = by_group[{s, t}].stats();
  }
  for (Ternary t : kTernaryClasses) stats.by_ternary[t] = by_ternary[t].stats();
  return stats;
}

nlohmann::json stats_to_json(const DatasetStats& stats) {
  nlohmann::json j;
  j["total"] = wc_json(stats.total);
  for (const auto& [s, wc] : stats.by_split) j["by_split"][std::string(split_name(s))] = wc_json(wc);
  for (const auto& [t, wc] : stats.by_ternary) j["by_ternary"][std::string(ternary_name(t))] = wc_json(wc);
  for (const auto& [key, wc] : stats.by_split_ternary) {
    j["by_split_ternary"][std::string(split_name(key.first))][std::string(ternary_name(key.second))] = wc_json(wc);
  }
  return j;
}

DocumentPair pair_from_json(const nlohmann::json& j) {
  require(j.is_object(), "record is not a JSON object");
  DocumentPair p;
  p.id = get_required<std::string>(j, "id");
  p.source_text = get_required<std::string>(j, "source_text");
  p.edited_text = get_required<std::string>(j, "edited_text");
  require(!p.id.empty(), "\"id\" must be non-empty");
  require(!p.source_text.empty() && !p.edited_text.empty(), "texts must be non-empty");
  if (auto e = get_optional_string(j, "editor")) p.editor = parse_editor(*e);
  p.prompt_id = get_optional_string(j, "prompt_id");
  p.prompt_category = get_optional_string(j, "prompt_category");
  if (p.prompt_category && !category_index(*p.prompt_category)) {
    fail(ErrorKind::kInvalidInput, "unknown prompt_category '" + *p.prompt_category + "'");
  }
  if (auto d = get_optional_string(j, "domain")) p.domain = *d;
  if (auto s = get_optional_string(j, "split")) p.split = parse_split(*s);
  if (j.contains("mirror") && !j.at("mirror").is_null()) p.mirror = get_required<bool>(j, "mirror");
  return p;
}

nlohmann::json pair_to_json(const DocumentPair& p) {
  nlohmann::json j = {{"id", p.id},
                      {"source_text", p.source_text},
                      {"edited_text", p.edited_text},
                      {"editor", editor_name(p.editor)},
                      {"prompt_id", p.prompt_id ? nlohmann::json(*p.prompt_id) : nlohmann::json(nullptr)},
                      {"prompt_category",
                       p.prompt_category ? nlohmann::json(*p.prompt_category) : nlohmann::json(nullptr)},
                      {"domain", p.domain}};
  if (p.split) j["split"] = split_name(*p.split);
  if (p.mirror) j["mirror"] = true;
  return j;
}

LabeledExample example_from_json(const nlohmann::json& j) {
  require(j.is_object(), "record is not a JSON object");
  LabeledExample ex;
  ex.id = get_required<std::string>(j, "id");
  ex.text = get_required<std::string>(j, "text");
  ex.metric_kind = simmetrics::parse_metric(get_required<std::string>(j, "metric_kind"));
  ex.raw_score = get_required<double>(j, "raw_score");
  ex.target = get_required<double>(j, "target");
  ex.bucket = get_required<int>(j, "bucket");
  ex.ternary = parse_ternary(get_required<std::string>(j, "ternary"));
  ex.split = parse_split(get_required<std::string>(j, "split"));
  ex.sentinel = j.contains("sentinel") ? get_required<bool>(j, "sentinel") : false;
  ex.prompt_category = get_optional_string(j, "prompt_category");
  return ex;
}

nlohmann::json example_to_json(const LabeledExample& ex) {
  nlohmann::json j = {{"id", ex.id},
                      {"text", ex.text},
                      {"metric_kind", simmetrics::metric_name(ex.metric_kind)},
                      {"raw_score", ex.raw_score},
                      {"target", ex.target},
                      {"bucket", ex.bucket},
                      {"ternary", ternary_name(ex.ternary)},
                      {"split", split_name(ex.split)},
                      {"sentinel", ex.sentinel}};
  if (ex.prompt_category) j["prompt_category"] = *ex.prompt_category;
  return j;
}

}  // namespace editlens::labeler
