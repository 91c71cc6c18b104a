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

#include <fstream>
#include <set>
#include <sstream>

#include "editlens/error.hpp"

namespace editlens::config {

namespace {

using nlohmann::json;

// Walks one JSON object, rejecting keys it does not know about.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(ErrorKind::kInvalidInput, "config " + where() + " must be a JSON object");
  }

  template <typename T>
  void read(const char* key, T& out) const {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      fail(ErrorKind::kInvalidInput, "config key \"" + name(key) + "\" has the wrong type");
    }
  }

  const json* child(const char* key) const {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string name(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) fail(ErrorKind::kInvalidInput, "unknown config key \"" + name(k.c_str()) + "\"");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "root" : "\"" + path_ + "\""; }

  const json& j_;
  std::string path_;
  mutable std::set<std::string> seen_;
};

std::string provider_name(embedding::ProviderKind k) {
  return k == embedding::ProviderKind::kRemote ? "remote" : "deterministic_test";
}

void read_embedder(const json& j, const std::string& path, embedding::EmbedderConfig& cfg) {
  Section s(j, path);
  std::string provider = provider_name(cfg.provider_kind);
  s.read("provider", provider);
  if (provider == "remote") {
    cfg.provider_kind = embedding::ProviderKind::kRemote;
  } else if (provider == "deterministic_test") {
    cfg.provider_kind = embedding::ProviderKind::kDeterministicTest;
  } else {
    fail(ErrorKind::kInvalidInput, "config key \"" + s.name("provider") + "\" must be deterministic_test or remote");
  }
  s.read("model_id", cfg.model_id);
  s.read("dim", cfg.dim);
  s.read("endpoint_url", cfg.endpoint_url);
  s.read("batch_size", cfg.batch_size);
  if (const json* c = s.child("cache_path")) {
    if (c->is_null()) {
      cfg.cache_path.reset();
    } else if (c->is_string()) {
      cfg.cache_path = c->get<std::string>();
    } else {
      fail(ErrorKind::kInvalidInput, "config key \"" + s.name("cache_path") + "\" has the wrong type");
    }
  }
  s.read("seed", cfg.seed);
  s.read("synonyms", cfg.synonyms);
  s.read("order_weight", cfg.order_weight);
  s.read("position_weight", cfg.position_weight);
  s.finish();
  if (cfg.provider_kind == embedding::ProviderKind::kRemote && cfg.endpoint_url.empty()) {
    fail(ErrorKind::kInvalidInput, "missing config key \"" + s.name("endpoint_url") + "\" for the remote provider");
  }
}

json embedder_json(const embedding::EmbedderConfig& cfg) {
  return {{"provider", provider_name(cfg.provider_kind)},
          {"model_id", cfg.model_id},
          {"dim", cfg.dim},
          {"endpoint_url", cfg.endpoint_url},
          {"batch_size", cfg.batch_size},
          {"cache_path", cfg.cache_path ? json(cfg.cache_path->string()) : json(nullptr)},
          {"seed", cfg.seed},
          {"synonyms", cfg.synonyms},
          {"order_weight", cfg.order_weight},
          {"position_weight", cfg.position_weight}};
}

}  // namespace

simmetrics::ScaleSpec RunConfig::resolved_scale() const { return scale.value_or(simmetrics::default_scale(metric)); }

labeler::LabelSpec RunConfig::label_spec() const {
  labeler::LabelSpec spec;
  spec.kind = metric;
  spec.scale = resolved_scale();
  spec.buckets = buckets;
  spec.soft_ngrams = soft_ngrams;
  return spec;
}

void RunConfig::set_seed(std::uint64_t s) {
  seed = s;
  doc_embedder.seed = s;
  soft_ngrams.phrase_embedder.seed = s;
  features.hash_seed = s;
  training.seed = s;
}

void RunConfig::validate() const {
  label_spec().validate();
  doc_embedder.validate();
  soft_ngrams.validate();
  features.validate();
  training.validate();
  splits.validate();
  require(agreement.bootstrap >= 2, "agreement.bootstrap must be >= 2");
  for (int n : agreement.bucket_variants) require(n >= 1, "agreement.bucket_variants entries must be >= 1");
  require(histogram.bins >= 1, "histogram.bins must be >= 1");
  require(histogram.lo < histogram.hi, "histogram range must satisfy lo < hi");
}

RunConfig from_json(const json& j) {
  RunConfig cfg;
  Section root(j, "");
  if (const json* m = root.child("metric")) {
    if (!m->is_string()) fail(ErrorKind::kInvalidInput, "config key \"metric\" has the wrong type");
    cfg.metric = simmetrics::parse_metric(m->get<std::string>());
  }
  if (const json* s = root.child("scale")) {
    Section sec(*s, "scale");
    simmetrics::ScaleSpec scale = simmetrics::default_scale(cfg.metric);
    sec.read("tau_low", scale.tau_low);
    sec.read("tau_high", scale.tau_high);
    sec.finish();
    cfg.scale = scale;
  }
  root.read("buckets", cfg.buckets);
  if (const json* s = root.child("soft_ngrams")) {
    Section sec(*s, "soft_ngrams");
    sec.read("a", cfg.soft_ngrams.a);
    sec.read("b", cfg.soft_ngrams.b);
    sec.read("tau", cfg.soft_ngrams.tau);
    sec.finish();
  }
  if (const json* e = root.child("doc_embedder")) read_embedder(*e, "doc_embedder", cfg.doc_embedder);
  if (const json* e = root.child("phrase_embedder")) {
    read_embedder(*e, "phrase_embedder", cfg.soft_ngrams.phrase_embedder);
  }
  if (const json* f = root.child("features")) {
    Section sec(*f, "features");
    sec.read("dim", cfg.features.dim);
    if (const json* fams = sec.child("families")) {
      if (!fams->is_array()) fail(ErrorKind::kInvalidInput, "config key \"features.families\" must be an array");
      cfg.features.families = 0;
      for (const auto& name : *fams) {
        if (!name.is_string()) fail(ErrorKind::kInvalidInput, "config key \"features.families\" must hold strings");
        cfg.features.families |= static_cast<std::uint32_t>(model::parse_family(name.get<std::string>()));
      }
    }
    sec.read("hash_seed", cfg.features.hash_seed);
    sec.finish();
  }
  if (const json* t = root.child("training")) {
    Section sec(*t, "training");
    sec.read("lr", cfg.training.lr);
    sec.read("epochs", cfg.training.epochs);
    sec.read("batch_size", cfg.training.batch_size);
    sec.read("aux_weight", cfg.training.aux_weight);
    std::string head = cfg.training.head == model::HeadKind::kRegression ? "regression" : "classification";
    sec.read("head", head);
    if (head == "regression") {
      cfg.training.head = model::HeadKind::kRegression;
    } else if (head == "classification") {
      cfg.training.head = model::HeadKind::kClassification;
    } else {
      fail(ErrorKind::kInvalidInput, "config key \"training.head\" must be classification or regression");
    }
    sec.read("seed", cfg.training.seed);
    sec.finish();
  }
  if (const json* s = root.child("splits")) {
    Section sec(*s, "splits");
    sec.read("train", cfg.splits.train);
    sec.read("val", cfg.splits.val);
    sec.read("test", cfg.splits.test);
    sec.finish();
  }
  if (const json* a = root.child("agreement")) {
    Section sec(*a, "agreement");
    sec.read("bootstrap", cfg.agreement.bootstrap);
    sec.read("bucket_variants", cfg.agreement.bucket_variants);
    sec.finish();
  }
  if (const json* h = root.child("histogram")) {
    Section sec(*h, "histogram");
    sec.read("bins", cfg.histogram.bins);
    sec.read("lo", cfg.histogram.lo);
    sec.read("hi", cfg.histogram.hi);
    sec.finish();
  }
  root.read("seed", cfg.seed);
  root.finish();
  cfg.validate();
  return cfg;
}

RunConfig load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kInvalidInput, "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kInvalidInput, "config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

json to_json(const RunConfig& cfg) {
  const auto scale = cfg.resolved_scale();
  json families = json::array();
  for (model::Family f : {model::Family::kWordUnigram, model::Family::kWordBigram, model::Family::kChar3,
                          model::Family::kChar4, model::Family::kChar5}) {
    if (cfg.features.has(f)) families.push_back(model::family_name(f));
  }
  return {{"metric", simmetrics::metric_name(cfg.metric)},
          {"scale", {{"tau_low", scale.tau_low}, {"tau_high", scale.tau_high}}},
          {"buckets", cfg.buckets},
          {"soft_ngrams", {{"a", cfg.soft_ngrams.a}, {"b", cfg.soft_ngrams.b}, {"tau", cfg.soft_ngrams.tau}}},
          {"doc_embedder", embedder_json(cfg.doc_embedder)},
          {"phrase_embedder", embedder_json(cfg.soft_ngrams.phrase_embedder)},
          {"features", {{"dim", cfg.features.dim}, {"families", families}, {"hash_seed", cfg.features.hash_seed}}},
          {"training",
           {{"lr", cfg.training.lr},
            {"epochs", cfg.training.epochs},
            {"batch_size", cfg.training.batch_size},
            {"aux_weight", cfg.training.aux_weight},
            {"head", cfg.training.head == model::HeadKind::kRegression ? "regression" : "classification"},
            {"seed", cfg.training.seed}}},
          {"splits", {{"train", cfg.splits.train}, {"val", cfg.splits.val}, {"test", cfg.splits.test}}},
          {"agreement", {{"bootstrap", cfg.agreement.bootstrap}, {"bucket_variants", cfg.agreement.bucket_variants}}},
          {"histogram", {{"bins", cfg.histogram.bins}, {"lo", cfg.histogram.lo}, {"hi", cfg.histogram.hi}}},
          {"seed", cfg.seed}};
}

}  // namespace editlens::config
