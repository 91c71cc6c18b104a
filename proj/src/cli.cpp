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

#include "editlens/cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "editlens/baseline_model.hpp"
#include "editlens/calibration.hpp"
#include "editlens/config.hpp"
#include "editlens/evalmetrics.hpp"
#include "editlens/hashing.hpp"
#include "editlens/kernels.hpp"
#include "editlens/labeler.hpp"
#include "editlens/perturb.hpp"
#include "editlens/simmetrics.hpp"
#include "editlens/synthetic.hpp"

namespace editlens::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kVersion = "1.0.0";

struct Options {
  std::string command;
  std::string config_path;
  std::string input;
  std::string output;
  std::string model;
  std::string calibration;
  std::string emit_hist;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> metric;
  std::string profile = "paraphrase";
  std::optional<double> lambda;
  std::size_t steps = 5;
  std::size_t synthetic = 0;
  std::string task = "ternary";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Record {
  std::size_t line = 0;
  json value;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kInvalidInput, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs fn, prefixing any library error with the input position.
template <typename Fn>
auto at_line(const std::string& path, std::size_t line, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    fail(e.kind(), path + ":" + std::to_string(line) + ": " + e.detail());
  }
}

std::vector<Record> read_jsonl(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<Record> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back({no, json::parse(line)});
    } catch (const json::parse_error& e) {
      fail(ErrorKind::kInvalidInput, path + ":" + std::to_string(no) + ": malformed JSON: " + e.what());
    }
    if (!out.back().value.is_object()) {
      fail(ErrorKind::kInvalidInput, path + ":" + std::to_string(no) + ": record is not a JSON object");
    }
  }
  return out;
}

std::string to_jsonl(const std::vector<json>& rows) {
  std::string out;
  for (const auto& r : rows) out += r.dump() + "\n";
  return out;
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorKind::kInvalidInput, std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::kInvalidInput, std::string("key \"") + key + "\" has the wrong type");
  }
}

std::string text_of(const json& j) {
  if (j.contains("text")) return field<std::string>(j, "text");
  if (j.contains("source_text")) return field<std::string>(j, "source_text");
  fail(ErrorKind::kInvalidInput, "missing key \"text\"");
}

void check_unique_ids(const std::vector<Record>& records, const std::string& path) {
  std::set<std::string> seen;
  for (const auto& r : records) {
    if (!r.value.contains("id")) continue;
    const auto id = at_line(path, r.line, [&] { return field<std::string>(r.value, "id"); });
    if (!seen.insert(id).second) {
      fail(ErrorKind::kInvalidInput, path + ":" + std::to_string(r.line) + ": duplicate id '" + id + "'");
    }
  }
}

void write_provenance(const Options& opt, const config::RunConfig& cfg, const std::vector<std::string>& inputs,
                      json extra = json::object()) {
  json in = json::array();
  for (const auto& p : inputs) {
    if (!p.empty()) in.push_back({{"path", p}, {"sha256", sha256_hex(read_file(p))}});
  }
  json record = {{"tool", "editlens"},
                 {"version", kVersion},
                 {"command", opt.command},
                 {"config", config::to_json(cfg)},
                 {"inputs", in}};
  for (auto& [k, v] : extra.items()) record[k] = v;
  write_atomic(opt.output + ".provenance.json", record.dump(2) + "\n");
}

struct EmbedderSet {
  std::unique_ptr<embedding::Embedder> doc;
  std::unique_ptr<embedding::Embedder> phrase;

  labeler::Embedders view() const { return {doc.get(), phrase.get()}; }
};

EmbedderSet make_embedders(const config::RunConfig& cfg) {
  EmbedderSet set;
  if (cfg.metric == simmetrics::MetricKind::kCosineDistance) {
    set.doc = embedding::make_embedder(cfg.doc_embedder);
  } else {
    set.phrase = embedding::make_embedder(cfg.soft_ngrams.phrase_embedder);
  }
  return set;
}

std::vector<labeler::DocumentPair> read_pairs(const std::string& path) {
  const auto records = read_jsonl(path);
  check_unique_ids(records, path);
  std::vector<labeler::DocumentPair> pairs;
  for (const auto& r : records) pairs.push_back(at_line(path, r.line, [&] { return labeler::pair_from_json(r.value); }));
  return pairs;
}

void cmd_score(const Options& opt, const config::RunConfig& cfg) {
  const auto pairs = read_pairs(opt.input);
  const auto spec = cfg.label_spec();
  const auto embedders = make_embedders(cfg);
  std::vector<double> raw(pairs.size());
  kernels::parallel_for(pairs.size(), [&](std::size_t i) {
    raw[i] = labeler::raw_distance(pairs[i], spec, embedders.view());
  });
  std::vector<json> rows;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    rows.push_back({{"id", pairs[i].id},
                    {"metric_kind", simmetrics::metric_name(spec.kind)},
                    {"raw_score", raw[i]},
                    {"similarity", 1.0 - raw[i]},
                    {"target", simmetrics::scale_target(raw[i], spec.scale)}});
  }
  write_atomic(opt.output, to_jsonl(rows));
  write_provenance(opt, cfg, {opt.input});
}

void cmd_label(const Options& opt, const config::RunConfig& cfg) {
  const auto pairs = read_pairs(opt.input);
  const auto spec = cfg.label_spec();
  const auto embedders = make_embedders(cfg);
  const auto splits = labeler::split_by_prompt(pairs, cfg.splits, cfg.seed);
  const auto examples = labeler::label_pairs(pairs, spec, embedders.view(), splits);
  std::vector<json> rows;
  for (const auto& ex : examples) {
    if (auto problem = labeler::check_example(ex, spec)) {
      fail(ErrorKind::kInvalidInput, "label validation failed for '" + ex.id + "': " + *problem);
    }
    rows.push_back(labeler::example_to_json(ex));
  }
  write_atomic(opt.output, to_jsonl(rows));
  write_provenance(opt, cfg, {opt.input});
}

void cmd_perturb(const Options& opt, const config::RunConfig& cfg) {
  std::vector<json> rows;
  if (opt.synthetic > 0) {
    synthetic::CorpusConfig cc;
    cc.n_sources = opt.synthetic;
    cc.seed = cfg.seed;
    for (const auto& cp : synthetic::build_corpus(cc)) {
      json j = labeler::pair_to_json(cp.pair);
      j["group"] = cp.group == synthetic::Group::kGraded ? "graded"
                   : cp.group == synthetic::Group::kFullRewrite ? "full_rewrite"
                                                                 : "mirror";
      j["lambda"] = cp.lambda;
      rows.push_back(std::move(j));
    }
    write_atomic(opt.output, to_jsonl(rows));
    write_provenance(opt, cfg, {}, {{"synthetic", opt.synthetic}});
    return;
  }
  const auto profile = perturb::parse_profile(opt.profile);
  const double lambda = opt.lambda.value_or(0.5);
  require(lambda >= 0.0 && lambda <= 1.0, "--lambda must lie in [0, 1]");
  const auto records = read_jsonl(opt.input);
  check_unique_ids(records, opt.input);
  for (const auto& r : records) {
    at_line(opt.input, r.line, [&] {
      const auto id = field<std::string>(r.value, "id");
      const auto text = text_of(r.value);
      require(!text.empty(), "text is empty");
      const auto result = perturb::apply_edit(text, lambda, hash64(cfg.seed, {"perturb", id}), profile);
      labeler::DocumentPair p;
      p.id = id;
      p.source_text = text;
      p.edited_text = result.edited;
      p.editor = labeler::Editor::kRule;
      if (r.value.contains("domain")) p.domain = field<std::string>(r.value, "domain");
      json j = labeler::pair_to_json(p);
      j["profile"] = perturb::profile_name(profile);
      j["lambda"] = lambda;
      j["trace"] = perturb::trace_to_json(result.trace);
      rows.push_back(std::move(j));
      return 0;
    });
  }
  write_atomic(opt.output, to_jsonl(rows));
  write_provenance(opt, cfg, {opt.input}, {{"profile", opt.profile}, {"lambda", lambda}});
}

std::vector<labeler::LabeledExample> read_examples(const std::string& path) {
  const auto records = read_jsonl(path);
  check_unique_ids(records, path);
  std::vector<labeler::LabeledExample> out;
  for (const auto& r : records) out.push_back(at_line(path, r.line, [&] { return labeler::example_from_json(r.value); }));
  return out;
}

void cmd_train(const Options& opt, const config::RunConfig& cfg) {
  const auto examples = read_examples(opt.input);
  std::vector<labeler::LabeledExample> train_set;
  std::vector<labeler::LabeledExample> val_set;
  for (const auto& ex : examples) {
    if (ex.split == labeler::Split::kTrain) train_set.push_back(ex);
    if (ex.split == labeler::Split::kVal) val_set.push_back(ex);
  }
  if (train_set.empty()) fail(ErrorKind::kInsufficientData, "no examples with split \"train\"");
  const auto spec = cfg.label_spec();
  const auto result = model::train(train_set, val_set, spec.bucket_spec(), cfg.features, cfg.training);
  const auto bytes = model::serialize(result.model);
  write_atomic(opt.output, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  std::vector<json> log;
  for (const auto& e : result.log) {
    json j = {{"epoch", e.epoch}, {"loss", e.loss}};
    if (e.val_macro_f1) j["val_macro_f1"] = *e.val_macro_f1;
    log.push_back(std::move(j));
  }
  write_atomic(opt.output + ".log.jsonl", to_jsonl(log));
  write_provenance(opt, cfg, {opt.input}, {{"n_train", train_set.size()}, {"n_val", val_set.size()}});
}

void cmd_predict(const Options& opt, const config::RunConfig& cfg) {
  const auto m = model::load(opt.model);
  const auto records = read_jsonl(opt.input);
  check_unique_ids(records, opt.input);
  std::vector<std::string> ids;
  std::vector<std::string> texts;
  for (const auto& r : records) {
    at_line(opt.input, r.line, [&] {
      ids.push_back(field<std::string>(r.value, "id"));
      texts.push_back(text_of(r.value));
      require(!texts.back().empty(), "text is empty");
      return 0;
    });
  }
  const auto scores = model::predict_scores(m, texts);
  std::vector<json> rows;
  for (std::size_t i = 0; i < records.size(); ++i) {
    json j = {{"id", ids[i]}, {"score", scores[i]}};
    if (m.head_kind == model::HeadKind::kClassification) {
      const auto probs = model::predict_probs(m, texts[i]);
      j["probs"] = probs;
      j["predicted_bucket"] = simmetrics::decode_argmax(probs);
    }
    for (const char* key : {"ternary", "raw_score", "target", "bucket", "split", "sentinel", "lambda", "group"}) {
      if (records[i].value.contains(key)) j[key] = records[i].value.at(key);
    }
    rows.push_back(std::move(j));
  }
  write_atomic(opt.output, to_jsonl(rows));
  write_provenance(opt, cfg, {opt.input, opt.model});
}

struct ScoredLabel {
  double score = 0.0;
  labeler::Ternary ternary = labeler::Ternary::kHuman;
};

std::vector<ScoredLabel> read_scored_labels(const std::string& path) {
  std::vector<ScoredLabel> out;
  for (const auto& r : read_jsonl(path)) {
    out.push_back(at_line(path, r.line, [&] {
      return ScoredLabel{field<double>(r.value, "score"), labeler::parse_ternary(field<std::string>(r.value, "ternary"))};
    }));
  }
  return out;
}

std::vector<int> binary_labels(const std::vector<ScoredLabel>& rows, calibration::Task task) {
  std::vector<int> labels;
  for (const auto& r : rows) {
    labels.push_back(task == calibration::Task::kHumanVsAnyAi ? (r.ternary != labeler::Ternary::kHuman ? 1 : 0)
                                                               : (r.ternary == labeler::Ternary::kAiGenerated ? 1 : 0));
  }
  return labels;
}

void cmd_calibrate(const Options& opt, const config::RunConfig& cfg) {
  const auto task = calibration::parse_task(opt.task);
  const auto rows = read_scored_labels(opt.input);
  std::vector<double> scores;
  for (const auto& r : rows) scores.push_back(r.score);
  calibration::CalibrationResult result;
  result.task = task;
  result.n_val = rows.size();
  if (task == calibration::Task::kTernary) {
    std::vector<labeler::Ternary> labels;
    for (const auto& r : rows) labels.push_back(r.ternary);
    const auto fit = calibration::calibrate_ternary(scores, labels);
    result.thresholds = {fit.t1, fit.t2};
    result.fit_f1 = {fit.f1_low, fit.f1_high, fit.macro_f1};
  } else {
    const auto fit = calibration::calibrate_binary(scores, binary_labels(rows, task));
    result.thresholds = {fit.threshold};
    result.fit_f1 = {fit.f1};
  }
  write_atomic(opt.output, calibration::to_json(result).dump(2) + "\n");
  write_provenance(opt, cfg, {opt.input});
}

void cmd_evaluate(const Options& opt, const config::RunConfig& cfg) {
  const auto records = read_jsonl(opt.input);
  std::vector<double> scores;
  for (const auto& r : records) scores.push_back(at_line(opt.input, r.line, [&] { return field<double>(r.value, "score"); }));

  eval::EvalReport report;
  report.n = records.size();
  if (!opt.calibration.empty()) {
    json cj;
    try {
      cj = json::parse(read_file(opt.calibration));
    } catch (const json::parse_error& e) {
      fail(ErrorKind::kInvalidInput, opt.calibration + ": malformed JSON: " + e.what());
    }
    const auto calib = calibration::result_from_json(cj);
    const auto rows = read_scored_labels(opt.input);
    std::vector<int> preds;
    std::vector<int> labels;
    std::vector<int> classes;
    report.task = calibration::task_name(calib.task);
    report.thresholds = calib.thresholds;
    if (calib.task == calibration::Task::kTernary) {
      for (const auto& r : rows) {
        preds.push_back(static_cast<int>(calibration::classify_ternary(r.score, calib.thresholds[0], calib.thresholds[1])));
        labels.push_back(static_cast<int>(r.ternary));
      }
      classes = {0, 1, 2};
      for (auto t : labeler::kTernaryClasses) report.class_names.emplace_back(labeler::ternary_name(t));
    } else {
      labels = binary_labels(rows, calib.task);
      for (const auto& r : rows) preds.push_back(r.score >= calib.thresholds[0] ? 1 : 0);
      classes = {0, 1};
      report.class_names = {"negative", "positive"};
    }
    report.confusion = eval::confusion_and_f1(preds, labels, classes);
  }

  std::vector<double> xs;
  std::vector<double> raw;
  std::vector<double> ps;
  std::vector<double> targets;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& j = records[i].value;
    const bool sentinel = j.contains("sentinel") && j.at("sentinel").is_boolean() && j.at("sentinel").get<bool>();
    if (j.contains("raw_score") && !sentinel) {
      xs.push_back(scores[i]);
      raw.push_back(at_line(opt.input, records[i].line, [&] { return field<double>(j, "raw_score"); }));
    }
    if (j.contains("target")) {
      ps.push_back(scores[i]);
      targets.push_back(at_line(opt.input, records[i].line, [&] { return field<double>(j, "target"); }));
    }
  }
  if (xs.size() >= 2) report.pearson = eval::pearson_r(xs, raw);
  if (!ps.empty()) report.mse_value = eval::mse(ps, targets);

  if (!opt.emit_hist.empty()) {
    const auto h = eval::histogram(scores, cfg.histogram.bins, cfg.histogram.lo, cfg.histogram.hi);
    write_atomic(opt.emit_hist, h.to_csv());
  }
  write_atomic(opt.output, eval::report_to_json(report).dump(2) + "\n");
  write_provenance(opt, cfg, {opt.input, opt.calibration});
}

// Agreement input: {"id", "human": ["first" | "second" | "tie" | null, ...],
// "metric_scores": [s1, s2]?}.
void cmd_agreement(const Options& opt, const config::RunConfig& cfg) {
  const auto records = read_jsonl(opt.input);
  require(!records.empty(), "agreement input is empty");
  std::vector<std::vector<std::optional<eval::Choice>>> human;
  std::vector<std::pair<double, double>> metric;
  bool all_metric = true;
  std::size_t raters = 0;
  for (const auto& r : records) {
    at_line(opt.input, r.line, [&] {
      if (!r.value.contains("human") || !r.value.at("human").is_array()) {
        fail(ErrorKind::kInvalidInput, "missing key \"human\" (array of ratings)");
      }
      std::vector<std::optional<eval::Choice>> row;
      for (const auto& v : r.value.at("human")) {
        if (v.is_null()) {
          row.emplace_back();
        } else if (v.is_string()) {
          row.emplace_back(eval::parse_choice(v.get<std::string>()));
        } else {
          fail(ErrorKind::kInvalidInput, "ratings must be strings or null");
        }
      }
      raters = std::max(raters, row.size());
      human.push_back(std::move(row));
      if (r.value.contains("metric_scores")) {
        const auto s = field<std::vector<double>>(r.value, "metric_scores");
        require(s.size() == 2, "metric_scores must hold two scores");
        metric.emplace_back(s[0], s[1]);
      } else {
        all_metric = false;
      }
      return 0;
    });
  }

  auto build = [&](bool ties_abstain, const std::vector<eval::Choice>* metric_choices) {
    eval::RatingsMatrix m(human.size(), raters + (metric_choices ? 1 : 0));
    for (std::size_t u = 0; u < human.size(); ++u) {
      for (std::size_t r = 0; r < human[u].size(); ++r) {
        const auto& c = human[u][r];
        if (c && !(ties_abstain && *c == eval::Choice::kTie)) m.at(u, r) = static_cast<int>(*c);
      }
      if (metric_choices) m.at(u, raters) = static_cast<int>((*metric_choices)[u]);
    }
    return m;
  };
  auto measure = [&](const std::string& name, const eval::RatingsMatrix& m) {
    const double alpha = eval::krippendorff_alpha(m);
    const double se = eval::bootstrap_se(eval::krippendorff_alpha, m, cfg.agreement.bootstrap,
                                         hash64(cfg.seed, {"agreement", name}));
    return json{{"name", name}, {"alpha", alpha}, {"bootstrap_se", se}, {"units", m.units}, {"raters", m.raters}};
  };

  json variants = json::array();
  variants.push_back(measure("humans", build(false, nullptr)));
  variants.push_back(measure("humans_ties_abstain", build(true, nullptr)));
  if (all_metric) {
    const auto strict = eval::metric_as_rater(metric, eval::TieMode::strict());
    variants.push_back(measure("metric_strict_ties_abstain", build(true, &strict)));
    const auto scale = cfg.resolved_scale();
    for (int n : cfg.agreement.bucket_variants) {
      const auto choices = eval::metric_as_rater(metric, eval::TieMode::bucketed({n, scale.tau_low, scale.tau_high}));
      variants.push_back(measure("metric_buckets_" + std::to_string(n), build(false, &choices)));
    }
  }
  const json report = {{"units", human.size()}, {"bootstrap", cfg.agreement.bootstrap}, {"variants", variants}};
  write_atomic(opt.output, report.dump(2) + "\n");
  write_provenance(opt, cfg, {opt.input});
}

void cmd_stats(const Options& opt, const config::RunConfig& cfg) {
  const auto examples = read_examples(opt.input);
  write_atomic(opt.output, labeler::stats_to_json(labeler::dataset_stats(examples)).dump(2) + "\n");
  write_provenance(opt, cfg, {opt.input});
}

void cmd_trajectory(const Options& opt, const config::RunConfig& cfg) {
  const auto m = model::load(opt.model);
  const auto profile = perturb::parse_profile(opt.profile);
  const double lambda = opt.lambda.value_or(0.25);
  require(lambda >= 0.0 && lambda <= 1.0, "--lambda must lie in [0, 1]");
  require(opt.steps >= 1, "--steps must be >= 1");
  const auto records = read_jsonl(opt.input);
  check_unique_ids(records, opt.input);
  require(!records.empty(), "trajectory input is empty");

  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> texts;  // texts[d][k]
  for (const auto& r : records) {
    at_line(opt.input, r.line, [&] {
      const auto id = field<std::string>(r.value, "id");
      const auto text = text_of(r.value);
      require(!text.empty(), "text is empty");
      std::vector<double> lambdas(opt.steps, lambda);
      std::vector<std::uint64_t> seeds;
      for (std::size_t k = 0; k < opt.steps; ++k) seeds.push_back(hash64(cfg.seed, {"trajectory", id, std::to_string(k)}));
      std::vector<perturb::Profile> profiles(opt.steps, profile);
      std::vector<std::string> chain = {text};
      for (const auto& step : perturb::apply_edit_sequence(text, opt.steps, lambdas, seeds, profiles)) {
        chain.push_back(step.edited);
      }
      ids.push_back(id);
      texts.push_back(std::move(chain));
      return 0;
    });
  }
  std::vector<std::vector<double>> by_step(opt.steps + 1);
  for (std::size_t k = 0; k <= opt.steps; ++k) {
    std::vector<std::string> step_texts;
    for (const auto& chain : texts) step_texts.push_back(chain[k]);
    by_step[k] = model::predict_scores(m, step_texts);
  }
  json steps = json::array();
  for (const auto& s : eval::trajectory_summary(by_step)) {
    json j = {{"step", s.step}, {"mean", s.mean}, {"sd", s.sd}};
    if (s.diff_from_previous) {
      j["mean_diff"] = s.diff_from_previous->mean_diff;
      j["sd_diff"] = s.diff_from_previous->sd;
      j["frac_decreased"] = s.diff_from_previous->frac_decreased;
    }
    steps.push_back(std::move(j));
  }
  json docs = json::array();
  for (std::size_t d = 0; d < ids.size(); ++d) {
    json scores = json::array();
    for (std::size_t k = 0; k <= opt.steps; ++k) scores.push_back(by_step[k][d]);
    docs.push_back({{"id", ids[d]}, {"scores", scores}});
  }
  const json report = {{"profile", opt.profile}, {"lambda", lambda}, {"steps", steps}, {"documents", docs}};
  write_atomic(opt.output, report.dump(2) + "\n");
  write_provenance(opt, cfg, {opt.input, opt.model});
}

config::RunConfig resolve_config(const Options& opt) {
  config::RunConfig cfg = opt.config_path.empty() ? config::from_json(json::object()) : config::load(opt.config_path);
  if (opt.metric) {
    cfg.metric = simmetrics::parse_metric(*opt.metric);
  }
  if (opt.seed) cfg.set_seed(*opt.seed);
  cfg.validate();
  return cfg;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
    case ErrorKind::kCacheCorrupt:
    case ErrorKind::kCacheConflict:
    case ErrorKind::kWrongHead:
      return kExitInput;
    case ErrorKind::kProviderUnavailable:
    case ErrorKind::kProviderContractViolation:
      return kExitProvider;
    case ErrorKind::kInsufficientPrompts:
    case ErrorKind::kTrainingDiverged:
    case ErrorKind::kDegenerateLabels:
    case ErrorKind::kDegenerateInput:
    case ErrorKind::kDegenerateData:
    case ErrorKind::kInsufficientData:
    case ErrorKind::kUnstableStatistic:
      return kExitDegenerate;
  }
  return kExitInput;
}

void write_atomic(const fs::path& path, std::string_view content) {
  const fs::path tmp = path.string() + ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::kInvalidInput, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      fail(ErrorKind::kInvalidInput, "failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::kInvalidInput, "cannot move output into place at " + path.string());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"editlens: edit-magnitude metrics, labeling, training and evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options opt;

  struct Spec {
    const char* name;
    const char* help;
    bool needs_input;
    bool needs_model;
  };
  const Spec specs[] = {
      {"score", "compute the raw similarity metric of each pair", true, false},
      {"label", "turn pairs into labeled examples", true, false},
      {"perturb", "apply rule-based edits, or build a synthetic corpus", false, false},
      {"train", "train the baseline scorer on labeled examples", true, false},
      {"predict", "score texts with a trained model", true, true},
      {"calibrate", "fit decision thresholds on scored validation records", true, false},
      {"evaluate", "classification, correlation and histogram statistics", true, false},
      {"agreement", "Krippendorff's alpha with the metric as an extra rater", true, false},
      {"stats", "word-count statistics of a labeled dataset", true, false},
      {"trajectory", "score texts across repeated edit passes", true, true},
  };
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", opt.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    auto* in = sub->add_option("--input", opt.input, "input file");
    if (s.needs_input) in->required()->check(CLI::ExistingFile);
    sub->add_option("--output", opt.output, "output file")->required();
    sub->add_option("--seed", opt.seed, "overrides every seed in the configuration");
    sub->add_option("--metric", opt.metric, "cosine | soft-ngrams")
        ->check(CLI::IsMember({"cosine", "cosine_distance", "soft-ngrams", "soft_ngrams"}));
    auto* model = sub->add_option("--model", opt.model, "model file");
    if (s.needs_model) model->required()->check(CLI::ExistingFile);
    const std::string name = s.name;
    if (name == "perturb" || name == "trajectory") {
      sub->add_option("--profile", opt.profile, "proofread | paraphrase | restructure | rewrite")
          ->check(CLI::IsMember({"proofread", "paraphrase", "restructure", "rewrite"}));
      sub->add_option("--lambda", opt.lambda, "edit strength in [0, 1]");
    }
    if (name == "perturb") sub->add_option("--synthetic", opt.synthetic, "build a synthetic corpus of N sources");
    if (name == "trajectory") sub->add_option("--steps", opt.steps, "number of sequential edit passes");
    if (name == "calibrate") {
      sub->add_option("--task", opt.task, "human_vs_any_ai | fullyai_vs_rest | ternary")
          ->check(CLI::IsMember({"human_vs_any_ai", "fullyai_vs_rest", "ternary"}));
    }
    if (name == "evaluate") {
      sub->add_option("--calibration", opt.calibration, "thresholds from `calibrate`")->check(CLI::ExistingFile);
      sub->add_option("--emit-hist", opt.emit_hist, "write a score histogram CSV");
    }
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  opt.command = app.get_subcommands().front()->get_name();

  try {
    if (opt.command == "perturb" && opt.synthetic == 0 && opt.input.empty()) {
      throw UsageError("perturb needs --input or --synthetic N");
    }
    if (opt.command == "perturb" && !opt.input.empty() && !fs::exists(opt.input)) {
      throw UsageError("--input: file does not exist: " + opt.input);
    }
    const auto cfg = resolve_config(opt);
    if (opt.command == "score") cmd_score(opt, cfg);
    if (opt.command == "label") cmd_label(opt, cfg);
    if (opt.command == "perturb") cmd_perturb(opt, cfg);
    if (opt.command == "train") cmd_train(opt, cfg);
    if (opt.command == "predict") cmd_predict(opt, cfg);
    if (opt.command == "calibrate") cmd_calibrate(opt, cfg);
    if (opt.command == "evaluate") cmd_evaluate(opt, cfg);
    if (opt.command == "agreement") cmd_agreement(opt, cfg);
    if (opt.command == "stats") cmd_stats(opt, cfg);
    if (opt.command == "trajectory") cmd_trajectory(opt, cfg);
  } catch (const UsageError& e) {
    err << "editlens " << opt.command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "editlens " << opt.command << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "editlens " << opt.command << ": " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace editlens::cli
