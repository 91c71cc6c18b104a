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

#include "editlens/baseline_model.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numeric>

#include "editlens/error.hpp"
#include "editlens/evalmetrics.hpp"
#include "editlens/hashing.hpp"
#include "editlens/random.hpp"
#include "editlens/segmentation.hpp"

namespace editlens::model {

namespace {

constexpr std::array<Family, 5> kFamilies = {Family::kWordUnigram, Family::kWordBigram, Family::kChar3,
                                             Family::kChar4, Family::kChar5};
constexpr std::uint32_t kAllFamilies = 0x1f;

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

// logits[k] = bias[k] + sum_j weights[k * dim + j] * x[j]
std::vector<double> head_logits(const LinearHead& head, std::size_t n_out, std::size_t dim,
                                const kernels::SparseVector& x) {
  std::vector<double> z(head.bias.begin(), head.bias.end());
  for (std::size_t k = 0; k < n_out; ++k) {
    const double* row = head.weights.data() + k * dim;
    for (std::size_t t = 0; t < x.nnz(); ++t) z[k] += row[x.indices[t]] * x.values[t];
  }
  return z;
}

// Numerically careful log-sum-exp: the largest term contributes exactly 1
// inside log1p so losses near zero keep full relative precision.
double log_sum_exp(std::span<const double> z) {
  const auto top = static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin());
  double rest = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (k != top) rest += std::exp(z[k] - z[top]);
  }
  return z[top] + std::log1p(rest);
}

std::vector<double> softmax(std::span<const double> z) {
  const double m = *std::max_element(z.begin(), z.end());
  std::vector<double> p(z.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) sum += (p[k] = std::exp(z[k] - m));
  for (double& v : p) v /= sum;
  return p;
}

double decode(const ModelParams& model, std::span<const double> z) {
  if (model.head_kind == HeadKind::kRegression) return std::clamp(z[0], 0.0, 1.0);
  const auto probs = softmax(z);
  return simmetrics::normalize_score(simmetrics::decode_weighted(probs, model.bucket_spec), model.bucket_spec);
}

void check_features(const ModelParams& model) {
  require(model.feature_spec.dim == model.dim, "model dimension does not match its feature spec");
}

// Per-row contribution to the batch loss and the logit-space gradient
// coefficients of both heads. `n_rows` and `n_aux` are the normalizers of the
// edit and aux means.
struct RowTerms {
  double loss = 0.0;
  std::vector<double> edit;
  std::vector<double> aux;
};

RowTerms row_terms(const ModelParams& model, const TrainRow& row, double n_rows, double n_aux) {
  RowTerms out;
  const auto z = head_logits(model.edit, model.n_outputs, model.dim, row.x);
  if (model.head_kind == HeadKind::kClassification) {
    const double t = row.target;
    require(std::isfinite(t) && t >= 0.0 && t < static_cast<double>(model.n_outputs) && t == std::floor(t),
            "classification target " + std::to_string(t) + " is not a bucket index");
    const auto y = static_cast<std::size_t>(t);
    out.loss = (log_sum_exp(z) - z[y]) / n_rows;
    out.edit = softmax(z);
    out.edit[y] -= 1.0;
    for (double& c : out.edit) c /= n_rows;
  } else {
    require(std::isfinite(row.target) && row.target >= 0.0 && row.target <= 1.0,
            "regression target " + std::to_string(row.target) + " is outside [0, 1]");
    const double r = z[0] - row.target;
    out.loss = r * r / n_rows;
    out.edit = {2.0 * r / n_rows};
  }
  if (model.aux && row.category) {
    const int c = *row.category;
    require(c >= 0 && c < static_cast<int>(kAuxClasses), "prompt category index out of range");
    const auto za = head_logits(*model.aux, kAuxClasses, model.dim, row.x);
    const double scale = model.aux_weight / n_aux;
    out.loss += scale * (log_sum_exp(za) - za[static_cast<std::size_t>(c)]);
    out.aux = softmax(za);
    out.aux[static_cast<std::size_t>(c)] -= 1.0;
    for (double& v : out.aux) v *= scale;
  }
  return out;
}

std::size_t count_aux(const ModelParams& model, std::span<const TrainRow> rows) {
  if (!model.aux) return 0;
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const TrainRow& r) { return r.category.has_value(); }));
}

void scatter(std::vector<double>& weights, std::vector<double>& bias, std::span<const double> coefs,
             std::size_t dim, const kernels::SparseVector& x, double step) {
  for (std::size_t k = 0; k < coefs.size(); ++k) {
    const double c = coefs[k] * step;
    if (c == 0.0) continue;
    bias[k] += c;
    double* row = weights.data() + k * dim;
    for (std::size_t t = 0; t < x.nnz(); ++t) row[x.indices[t]] += c * x.values[t];
  }
}

void check_finite(std::span<const double> values, const char* what) {
  for (double v : values) require(std::isfinite(v), std::string(what) + " contains a non-finite value");
}

// Little-endian writer and reader for the model container.
class Writer {
 public:
  void bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void f64s(std::span<const double> vs) {
    for (double v : vs) f64(v);
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) fail(ErrorKind::kInvalidInput, "model file is truncated");
  }
  std::string bytes(std::size_t n) {
    need(n);
    std::string s(in_.begin() + static_cast<std::ptrdiff_t>(pos_), in_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return s;
  }
  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::vector<double> f64s(std::size_t n) {
    need(n * 8);
    std::vector<double> vs(n);
    for (double& v : vs) v = f64();
    return vs;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

constexpr std::string_view kMagic = "EDLNMODL";
constexpr std::uint32_t kFormatVersion = 1;

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kWordUnigram: return "word_unigram";
    case Family::kWordBigram: return "word_bigram";
    case Family::kChar3: return "char_3gram";
    case Family::kChar4: return "char_4gram";
    case Family::kChar5: return "char_5gram";
  }
  return "word_unigram";
}

Family parse_family(std::string_view name) {
  for (Family f : kFamilies) {
    if (family_name(f) == name) return f;
  }
  fail(ErrorKind::kInvalidInput, "unknown feature family '" + std::string(name) + "'");
}

void FeatureSpec::validate() const {
  require(dim >= 1024 && std::has_single_bit(dim), "feature dim must be a power of two >= 1024");
  require(dim <= (std::uint64_t{1} << 31), "feature dim must not exceed 2^31");
  require(families != 0 && (families & ~kAllFamilies) == 0, "at least one known feature family must be enabled");
}

kernels::SparseVector featurize(std::string_view text, const FeatureSpec& spec) {
  spec.validate();
  if (is_blank(text)) fail(ErrorKind::kInvalidInput, "cannot featurize blank text");
  auto words = segmentation::tokenize_words(text);
  if (words.empty()) words.emplace_back(trim(text));

  const std::uint64_t mask = spec.dim - 1;
  std::vector<std::uint32_t> bins;
  auto add = [&](std::string_view tag, std::string_view gram) {
    bins.push_back(static_cast<std::uint32_t>(hash64(spec.hash_seed, {tag, gram}) & mask));
  };
  if (spec.has(Family::kWordUnigram)) {
    for (const auto& w : words) add("w1", w);
  }
  if (spec.has(Family::kWordBigram)) {
    for (std::size_t i = 0; i + 1 < words.size(); ++i) add("w2", words[i] + ' ' + words[i + 1]);
  }
  if (spec.has(Family::kChar3) || spec.has(Family::kChar4) || spec.has(Family::kChar5)) {
    std::string joined = " ";
    for (const auto& w : words) joined += w + ' ';
    const std::string_view s = joined;
    for (Family f : {Family::kChar3, Family::kChar4, Family::kChar5}) {
      if (!spec.has(f)) continue;
      const std::size_t n = f == Family::kChar3 ? 3 : f == Family::kChar4 ? 4 : 5;
      for (std::size_t i = 0; i + n <= s.size(); ++i) add(family_name(f), s.substr(i, n));
    }
  }

  std::sort(bins.begin(), bins.end());
  kernels::SparseVector out;
  for (std::size_t i = 0; i < bins.size();) {
    std::size_t j = i;
    while (j < bins.size() && bins[j] == bins[i]) ++j;
    out.indices.push_back(bins[i]);
    out.values.push_back(static_cast<double>(j - i));
    i = j;
  }
  double sq = 0.0;
  for (double v : out.values) sq += v * v;
  const double norm = std::sqrt(sq);
  for (double& v : out.values) v /= norm;
  return out;
}

ModelParams ModelParams::zeros_raw(HeadKind head, std::size_t n_outputs, std::size_t dim, double aux_weight) {
  require(dim >= 1, "model dim must be positive");
  require(n_outputs >= 1, "model needs at least one output");
  require(std::isfinite(aux_weight) && aux_weight >= 0.0, "aux_weight must be finite and >= 0");
  ModelParams m;
  m.head_kind = head;
  m.n_outputs = head == HeadKind::kRegression ? 1 : n_outputs;
  m.dim = dim;
  m.edit.weights.assign(m.n_outputs * dim, 0.0);
  m.edit.bias.assign(m.n_outputs, 0.0);
  m.aux_weight = aux_weight;
  if (aux_weight > 0.0) m.aux = LinearHead{std::vector<double>(kAuxClasses * dim, 0.0), std::vector<double>(kAuxClasses, 0.0)};
  return m;
}

ModelParams ModelParams::zeros(HeadKind head, const simmetrics::BucketSpec& buckets, const FeatureSpec& features,
                               double aux_weight) {
  buckets.validate();
  features.validate();
  ModelParams m = zeros_raw(head, static_cast<std::size_t>(buckets.n), features.dim, aux_weight);
  m.bucket_spec = buckets;
  m.feature_spec = features;
  return m;
}

void ModelParams::validate() const {
  bucket_spec.validate();
  require(dim >= 1, "model dim must be positive");
  if (head_kind == HeadKind::kRegression) {
    require(n_outputs == 1, "regression head must have exactly one output");
  } else {
    require(n_outputs == static_cast<std::size_t>(bucket_spec.n), "classification outputs must equal the bucket count");
  }
  require(edit.weights.size() == n_outputs * dim && edit.bias.size() == n_outputs, "edit head has the wrong shape");
  check_finite(edit.weights, "edit weights");
  check_finite(edit.bias, "edit bias");
  require(std::isfinite(aux_weight) && aux_weight >= 0.0, "aux_weight must be finite and >= 0");
  require(aux.has_value() == (aux_weight > 0.0), "aux head must be present exactly when aux_weight > 0");
  if (aux) {
    require(aux->weights.size() == kAuxClasses * dim && aux->bias.size() == kAuxClasses, "aux head has the wrong shape");
    check_finite(aux->weights, "aux weights");
    check_finite(aux->bias, "aux bias");
  }
}

std::vector<TrainRow> make_rows(std::span<const labeler::LabeledExample> examples, const ModelParams& model) {
  check_features(model);
  std::vector<TrainRow> rows(examples.size());
  kernels::parallel_for(examples.size(), [&](std::size_t i) {
    const auto& ex = examples[i];
    rows[i].x = featurize(ex.text, model.feature_spec);
    rows[i].target = model.head_kind == HeadKind::kClassification ? static_cast<double>(ex.bucket) : ex.target;
    if (ex.prompt_category) rows[i].category = labeler::category_index(*ex.prompt_category);
  });
  return rows;
}

std::vector<double> predict_probs(const ModelParams& model, const kernels::SparseVector& x) {
  if (model.head_kind != HeadKind::kClassification) fail(ErrorKind::kWrongHead, "predict_probs needs a classification head");
  return softmax(head_logits(model.edit, model.n_outputs, model.dim, x));
}

std::vector<double> predict_probs(const ModelParams& model, std::string_view text) {
  if (model.head_kind != HeadKind::kClassification) fail(ErrorKind::kWrongHead, "predict_probs needs a classification head");
  check_features(model);
  return predict_probs(model, featurize(text, model.feature_spec));
}

double predict_score(const ModelParams& model, const kernels::SparseVector& x) {
  return decode(model, head_logits(model.edit, model.n_outputs, model.dim, x));
}

double predict_score(const ModelParams& model, std::string_view text) {
  check_features(model);
  return predict_score(model, featurize(text, model.feature_spec));
}

std::vector<double> predict_scores(const ModelParams& model, std::span<const std::string> texts) {
  check_features(model);
  std::vector<kernels::SparseVector> rows(texts.size());
  kernels::parallel_for(texts.size(), [&](std::size_t i) { rows[i] = featurize(texts[i], model.feature_spec); });
  const auto logits = kernels::linear_logits(rows, model.edit.weights, model.edit.bias, model.n_outputs, model.dim);
  std::vector<double> scores(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    scores[i] = decode(model, std::span<const double>(logits).subspan(i * model.n_outputs, model.n_outputs));
  }
  return scores;
}

std::vector<double> predict_category_probs(const ModelParams& model, std::string_view text) {
  if (!model.aux) fail(ErrorKind::kWrongHead, "model has no prompt-category head");
  check_features(model);
  return softmax(head_logits(*model.aux, kAuxClasses, model.dim, featurize(text, model.feature_spec)));
}

LossAndGrad loss_and_grad(const ModelParams& model, std::span<const TrainRow> batch) {
  require(!batch.empty(), "loss_and_grad needs a non-empty batch");
  LossAndGrad out;
  out.grad.edit = LinearHead{std::vector<double>(model.edit.weights.size(), 0.0), std::vector<double>(model.n_outputs, 0.0)};
  if (model.aux) {
    out.grad.aux = LinearHead{std::vector<double>(model.aux->weights.size(), 0.0), std::vector<double>(kAuxClasses, 0.0)};
  }
  const double n_rows = static_cast<double>(batch.size());
  const double n_aux = static_cast<double>(std::max<std::size_t>(count_aux(model, batch), 1));
  for (const auto& row : batch) {
    const auto terms = row_terms(model, row, n_rows, n_aux);
    out.loss += terms.loss;
    scatter(out.grad.edit.weights, out.grad.edit.bias, terms.edit, model.dim, row.x, 1.0);
    if (!terms.aux.empty()) scatter(out.grad.aux->weights, out.grad.aux->bias, terms.aux, model.dim, row.x, 1.0);
  }
  return out;
}

LossAndGrad loss_and_grad(const ModelParams& model, std::span<const labeler::LabeledExample> batch) {
  const auto rows = make_rows(batch, model);
  return loss_and_grad(model, rows);
}

double loss(const ModelParams& model, std::span<const TrainRow> rows) {
  require(!rows.empty(), "loss needs at least one row");
  const double n_rows = static_cast<double>(rows.size());
  const double n_aux = static_cast<double>(std::max<std::size_t>(count_aux(model, rows), 1));
  std::vector<double> per_row(rows.size());
  kernels::parallel_for(rows.size(), [&](std::size_t i) { per_row[i] = row_terms(model, rows[i], n_rows, n_aux).loss; });
  return std::accumulate(per_row.begin(), per_row.end(), 0.0);
}

void TrainConfig::validate() const {
  require(std::isfinite(lr) && lr >= 0.0, "learning rate must be finite and >= 0");
  require(epochs >= 1, "epochs must be >= 1");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(std::isfinite(aux_weight) && aux_weight >= 0.0, "aux_weight must be finite and >= 0");
}

TrainResult train_rows(std::span<const TrainRow> rows, ModelParams initial, const TrainConfig& config,
                       const std::function<std::optional<double>(const ModelParams&)>& validate_epoch) {
  config.validate();
  require(!rows.empty(), "training set is empty");
  TrainResult result;
  result.model = std::move(initial);
  ModelParams& m = result.model;

  std::vector<std::size_t> order(rows.size());
  for (std::size_t e = 1; e <= config.epochs; ++e) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(hash64(config.seed, {"epoch", std::to_string(e)}));
    rng.shuffle(std::span<std::size_t>(order));

    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      std::size_t n_aux = 0;
      if (m.aux) {
        for (std::size_t i = start; i < end; ++i) n_aux += rows[order[i]].category ? 1 : 0;
      }
      const double n_rows = static_cast<double>(end - start);
      std::vector<RowTerms> terms;
      terms.reserve(end - start);
      for (std::size_t i = start; i < end; ++i) {
        terms.push_back(row_terms(m, rows[order[i]], n_rows, static_cast<double>(std::max<std::size_t>(n_aux, 1))));
      }
      for (std::size_t i = start; i < end; ++i) {
        const auto& t = terms[i - start];
        const auto& x = rows[order[i]].x;
        scatter(m.edit.weights, m.edit.bias, t.edit, m.dim, x, -config.lr);
        if (!t.aux.empty()) scatter(m.aux->weights, m.aux->bias, t.aux, m.dim, x, -config.lr);
      }
    }

    EpochLog entry;
    entry.epoch = e;
    entry.loss = loss(m, rows);
    if (!std::isfinite(entry.loss)) {
      fail(ErrorKind::kTrainingDiverged, "training loss became non-finite at epoch " + std::to_string(e));
    }
    if (validate_epoch) entry.val_macro_f1 = validate_epoch(m);
    result.log.push_back(entry);
  }
  return result;
}

int score_bucket(double score, const simmetrics::BucketSpec& spec) {
  return simmetrics::bucket_of(spec.tau_min + score * (spec.tau_max - spec.tau_min), spec);
}

TrainResult train(std::span<const labeler::LabeledExample> train_set,
                  std::span<const labeler::LabeledExample> validation, const simmetrics::BucketSpec& buckets,
                  const FeatureSpec& features, const TrainConfig& config) {
  config.validate();
  require(!train_set.empty(), "training set is empty");
  ModelParams initial = ModelParams::zeros(config.head, buckets, features, config.aux_weight);
  const auto rows = make_rows(train_set, initial);
  std::vector<TrainRow> val_rows;
  if (!validation.empty()) val_rows = make_rows(validation, initial);

  std::function<std::optional<double>(const ModelParams&)> on_epoch;
  if (!val_rows.empty()) {
    on_epoch = [&](const ModelParams& m) -> std::optional<double> {
      std::vector<int> preds(val_rows.size());
      std::vector<int> labels(val_rows.size());
      for (std::size_t i = 0; i < val_rows.size(); ++i) {
        if (m.head_kind == HeadKind::kClassification) {
          preds[i] = static_cast<int>(simmetrics::decode_argmax(predict_probs(m, val_rows[i].x)));
        } else {
          preds[i] = score_bucket(predict_score(m, val_rows[i].x), m.bucket_spec);
        }
        labels[i] = validation[i].bucket;
      }
      std::vector<int> classes(static_cast<std::size_t>(m.bucket_spec.n));
      std::iota(classes.begin(), classes.end(), 0);
      return eval::confusion_and_f1(preds, labels, classes).macro_f1;
    };
  }
  return train_rows(rows, std::move(initial), config, on_epoch);
}

std::vector<std::uint8_t> serialize(const ModelParams& model) {
  model.validate();
  Writer w;
  w.bytes(kMagic);
  w.u32(kFormatVersion);
  w.u32(static_cast<std::uint32_t>(model.head_kind));
  w.u64(model.n_outputs);
  w.u64(model.dim);
  w.u32(static_cast<std::uint32_t>(model.bucket_spec.n));
  w.f64(model.bucket_spec.tau_min);
  w.f64(model.bucket_spec.tau_max);
  w.u64(model.feature_spec.dim);
  w.u32(model.feature_spec.families);
  w.u64(model.feature_spec.hash_seed);
  w.u8(model.aux ? 1 : 0);
  w.f64(model.aux_weight);
  w.f64s(model.edit.weights);
  w.f64s(model.edit.bias);
  if (model.aux) {
    w.f64s(model.aux->weights);
    w.f64s(model.aux->bias);
  }
  return w.take();
}

ModelParams deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  if (r.bytes(kMagic.size()) != kMagic) fail(ErrorKind::kInvalidInput, "not an editlens model file");
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion) {
    fail(ErrorKind::kInvalidInput, "unsupported model format version " + std::to_string(version));
  }
  ModelParams m;
  const std::uint32_t head = r.u32();
  require(head <= 1, "unknown head kind in model file");
  m.head_kind = static_cast<HeadKind>(head);
  m.n_outputs = r.u64();
  m.dim = r.u64();
  m.bucket_spec.n = static_cast<int>(r.u32());
  m.bucket_spec.tau_min = r.f64();
  m.bucket_spec.tau_max = r.f64();
  m.feature_spec.dim = r.u64();
  m.feature_spec.families = r.u32();
  m.feature_spec.hash_seed = r.u64();
  const bool has_aux = r.u8() != 0;
  m.aux_weight = r.f64();
  require(m.n_outputs >= 1 && m.n_outputs <= 1024 && m.dim >= 1 && m.dim <= (std::uint64_t{1} << 31),
          "model file header has implausible dimensions");
  m.edit.weights = r.f64s(m.n_outputs * m.dim);
  m.edit.bias = r.f64s(m.n_outputs);
  if (has_aux) {
    LinearHead aux;
    aux.weights = r.f64s(kAuxClasses * m.dim);
    aux.bias = r.f64s(kAuxClasses);
    m.aux = std::move(aux);
  }
  require(r.done(), "model file has trailing bytes");
  m.validate();
  return m;
}

void save(const ModelParams& model, const std::filesystem::path& path) {
  const auto bytes = serialize(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kInvalidInput, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::kInvalidInput, "failed writing " + path.string());
}

ModelParams load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kInvalidInput, "cannot open model file " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace editlens::model
