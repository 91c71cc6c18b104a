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

#include "editlens/evalmetrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "editlens/error.hpp"
#include "editlens/hashing.hpp"
#include "editlens/kernels.hpp"
#include "editlens/random.hpp"

namespace editlens::eval {

namespace {

double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  // Deviations are accumulated relative to the first value.
  const double shift = xs.front();
  double sum = 0.0;
  for (double x : xs) sum += x - shift;
  const double m = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - shift - m) * (x - shift - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// Shortest text that reads back as the same double.
std::string format_edge(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

// 2PR / (P + R) rewritten over counts: one correctly rounded division.
double f1_binary(std::size_t tp, std::size_t fp, std::size_t fn) {
  if (tp == 0) return 0.0;
  return static_cast<double>(2 * tp) / static_cast<double>(2 * tp + fp + fn);
}

ConfusionReport confusion_and_f1(std::span<const int> preds, std::span<const int> labels,
                                 std::span<const int> classes) {
  require(preds.size() == labels.size(), "predictions and labels differ in length");
  require(!classes.empty(), "class set is empty");
  std::map<int, std::size_t> pos;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    require(pos.emplace(classes[i], i).second, "class set has duplicates");
  }
  const std::size_t k = classes.size();
  ConfusionReport rep;
  rep.classes.assign(classes.begin(), classes.end());
  rep.matrix.assign(k, std::vector<std::size_t>(k, 0));
  rep.n = preds.size();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const auto p = pos.find(preds[i]);
    const auto l = pos.find(labels[i]);
    require(p != pos.end() && l != pos.end(), "value at position " + std::to_string(i) + " is not in the class set");
    ++rep.matrix[l->second][p->second];
    if (p->second == l->second) ++correct;
  }
  rep.accuracy = rep.n == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(rep.n);
  double sum = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t predicted = 0;
    std::size_t actual = 0;
    for (std::size_t o = 0; o < k; ++o) {
      predicted += rep.matrix[o][c];
      actual += rep.matrix[c][o];
    }
    const std::size_t tp = rep.matrix[c][c];
    rep.precision.push_back(predicted == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(predicted));
    rep.recall.push_back(actual == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(actual));
    rep.per_class_f1.push_back(f1_binary(tp, predicted - tp, actual - tp));
    sum += rep.per_class_f1.back();
  }
  rep.macro_f1 = sum / static_cast<double>(k);
  return rep;
}

double pearson_r(std::span<const double> xs, std::span<const double> ys) {
  require(xs.size() == ys.size(), "pearson_r: sequences differ in length");
  require(xs.size() >= 2, "pearson_r needs at least two points");
  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) fail(ErrorKind::kDegenerateInput, "pearson_r: a sequence is constant");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double mse(std::span<const double> preds, std::span<const double> targets) {
  require(preds.size() == targets.size(), "mse: sequences differ in length");
  require(!preds.empty(), "mse: empty input");
  double s = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) s += (preds[i] - targets[i]) * (preds[i] - targets[i]);
  return s / static_cast<double>(preds.size());
}

RatingsMatrix RatingsMatrix::select_units(std::span<const std::size_t> rows) const {
  RatingsMatrix out(rows.size(), raters);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t r = 0; r < raters; ++r) out.at(i, r) = at(rows[i], r);
  }
  return out;
}

double krippendorff_alpha(const RatingsMatrix& ratings) {
  require(ratings.values.size() == ratings.units * ratings.raters, "ratings matrix has the wrong size");
  std::map<std::pair<int, int>, double> o;
  double n = 0.0;
  std::vector<int> vals;
  for (std::size_t u = 0; u < ratings.units; ++u) {
    vals.clear();
    for (std::size_t r = 0; r < ratings.raters; ++r) {
      if (const auto& v = ratings.at(u, r)) vals.push_back(*v);
    }
    const std::size_t m = vals.size();
    if (m < 2) continue;
    std::map<int, double> counts;
    for (int v : vals) counts[v] += 1.0;
    const double w = 1.0 / static_cast<double>(m - 1);
    for (const auto& [c, nc] : counts) {
      for (const auto& [k, nk] : counts) o[{c, k}] += (c == k ? nc * (nc - 1.0) : nc * nk) * w;
    }
    n += static_cast<double>(m);
  }
  if (n == 0.0) fail(ErrorKind::kInsufficientData, "no unit has two or more ratings");
  std::map<int, double> marg;
  double observed = 0.0;
  for (const auto& [ck, v] : o) {
    marg[ck.first] += v;
    if (ck.first != ck.second) observed += v;
  }
  double expected = 0.0;
  for (const auto& [c, nc] : marg) {
    for (const auto& [k, nk] : marg) {
      if (c != k) expected += nc * nk;
    }
  }
  if (expected == 0.0) fail(ErrorKind::kDegenerateData, "all pairable ratings share one value");
  // 1 - D_o / D_e with D_o = observed / n and D_e = expected / (n (n - 1)).
  return 1.0 - (n - 1.0) * observed / expected;
}

std::string_view choice_name(Choice c) {
  switch (c) {
    case Choice::kFirst: return "first";
    case Choice::kSecond: return "second";
    case Choice::kTie: return "tie";
  }
  return "tie";
}

Choice parse_choice(std::string_view name) {
  for (Choice c : {Choice::kFirst, Choice::kSecond, Choice::kTie}) {
    if (choice_name(c) == name) return c;
  }
  fail(ErrorKind::kInvalidInput, "unknown choice '" + std::string(name) + "'");
}

std::vector<Choice> metric_as_rater(std::span<const std::pair<double, double>> pair_scores, const TieMode& mode) {
  if (mode.buckets) mode.buckets->validate();
  std::vector<Choice> out;
  out.reserve(pair_scores.size());
  for (const auto& [s1, s2] : pair_scores) {
    double a = s1;
    double b = s2;
    if (mode.buckets) {
      a = simmetrics::bucket_of(s1, *mode.buckets);
      b = simmetrics::bucket_of(s2, *mode.buckets);
    }
    out.push_back(a > b ? Choice::kFirst : b > a ? Choice::kSecond : Choice::kTie);
  }
  return out;
}

double bootstrap_se(const RatingsStatistic& statistic, const RatingsMatrix& ratings, std::size_t b,
                    std::uint64_t seed) {
  require(b >= 2, "bootstrap needs at least two resamples");
  require(ratings.units >= 1, "bootstrap needs at least one unit");
  std::vector<double> stats(b, 0.0);
  std::vector<char> ok(b, 0);
  kernels::parallel_for(b, [&](std::size_t i) {
    Rng rng(hash64(seed, {"bootstrap", std::to_string(i)}));
    std::vector<std::size_t> rows(ratings.units);
    for (auto& r : rows) r = static_cast<std::size_t>(rng.below(ratings.units));
    try {
      stats[i] = statistic(ratings.select_units(rows));
      ok[i] = std::isfinite(stats[i]) ? 1 : 0;
    } catch (const Error&) {
      ok[i] = 0;
    }
  });
  std::vector<double> good;
  for (std::size_t i = 0; i < b; ++i) {
    if (ok[i]) good.push_back(stats[i]);
  }
  if (2 * (b - good.size()) > b || good.size() < 2) {
    fail(ErrorKind::kUnstableStatistic, "statistic failed on " + std::to_string(b - good.size()) + " of " +
                                            std::to_string(b) + " resamples");
  }
  return sample_sd(good);
}

PairedDiff paired_mean_diff(std::span<const double> before, std::span<const double> after) {
  require(before.size() == after.size(), "paired_mean_diff: sequences differ in length");
  require(!before.empty(), "paired_mean_diff: empty input");
  std::vector<double> d(before.size());
  std::size_t decreased = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = after[i] - before[i];
    if (after[i] < before[i]) ++decreased;
  }
  PairedDiff out;
  out.n = d.size();
  out.mean_diff = mean_of(d);
  out.sd = sample_sd(d);
  out.frac_decreased = static_cast<double>(decreased) / static_cast<double>(d.size());
  return out;
}

std::size_t Histogram::total() const {
  std::size_t t = underflow + overflow;
  for (const auto& bin : bins) t += bin.count;
  return t;
}

std::string Histogram::to_csv() const {
  std::string out = "bin_lo,bin_hi,count\n";
  if (underflow > 0) out += "-inf," + format_edge(bins.front().lo) + "," + std::to_string(underflow) + "\n";
  for (const auto& bin : bins) {
    out += format_edge(bin.lo) + "," + format_edge(bin.hi) + "," + std::to_string(bin.count) + "\n";
  }
  if (overflow > 0) out += format_edge(bins.back().hi) + ",inf," + std::to_string(overflow) + "\n";
  return out;
}

Histogram histogram(std::span<const double> values, std::size_t bin_count, double lo, double hi) {
  require(bin_count >= 1, "histogram needs at least one bin");
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "histogram range must be finite with lo < hi");
  const double n = static_cast<double>(bin_count);
  auto edge = [&](std::size_t k) { return k == bin_count ? hi : lo + (hi - lo) * (static_cast<double>(k) / n); };
  Histogram h;
  for (std::size_t k = 0; k < bin_count; ++k) h.bins.push_back({edge(k), edge(k + 1), 0});
  for (double v : values) {
    if (std::isnan(v) || v > hi) {
      ++h.overflow;
      continue;
    }
    if (v < lo) {
      ++h.underflow;
      continue;
    }
    auto k = static_cast<std::size_t>(std::min(n - 1.0, std::floor((v - lo) / (hi - lo) * n)));
    while (k + 1 < bin_count && v >= edge(k + 1)) ++k;
    while (k > 0 && v < edge(k)) --k;
    ++h.bins[k].count;
  }
  return h;
}

std::vector<TrajectoryStep> trajectory_summary(const std::vector<std::vector<double>>& scores_by_step) {
  std::vector<TrajectoryStep> out;
  for (std::size_t k = 0; k < scores_by_step.size(); ++k) {
    const auto& s = scores_by_step[k];
    require(!s.empty(), "trajectory step " + std::to_string(k) + " has no scores");
    TrajectoryStep step;
    step.step = k;
    step.mean = mean_of(s);
    step.sd = sample_sd(s);
    if (k > 0) step.diff_from_previous = paired_mean_diff(scores_by_step[k - 1], s);
    out.push_back(step);
  }
  return out;
}

nlohmann::json confusion_to_json(const ConfusionReport& report, std::span<const std::string> class_names) {
  nlohmann::json names = nlohmann::json::array();
  for (std::size_t i = 0; i < report.classes.size(); ++i) {
    names.push_back(i < class_names.size() ? class_names[i] : std::to_string(report.classes[i]));
  }
  nlohmann::json per_class = nlohmann::json::object();
  for (std::size_t i = 0; i < report.classes.size(); ++i) {
    per_class[names[i].get<std::string>()] = {{"precision", report.precision[i]},
                                             {"recall", report.recall[i]},
                                             {"f1", report.per_class_f1[i]}};
  }
  return {{"classes", names},
          {"confusion", report.matrix},
          {"per_class", per_class},
          {"macro_f1", report.macro_f1},
          {"accuracy", report.accuracy},
          {"n", report.n}};
}

nlohmann::json report_to_json(const EvalReport& report) {
  nlohmann::json j = {{"n", report.n}};
  if (report.confusion) {
    j["task"] = report.task;
    j["confusion"] = confusion_to_json(*report.confusion, report.class_names);
  }
  if (!report.thresholds.empty()) j["thresholds"] = report.thresholds;
  if (report.pearson) j["pearson_r"] = *report.pearson;
  if (report.mse_value) j["mse"] = *report.mse_value;
  return j;
}

}  // namespace editlens::eval
