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

#include "editlens/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "editlens/error.hpp"
#include "editlens/evalmetrics.hpp"

namespace editlens::calibration {

using labeler::Ternary;

std::string_view task_name(Task t) {
  switch (t) {
    case Task::kHumanVsAnyAi: return "human_vs_any_ai";
    case Task::kFullyAiVsRest: return "fullyai_vs_rest";
    case Task::kTernary: return "ternary";
  }
  return "ternary";
}

Task parse_task(std::string_view name) {
  for (Task t : {Task::kHumanVsAnyAi, Task::kFullyAiVsRest, Task::kTernary}) {
    if (task_name(t) == name) return t;
  }
  fail(ErrorKind::kInvalidInput, "unknown calibration task '" + std::string(name) + "'");
}

std::vector<double> candidate_thresholds(std::span<const double> scores) {
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<double> out;
  if (sorted.empty()) return out;
  out.push_back(std::nextafter(sorted.front(), -std::numeric_limits<double>::infinity()));
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) out.push_back(std::midpoint(sorted[i], sorted[i + 1]));
  out.push_back(std::nextafter(sorted.back(), std::numeric_limits<double>::infinity()));
  return out;
}

double f1_at(std::span<const double> scores, std::span<const int> labels, double threshold) {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    if (predicted && labels[i] == 1) ++tp;
    if (predicted && labels[i] == 0) ++fp;
    if (!predicted && labels[i] == 1) ++fn;
  }
  return eval::f1_binary(tp, fp, fn);
}

BinaryFit calibrate_binary(std::span<const double> scores, std::span<const int> labels) {
  require(scores.size() == labels.size(), "scores and labels differ in length");
  bool pos = false;
  bool neg = false;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    require(std::isfinite(scores[i]), "scores must be finite");
    require(labels[i] == 0 || labels[i] == 1, "binary labels must be 0 or 1");
    (labels[i] == 1 ? pos : neg) = true;
  }
  if (!pos || !neg) fail(ErrorKind::kDegenerateLabels, "calibration needs both classes");

  // Sweep candidates from high to low; each score crosses to "positive" once.
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  const auto cands = candidate_thresholds(scores);
  std::size_t total_pos = 0;
  for (int l : labels) total_pos += l == 1 ? 1 : 0;

  BinaryFit best{cands.back(), -1.0};
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t next = 0;
  for (std::size_t c = cands.size(); c-- > 0;) {
    while (next < order.size() && scores[order[next]] >= cands[c]) {
      (labels[order[next]] == 1 ? tp : fp) += 1;
      ++next;
    }
    const double f1 = eval::f1_binary(tp, fp, total_pos - tp);
    if (f1 > best.f1) best = {cands[c], f1};
  }
  return best;
}

TernaryFit calibrate_ternary(std::span<const double> scores, std::span<const Ternary> labels) {
  require(scores.size() == labels.size(), "scores and labels differ in length");
  bool seen[3] = {false, false, false};
  for (Ternary t : labels) seen[static_cast<int>(t)] = true;
  if (!seen[0] || !seen[1] || !seen[2]) fail(ErrorKind::kDegenerateLabels, "ternary calibration needs all three classes");

  std::vector<int> any_ai(labels.size());
  std::vector<int> fully_ai(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    any_ai[i] = labels[i] != Ternary::kHuman ? 1 : 0;
    fully_ai[i] = labels[i] == Ternary::kAiGenerated ? 1 : 0;
  }
  const BinaryFit low = calibrate_binary(scores, any_ai);
  const BinaryFit high = calibrate_binary(scores, fully_ai);
  TernaryFit fit;
  fit.t1 = low.threshold;
  fit.t2 = high.threshold;
  fit.f1_low = low.f1;
  fit.f1_high = high.f1;
  if (fit.t1 > fit.t2) fit.t1 = fit.t2 = fit.t1 + (fit.t2 - fit.t1) / 2.0;

  std::vector<int> preds(labels.size());
  std::vector<int> truth(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    preds[i] = static_cast<int>(classify_ternary(scores[i], fit.t1, fit.t2));
    truth[i] = static_cast<int>(labels[i]);
  }
  const int classes[] = {0, 1, 2};
  fit.macro_f1 = eval::confusion_and_f1(preds, truth, classes).macro_f1;
  return fit;
}

Ternary classify_ternary(double score, double t1, double t2) {
  require(!(t1 > t2), "classify_ternary requires t1 <= t2");
  if (score < t1) return Ternary::kHuman;
  if (score >= t2) return Ternary::kAiGenerated;
  return Ternary::kAiEdited;
}

nlohmann::json to_json(const CalibrationResult& result) {
  return {{"task", task_name(result.task)},
          {"thresholds", result.thresholds},
          {"fit_f1", result.fit_f1},
          {"n_val", result.n_val}};
}

CalibrationResult result_from_json(const nlohmann::json& j) {
  CalibrationResult r;
  try {
    r.task = parse_task(j.at("task").get<std::string>());
    r.thresholds = j.at("thresholds").get<std::vector<double>>();
    r.fit_f1 = j.at("fit_f1").get<std::vector<double>>();
    r.n_val = j.at("n_val").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kInvalidInput, std::string("malformed calibration record: ") + e.what());
  }
  const std::size_t want = r.task == Task::kTernary ? 2 : 1;
  require(r.thresholds.size() == want, "calibration record has the wrong number of thresholds");
  if (want == 2) require(r.thresholds[0] <= r.thresholds[1], "ternary thresholds must satisfy t1 <= t2");
  return r;
}

}  // namespace editlens::calibration
