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
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "editlens/labeler.hpp"

namespace editlens::calibration {

enum class Task { kHumanVsAnyAi, kFullyAiVsRest, kTernary };

std::string_view task_name(Task t);  // "human_vs_any_ai" | "fullyai_vs_rest" | "ternary"
Task parse_task(std::string_view name);

struct BinaryFit {
  double threshold = 0.0;
  double f1 = 0.0;
};

// Candidate thresholds: midpoints between consecutive distinct sorted scores,
// plus the next double below the minimum and the next double above the
// maximum.
std::vector<double> candidate_thresholds(std::span<const double> scores);

// F1 of "score >= threshold => positive".
double f1_at(std::span<const double> scores, std::span<const int> labels, double threshold);

// F1-maximizing threshold; ties go to the larger threshold. Throws
// DegenerateLabels unless both classes occur, InvalidInput on bad input.
BinaryFit calibrate_binary(std::span<const double> scores, std::span<const int> labels);

struct TernaryFit {
  double t1 = 0.0;
  double t2 = 0.0;
  double f1_low = 0.0;   // human vs any AI
  double f1_high = 0.0;  // fully AI vs rest
  double macro_f1 = 0.0;
};

// t1 from human vs (edited or generated), t2 from (human or edited) vs
// generated; when t1 > t2 both become their average. Throws DegenerateLabels
// when a class is missing.
TernaryFit calibrate_ternary(std::span<const double> scores, std::span<const labeler::Ternary> labels);

// score < t1 -> human; score >= t2 -> ai_generated; otherwise ai_edited.
// Throws InvalidInput when t1 > t2.
labeler::Ternary classify_ternary(double score, double t1, double t2);

struct CalibrationResult {
  Task task = Task::kTernary;
  std::vector<double> thresholds;
  std::vector<double> fit_f1;
  std::size_t n_val = 0;
};

nlohmann::json to_json(const CalibrationResult& result);
CalibrationResult result_from_json(const nlohmann::json& j);

}  // namespace editlens::calibration
