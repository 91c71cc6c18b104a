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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "editlens/simmetrics.hpp"

namespace editlens::eval {

struct ConfusionReport {
  std::vector<int> classes;
  // matrix[i][j]: examples labeled classes[i] and predicted classes[j].
  std::vector<std::vector<std::size_t>> matrix;
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> per_class_f1;  // 0 when precision + recall == 0
  double macro_f1 = 0.0;             // unweighted mean over `classes`
  double accuracy = 0.0;
  std::size_t n = 0;
};

// Throws InvalidInput on a length mismatch or a value outside `classes`.
ConfusionReport confusion_and_f1(std::span<const int> preds, std::span<const int> labels,
                                 std::span<const int> classes);

// Binary F1 of "positive" predictions; 0 when precision + recall == 0.
double f1_binary(std::size_t tp, std::size_t fp, std::size_t fn);

// Sample Pearson correlation. Throws DegenerateInput for a constant sequence
// and InvalidInput for fewer than 2 points or mismatched lengths.
double pearson_r(std::span<const double> xs, std::span<const double> ys);

double mse(std::span<const double> preds, std::span<const double> targets);

// Units x raters matrix of nominal codes; std::nullopt marks a missing rating.
struct RatingsMatrix {
  std::size_t units = 0;
  std::size_t raters = 0;
  std::vector<std::optional<int>> values;  // row-major, units * raters

  RatingsMatrix() = default;
  RatingsMatrix(std::size_t u, std::size_t r) : units(u), raters(r), values(u * r) {}

  std::optional<int>& at(std::size_t u, std::size_t r) { return values[u * raters + r]; }
  const std::optional<int>& at(std::size_t u, std::size_t r) const { return values[u * raters + r]; }
  // Matrix made of the given unit rows, in order.
  RatingsMatrix select_units(std::span<const std::size_t> rows) const;
};

// Nominal Krippendorff's alpha from the coincidence matrix. Throws
// InsufficientData when no unit has two ratings and DegenerateData when every
// pairable rating carries the same value.
double krippendorff_alpha(const RatingsMatrix& ratings);

enum class Choice { kFirst = 0, kSecond = 1, kTie = 2 };
std::string_view choice_name(Choice c);  // "first" | "second" | "tie"
Choice parse_choice(std::string_view name);

// Strict comparison when `buckets` is empty, otherwise comparison of
// bucket_of() indices.
struct TieMode {
  std::optional<simmetrics::BucketSpec> buckets;

  static TieMode strict() { return {}; }
  static TieMode bucketed(const simmetrics::BucketSpec& spec) { return {spec}; }
};

// The higher-scoring text is the metric's pick.
std::vector<Choice> metric_as_rater(std::span<const std::pair<double, double>> pair_scores, const TieMode& mode);

using RatingsStatistic = std::function<double(const RatingsMatrix&)>;

// Sample standard deviation of `statistic` over B unit-level resamples drawn
// with replacement. Resample b uses its own seed stream, so the result does
// not depend on scheduling. Resamples on which the statistic throws an
// editlens::Error are skipped; more than half failing throws
// UnstableStatistic.
double bootstrap_se(const RatingsStatistic& statistic, const RatingsMatrix& ratings, std::size_t b,
                    std::uint64_t seed);

struct PairedDiff {
  double mean_diff = 0.0;  // mean(after - before)
  double sd = 0.0;         // sample standard deviation of the differences
  double frac_decreased = 0.0;
  std::size_t n = 0;
};

PairedDiff paired_mean_diff(std::span<const double> before, std::span<const double> after);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};

struct Histogram {
  std::vector<HistogramBin> bins;
  std::size_t underflow = 0;  // values below the range
  std::size_t overflow = 0;   // values above the range, and NaN

  std::size_t total() const;
  // Header "bin_lo,bin_hi,count"; nonzero out-of-range tallies follow as
  // rows with an infinite edge.
  std::string to_csv() const;
};

// Equal-width bins over [lo, hi]. A value on an interior edge goes to the
// higher bin; hi itself goes to the top bin.
Histogram histogram(std::span<const double> values, std::size_t bin_count, double lo, double hi);

// Scores of the same documents after successive edit passes:
// scores_by_step[k][d] is document d after k passes.
struct TrajectoryStep {
  std::size_t step = 0;
  double mean = 0.0;
  double sd = 0.0;
  std::optional<PairedDiff> diff_from_previous;
};

std::vector<TrajectoryStep> trajectory_summary(const std::vector<std::vector<double>>& scores_by_step);

// Aggregated statistics of one evaluation run.
struct EvalReport {
  std::size_t n = 0;
  std::string task;  // decision task of `confusion`, e.g. "ternary"
  std::optional<ConfusionReport> confusion;
  std::vector<std::string> class_names;
  std::vector<double> thresholds;
  std::optional<double> pearson;
  std::optional<double> mse_value;
};

nlohmann::json confusion_to_json(const ConfusionReport& report, std::span<const std::string> class_names);
nlohmann::json report_to_json(const EvalReport& report);

}  // namespace editlens::eval
