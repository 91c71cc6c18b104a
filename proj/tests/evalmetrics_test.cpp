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

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "editlens/error.hpp"
#include "editlens/random.hpp"
#include "oracles.hpp"

namespace editlens::eval {
namespace {

constexpr int H = 0, E = 1, A = 2;
const std::vector<int> kClasses = {H, E, A};
// Recorded from the first run under seed 20260101 with B = 1000.
constexpr double kPinnedBootstrapSe = 0.17235984127116127;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an editlens::Error";
  return ErrorKind::kInvalidInput;
}

RatingsMatrix matrix_of(const std::vector<std::vector<std::optional<int>>>& rows) {
  RatingsMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t u = 0; u < rows.size(); ++u) {
    for (std::size_t r = 0; r < rows[u].size(); ++r) m.at(u, r) = rows[u][r];
  }
  return m;
}

TEST(ConfusionTest, PerfectPredictions) {
  const std::vector<int> labels = {H, E, A, A};
  auto rep = confusion_and_f1(labels, labels, kClasses);
  EXPECT_EQ(rep.accuracy, 1.0);
  EXPECT_EQ(rep.macro_f1, 1.0);
  for (double f : rep.per_class_f1) EXPECT_EQ(f, 1.0);
}

TEST(ConfusionTest, HandComputedExample) {
  const std::vector<int> preds = {H, H, E, A};
  const std::vector<int> labels = {H, E, E, A};
  auto rep = confusion_and_f1(preds, labels, kClasses);
  EXPECT_NEAR(rep.per_class_f1[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(rep.per_class_f1[1], 2.0 / 3.0, 1e-15);
  EXPECT_EQ(rep.per_class_f1[2], 1.0);
  EXPECT_NEAR(rep.macro_f1, 7.0 / 9.0, 1e-15);
  EXPECT_EQ(rep.accuracy, 0.75);
  EXPECT_EQ(rep.matrix[1][0], 1u);
}

TEST(ConfusionTest, AbsentClassScoresZeroAndStillCounts) {
  const std::vector<int> v = {H, H, E};
  auto rep = confusion_and_f1(v, v, kClasses);
  EXPECT_EQ(rep.per_class_f1[2], 0.0);
  EXPECT_NEAR(rep.macro_f1, 2.0 / 3.0, 1e-15);
  const std::vector<int> two = {H, E};
  EXPECT_EQ(confusion_and_f1(v, v, two).macro_f1, 1.0);
}

TEST(ConfusionTest, RejectsBadInput) {
  const std::vector<int> a = {H, E};
  const std::vector<int> b = {H};
  const std::vector<int> c = {H, 7};
  EXPECT_EQ(kind_of([&] { confusion_and_f1(a, b, kClasses); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(kind_of([&] { confusion_and_f1(c, a, kClasses); }), ErrorKind::kInvalidInput);
}

TEST(ConfusionTest, MacroIsMeanOfPerClassOnRandomData) {
  Rng rng(81);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> p(1 + rng.below(40)), l(p.size());
    for (auto& x : p) x = static_cast<int>(rng.below(3));
    for (auto& x : l) x = static_cast<int>(rng.below(3));
    auto rep = confusion_and_f1(p, l, kClasses);
    double sum = 0.0;
    for (double f : rep.per_class_f1) {
      EXPECT_GE(f, 0.0);
      EXPECT_LE(f, 1.0);
      sum += f;
    }
    EXPECT_EQ(rep.macro_f1, sum / 3.0);
  }
}

TEST(F1BinaryTest, Counts) {
  EXPECT_EQ(f1_binary(0, 3, 4), 0.0);
  EXPECT_EQ(f1_binary(1, 1, 0), 2.0 / 3.0);
  EXPECT_EQ(f1_binary(5, 0, 0), 1.0);
}

TEST(PearsonTest, HandComputedValues) {
  const std::vector<double> x = {1, 2, 3};
  EXPECT_NEAR(pearson_r(x, std::vector<double>{2, 4, 6}), 1.0, 1e-15);
  EXPECT_NEAR(pearson_r(x, std::vector<double>{3, 2, 1}), -1.0, 1e-15);
  EXPECT_NEAR(pearson_r(x, std::vector<double>{1, 3, 2}), 0.5, 1e-15);
  EXPECT_EQ(kind_of([&] { pearson_r(x, std::vector<double>{5, 5, 5}); }), ErrorKind::kDegenerateInput);
  EXPECT_EQ(kind_of([&] { pearson_r(std::vector<double>{1}, std::vector<double>{1}); }), ErrorKind::kInvalidInput);
}

TEST(PearsonTest, InvariantUnderPositiveAffineMaps) {
  Rng rng(83);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(3 + rng.below(30)), y(x.size());
    for (auto& v : x) v = rng.uniform();
    for (auto& v : y) v = rng.uniform();
    const double r = pearson_r(x, y);
    const double a = 0.1 + rng.uniform() * 10.0, b = rng.uniform() * 5.0 - 2.5;
    std::vector<double> x2;
    for (double v : x) x2.push_back(a * v + b);
    EXPECT_NEAR(pearson_r(x2, y), r, 1e-12);
    EXPECT_LE(std::abs(r), 1.0);
  }
}

TEST(MseTest, Values) {
  const std::vector<double> v = {0.2, 0.4};
  EXPECT_EQ(mse(v, v), 0.0);
  EXPECT_EQ(mse(std::vector<double>{0, 1}, std::vector<double>{1, 0}), 1.0);
  EXPECT_EQ(mse(std::vector<double>{0.5}, std::vector<double>{0.0}), 0.25);
  EXPECT_THROW(mse(v, std::vector<double>{1}), Error);
}

TEST(KrippendorffTest, HandComputedCases) {
  const int a = 0, b = 1;
  EXPECT_EQ(krippendorff_alpha(matrix_of({{a, a}, {a, a}, {a, b}})), 0.0);
  EXPECT_EQ(krippendorff_alpha(matrix_of({{a, a}, {b, b}, {a, a}})), 1.0);
  EXPECT_EQ(kind_of([&] { krippendorff_alpha(matrix_of({{a, a}, {a, a}})); }), ErrorKind::kDegenerateData);
  EXPECT_EQ(kind_of([&] { krippendorff_alpha(matrix_of({{a, std::nullopt}, {std::nullopt, b}})); }),
            ErrorKind::kInsufficientData);
}

TEST(KrippendorffTest, MatchesPairwiseDefinitionOnRandomMatrices) {
  Rng rng(89);
  int compared = 0;
  for (int trial = 0; trial < 400 && compared < 200; ++trial) {
    const std::size_t units = 1 + rng.below(6), raters = 2 + rng.below(3);
    std::vector<std::vector<std::optional<int>>> rows(units, std::vector<std::optional<int>>(raters));
    for (auto& row : rows) {
      for (auto& v : row) {
        if (!rng.bernoulli(0.25)) v = static_cast<int>(rng.below(3));
      }
    }
    const auto expected = oracle::krippendorff_pairwise(rows);
    if (!expected) {
      EXPECT_THROW(krippendorff_alpha(matrix_of(rows)), Error);
      continue;
    }
    EXPECT_NEAR(krippendorff_alpha(matrix_of(rows)), *expected, 1e-9);
    ++compared;
  }
  EXPECT_GE(compared, 50);
}

TEST(MetricAsRaterTest, StrictAndBucketedTies) {
  const std::vector<std::pair<double, double>> pairs = {{0.2, 0.5}, {0.3, 0.3}, {0.04, 0.05}, {0.9, 0.1}};
  auto strict = metric_as_rater(pairs, TieMode::strict());
  EXPECT_EQ(strict, (std::vector<Choice>{Choice::kSecond, Choice::kTie, Choice::kSecond, Choice::kFirst}));
  auto bucketed = metric_as_rater(pairs, TieMode::bucketed({4, 0.03, 0.15}));
  EXPECT_EQ(bucketed[2], Choice::kTie);
  for (Choice c : {Choice::kFirst, Choice::kSecond, Choice::kTie}) EXPECT_EQ(parse_choice(choice_name(c)), c);
}

TEST(MetricAsRaterTest, DistinctScoresNeverTieUnderStrictMode) {
  Rng rng(97);
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < 1000; ++i) {
    double a = rng.uniform(), b = rng.uniform();
    if (a == b) b = std::nextafter(b, 2.0);
    pairs.emplace_back(a, b);
  }
  for (Choice c : metric_as_rater(pairs, TieMode::strict())) EXPECT_NE(c, Choice::kTie);
}

TEST(BootstrapTest, ConstantStatisticHasZeroError) {
  auto m = matrix_of({{0, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(bootstrap_se([](const RatingsMatrix&) { return 0.42; }, m, 200, 1), 0.0);
}

TEST(BootstrapTest, SeededAndReproducibleOnTheZeroAlphaExample) {
  auto m = matrix_of({{0, 0}, {0, 0}, {0, 1}});
  const double se = bootstrap_se(krippendorff_alpha, m, 1000, 20260101);
  EXPECT_GT(se, 0.0);
  EXPECT_EQ(se, bootstrap_se(krippendorff_alpha, m, 1000, 20260101));
  EXPECT_DOUBLE_EQ(se, kPinnedBootstrapSe);
}

TEST(BootstrapTest, FailingStatisticIsUnstable) {
  auto m = matrix_of({{0, 0}, {0, 1}});
  auto always_fails = [](const RatingsMatrix&) -> double { fail(ErrorKind::kDegenerateData, "no"); };
  EXPECT_EQ(kind_of([&] { bootstrap_se(always_fails, m, 50, 1); }), ErrorKind::kUnstableStatistic);
}

TEST(PairedDiffTest, Values) {
  const std::vector<double> same = {0.1, 0.2};
  auto zero = paired_mean_diff(same, same);
  EXPECT_EQ(zero.mean_diff, 0.0);
  EXPECT_EQ(zero.sd, 0.0);
  EXPECT_EQ(zero.frac_decreased, 0.0);
  auto d = paired_mean_diff(std::vector<double>{0.9, 0.8}, std::vector<double>{0.5, 0.9});
  EXPECT_NEAR(d.mean_diff, -0.15, 1e-15);
  EXPECT_NEAR(d.sd, std::sqrt(0.125), 1e-15);
  EXPECT_EQ(d.frac_decreased, 0.5);
  EXPECT_THROW(paired_mean_diff(std::vector<double>{}, std::vector<double>{}), Error);
  EXPECT_THROW(paired_mean_diff(same, std::vector<double>{1}), Error);
}

TEST(HistogramTest, CountsAndBoundaries) {
  std::vector<double> v;
  for (int i = 0; i < 10; ++i) v.push_back(0.05 + 0.1 * i);
  auto h = histogram(v, 10, 0.0, 1.0);
  EXPECT_EQ(h.total(), 10u);
  for (const auto& b : h.bins) EXPECT_EQ(b.count, 1u);

  auto empty = histogram({}, 4, 0.0, 1.0);
  EXPECT_EQ(empty.total(), 0u);

  auto edge = histogram(std::vector<double>{0.5}, 4, 0.0, 1.0);
  EXPECT_EQ(edge.bins[2].count, 1u);
  auto top = histogram(std::vector<double>{1.0}, 4, 0.0, 1.0);
  EXPECT_EQ(top.bins[3].count, 1u);
  EXPECT_THROW(histogram(v, 0, 0.0, 1.0), Error);
  EXPECT_THROW(histogram(v, 3, 1.0, 0.0), Error);
}

TEST(HistogramTest, TalliesCoverEveryValue) {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(rng.below(100));
    for (auto& x : v) x = rng.uniform() * 1.6 - 0.3;
    if (!v.empty() && rng.bernoulli(0.2)) v[0] = NAN;
    const std::size_t bins = 1 + rng.below(25);
    auto h = histogram(v, bins, 0.0, 1.0);
    EXPECT_EQ(h.total(), v.size());
    std::size_t inside = 0;
    for (const auto& b : h.bins) inside += b.count;
    EXPECT_EQ(inside + h.underflow + h.overflow, v.size());
  }
}

TEST(HistogramTest, CsvFormat) {
  auto h = histogram(std::vector<double>{-1.0, 0.25, 0.75}, 2, 0.0, 1.0);
  EXPECT_EQ(h.to_csv(), "bin_lo,bin_hi,count\n-inf,0,1\n0,0.5,1\n0.5,1,1\n");
}

TEST(TrajectoryTest, StepwiseDifferences) {
  auto steps = trajectory_summary({{0.1, 0.2}, {0.3, 0.2}, {0.5, 0.6}});
  ASSERT_EQ(steps.size(), 3u);
  EXPECT_FALSE(steps[0].diff_from_previous.has_value());
  EXPECT_NEAR(steps[1].mean, 0.25, 1e-15);
  EXPECT_NEAR(steps[1].diff_from_previous->mean_diff, 0.1, 1e-15);
  EXPECT_EQ(steps[2].diff_from_previous->frac_decreased, 0.0);
}

TEST(ReportTest, JsonCarriesClassNames) {
  EvalReport r;
  r.n = 4;
  r.task = "ternary";
  r.class_names = {"human", "ai_edited", "ai_generated"};
  r.confusion = confusion_and_f1(std::vector<int>{H, H, E, A}, std::vector<int>{H, E, E, A}, kClasses);
  r.thresholds = {0.2, 0.6};
  r.pearson = 0.5;
  auto j = report_to_json(r);
  EXPECT_EQ(j["n"], 4);
  EXPECT_EQ(j["confusion"]["classes"][2], "ai_generated");
  EXPECT_EQ(j["pearson_r"], 0.5);
}

}  // namespace
}  // namespace editlens::eval
