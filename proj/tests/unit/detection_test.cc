// Copyright 2026 The Forgeline Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "forgeline/detection.h"

#include <cmath>

#include <gtest/gtest.h>

#include "forgeline/error.h"
#include "forgeline/json_schema.h"

namespace forgeline {
namespace {

TEST(DetectionTest, ThresholdIsInclusive) {
  const std::vector<DetectionRecord> recs = {
      {"a", 0.5, ImageLabel::kFake, "human"},
      {"b", 0.4999, ImageLabel::kFake, "human"},
      {"c", 0.1, ImageLabel::kReal, "scene"},
      {"d", 0.9, ImageLabel::kReal, "scene"}};
  const DetectionResult r = DetectionAccuracy(recs);
  EXPECT_EQ(r.overall.n, 4u);
  EXPECT_EQ(r.overall.correct, 2u);
  EXPECT_DOUBLE_EQ(r.overall.accuracy(), 50.0);
  EXPECT_DOUBLE_EQ(r.groups.at("human").accuracy(), 50.0);
  EXPECT_DOUBLE_EQ(r.groups.at("scene").accuracy(), 50.0);
  EXPECT_TRUE(ValidateJson(ShippedSchema("detection_report"), r.ToJson()).empty());
  EXPECT_EQ(DetectionAccuracy(recs, 0.95).overall.correct, 2u);
}

TEST(DetectionTest, EmptyGroupCountsOverallOnly) {
  const std::vector<DetectionRecord> recs = {{"a", 0.9, ImageLabel::kFake, ""},
                                             {"b", 0.9, ImageLabel::kFake, "x"}};
  const DetectionResult r = DetectionAccuracy(recs);
  EXPECT_EQ(r.overall.n, 2u);
  EXPECT_EQ(r.groups.size(), 1u);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(DetectionTest, InvalidInputs) {
  EXPECT_THROW(DetectionAccuracy({}), ValidationError);
  const std::vector<DetectionRecord> bad = {{"a", 1.2, ImageLabel::kFake, "g"}};
  EXPECT_THROW(DetectionAccuracy(bad), ValidationError);
}

TEST(GrowthTest, InpaintingColumn) {
  const std::vector<double> pre = {29.57}, post = {30.20};
  const GrowthReport g = GrowthRate(pre, post);
  EXPECT_NEAR(g.growth_ratio_of_means, 2.13, 0.005);
  // Quoted figure, off by rounding of the two means.
  EXPECT_NEAR(g.growth_ratio_of_means, 2.14, 0.05);
}

TEST(GrowthTest, RegenerationColumnDisagreesWithQuotedFigure) {
  const std::vector<double> pre = {31.24}, post = {33.36};
  const GrowthReport g = GrowthRate(pre, post);
  EXPECT_NEAR(g.growth_ratio_of_means, 6.79, 0.005);
  // 6.98 is out of reach of rounding on the ratio of means.
  EXPECT_GT(std::abs(g.growth_ratio_of_means - 6.98), 0.05);
}

TEST(GrowthTest, PerSampleMeanCanReachQuotedFigureWithSameMeans) {
  // Two samples with the same means whose mean relative gain is 6.98%.
  const double a = 20.0, b = 2 * 31.24 - a;
  const double target = 0.0698;
  const double r2 = (2 * (33.36 - 31.24) - a * 2 * target) / (b - a);
  const double r1 = 2 * target - r2;
  const std::vector<double> pre = {a, b}, post = {a * (1 + r1), b * (1 + r2)};
  const GrowthReport g = GrowthRate(pre, post);
  EXPECT_NEAR(g.pre_mean, 31.24, 1e-9);
  EXPECT_NEAR(g.post_mean, 33.36, 1e-9);
  EXPECT_NEAR(g.growth_ratio_of_means, 6.79, 0.005);
  ASSERT_TRUE(g.growth_per_sample_mean);
  EXPECT_NEAR(*g.growth_per_sample_mean, 6.98, 1e-9);
}

TEST(GrowthTest, ZeroPreSamplesAreExcludedFromPerSampleMean) {
  const std::vector<double> pre = {0, 10}, post = {5, 11};
  const GrowthReport g = GrowthRate(pre, post);
  EXPECT_EQ(g.per_sample_n, 1u);
  EXPECT_NEAR(*g.growth_per_sample_mean, 10.0, 1e-12);
  EXPECT_NEAR(g.growth_ratio_of_means, 60.0, 1e-12);
  EXPECT_EQ(g.warnings.size(), 1u);
  EXPECT_TRUE(ValidateJson(ShippedSchema("growth_report"), g.ToJson()).empty());
}

TEST(GrowthTest, InvalidInputs) {
  const std::vector<double> one = {1}, two = {1, 2}, zero = {0};
  EXPECT_THROW(GrowthRate({}, {}), ValidationError);
  EXPECT_THROW(GrowthRate(one, two), ValidationError);
  EXPECT_THROW(GrowthRate(zero, one), ValidationError);
}

}  // namespace
}  // namespace forgeline
