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

#include "forgeline/error.h"

namespace forgeline {

using nlohmann::json;

namespace {

json GroupToJson(const GroupAccuracy& g) {
  return {{"accuracy", g.accuracy()}, {"n", g.n}, {"correct", g.correct}};
}

}  // namespace

json DetectionResult::ToJson() const {
  json groups_j = json::object();
  for (const auto& [name, g] : groups) groups_j[name] = GroupToJson(g);
  return {{"schema_version", 1},
          {"kind", "detection"},
          {"threshold", threshold},
          {"overall", GroupToJson(overall)},
          {"groups", std::move(groups_j)},
          {"warnings", warnings}};
}

DetectionResult DetectionAccuracy(std::span<const DetectionRecord> records,
                                  double threshold) {
  if (records.empty()) throw ValidationError("no detection records");
  DetectionResult res;
  res.threshold = threshold;
  for (const auto& r : records) {
    if (!(r.fake_prob >= 0 && r.fake_prob <= 1))
      throw ValidationError("record " + r.id + ": fake_prob outside [0,1]");
    const ImageLabel predicted =
        r.fake_prob >= threshold ? ImageLabel::kFake : ImageLabel::kReal;
    const bool correct = predicted == r.gt;
    ++res.overall.n;
    res.overall.correct += correct;
    if (r.group.empty()) {
      res.warnings.push_back("record " + r.id + " has no group; counted overall only");
      continue;
    }
    auto& g = res.groups[r.group];
    ++g.n;
    g.correct += correct;
  }
  return res;
}

json GrowthReport::ToJson() const {
  return {{"schema_version", 1},
          {"kind", "growth"},
          {"n", n},
          {"pre_mean", pre_mean},
          {"post_mean", post_mean},
          {"growth_ratio_of_means", growth_ratio_of_means},
          {"growth_per_sample_mean", growth_per_sample_mean
                                         ? json(*growth_per_sample_mean)
                                         : json(nullptr)},
          {"per_sample_n", per_sample_n},
          {"warnings", warnings}};
}

GrowthReport GrowthRate(std::span<const double> pre, std::span<const double> post) {
  if (pre.empty()) throw ValidationError("growth rate needs at least one score");
  if (pre.size() != post.size())
    throw ValidationError("pre and post score lists differ in length");
  GrowthReport g;
  g.n = pre.size();
  double sum_pre = 0, sum_post = 0, sum_rel = 0;
  for (size_t i = 0; i < g.n; ++i) {
    if (!std::isfinite(pre[i]) || !std::isfinite(post[i]))
      throw ValidationError("non-finite score at sample " + std::to_string(i));
    sum_pre += pre[i];
    sum_post += post[i];
    if (pre[i] == 0) {
      g.warnings.push_back("sample " + std::to_string(i) +
                           " has a zero pre score; excluded from per-sample mean");
      continue;
    }
    sum_rel += (post[i] - pre[i]) / pre[i];
    ++g.per_sample_n;
  }
  g.pre_mean = sum_pre / g.n;
  g.post_mean = sum_post / g.n;
  if (g.pre_mean == 0) throw ValidationError("pre mean is zero");
  g.growth_ratio_of_means = (g.post_mean - g.pre_mean) / g.pre_mean * 100.0;
  if (g.per_sample_n > 0) g.growth_per_sample_mean = sum_rel / g.per_sample_n * 100.0;
  return g;
}

}  // namespace forgeline
