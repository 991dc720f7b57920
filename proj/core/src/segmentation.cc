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

#include "forgeline/segmentation.h"

#include <set>

#include "forgeline/error.h"

namespace forgeline {

namespace {

double SafeRatio(uint64_t num, uint64_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

PixelCounts CountPixels(const BinaryMask& pred, const BinaryMask& gt) {
  if (!pred.SameShape(gt)) {
    throw DimensionError("prediction " + std::to_string(pred.width()) + "x" +
                         std::to_string(pred.height()) +
                         " does not match ground truth " +
                         std::to_string(gt.width()) + "x" +
                         std::to_string(gt.height()));
  }
  PixelCounts c;
  for (size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i];
    const bool g = gt[i];
    if (p && g) {
      ++c.tp;
    } else if (p) {
      ++c.fp;
    } else if (g) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return c;
}

SegScore ScoresFromCounts(const PixelCounts& c) {
  SegScore s;
  s.iou_fg = SafeRatio(c.tp, c.tp + c.fp + c.fn);
  s.iou_bg = SafeRatio(c.tn, c.tn + c.fp + c.fn);
  s.miou = (s.iou_fg + s.iou_bg) / 2;
  s.f1 = SafeRatio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
  return s;
}

SegScore SegmentationScores(const BinaryMask& pred, const BinaryMask& gt) {
  return ScoresFromCounts(CountPixels(pred, gt));
}

void SegEvaluator::Add(const std::string& id, const std::string& group,
                       const BinaryMask& pred, const BinaryMask& gt) {
  Item item{id, group, CountPixels(pred, gt), {}};
  item.score = ScoresFromCounts(item.counts);
  items_.push_back(std::move(item));
}

SegScore SegEvaluator::AggregateItems(Aggregation mode,
                                      const std::string* group) const {
  PixelCounts total;
  SegScore sum;
  size_t n = 0;
  for (const auto& item : items_) {
    if (group && item.group != *group) continue;
    total += item.counts;
    sum.iou_fg += item.score.iou_fg;
    sum.iou_bg += item.score.iou_bg;
    sum.miou += item.score.miou;
    sum.f1 += item.score.f1;
    ++n;
  }
  if (mode == Aggregation::kMicro) return ScoresFromCounts(total);
  if (n == 0) return {};
  const double inv = 1.0 / static_cast<double>(n);
  return {sum.iou_fg * inv, sum.iou_bg * inv, sum.miou * inv, sum.f1 * inv};
}

SegScore SegEvaluator::Aggregate(Aggregation mode) const {
  return AggregateItems(mode, nullptr);
}

SegScore SegEvaluator::Aggregate(Aggregation mode,
                                 const std::string& group) const {
  return AggregateItems(mode, &group);
}

nlohmann::json ScoreToJson(const SegScore& s) {
  return {{"iou_fg", 100 * s.iou_fg},
          {"iou_bg", 100 * s.iou_bg},
          {"miou", 100 * s.miou},
          {"f1", 100 * s.f1}};
}

nlohmann::json SegEvaluator::Report() const {
  nlohmann::json per_image = nlohmann::json::array();
  std::set<std::string> groups;
  for (const auto& item : items_) {
    auto j = ScoreToJson(item.score);
    j["id"] = item.id;
    j["group"] = item.group;
    per_image.push_back(std::move(j));
    groups.insert(item.group);
  }
  nlohmann::json by_group = nlohmann::json::object();
  for (const auto& g : groups) {
    by_group[g] = {{"macro", ScoreToJson(Aggregate(Aggregation::kMacro, g))},
                   {"micro", ScoreToJson(Aggregate(Aggregation::kMicro, g))}};
  }
  return {{"schema_version", 1},
          {"kind", "segmentation"},
          {"count", items_.size()},
          {"macro", ScoreToJson(Aggregate(Aggregation::kMacro))},
          {"micro", ScoreToJson(Aggregate(Aggregation::kMicro))},
          {"by_group", std::move(by_group)},
          {"per_image", std::move(per_image)}};
}

}  // namespace forgeline
