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

#ifndef FORGELINE_SEGMENTATION_H_
#define FORGELINE_SEGMENTATION_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forgeline/annotation.h"

namespace forgeline {

// Pixel confusion counts, foreground = 1.
struct PixelCounts {
  uint64_t tp = 0;
  uint64_t fp = 0;
  uint64_t fn = 0;
  uint64_t tn = 0;

  PixelCounts& operator+=(const PixelCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
};

// Ratios in [0, 1]; reports scale them by 100.
struct SegScore {
  double iou_fg = 0;
  double iou_bg = 0;
  double miou = 0;
  double f1 = 0;
};

// Throws DimensionError when shapes differ.
PixelCounts CountPixels(const BinaryMask& pred, const BinaryMask& gt);

// IoU terms use 0/0 -> 1 (both empty is a perfect match). F1 is
// 2TP / (2TP + FP + FN) with 0/0 -> 1.
SegScore ScoresFromCounts(const PixelCounts& counts);
SegScore SegmentationScores(const BinaryMask& pred, const BinaryMask& gt);

enum class Aggregation { kMacro, kMicro };

// Accumulates per-image scores and reports macro (mean of per-image scores)
// and micro (scores of summed counts) aggregates, overall and by group.
class SegEvaluator {
 public:
  void Add(const std::string& id, const std::string& group,
           const BinaryMask& pred, const BinaryMask& gt);

  size_t size() const { return items_.size(); }
  SegScore Aggregate(Aggregation mode) const;
  SegScore Aggregate(Aggregation mode, const std::string& group) const;

  // Batch report: per-image scores, overall and per-group aggregates,
  // all scaled x100.
  nlohmann::json Report() const;

 private:
  struct Item {
    std::string id;
    std::string group;
    PixelCounts counts;
    SegScore score;
  };
  SegScore AggregateItems(Aggregation mode, const std::string* group) const;

  std::vector<Item> items_;
};

nlohmann::json ScoreToJson(const SegScore& score);  // x100

}  // namespace forgeline

#endif  // FORGELINE_SEGMENTATION_H_
