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

#ifndef FORGELINE_TEXT_METRICS_H_
#define FORGELINE_TEXT_METRICS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "forgeline/backends.h"

namespace forgeline {

// Lowercases (ASCII, Latin-1, Latin Extended-A, Greek, Cyrillic) and splits
// UTF-8 text on whitespace and punctuation; punctuation is dropped and no
// empty token is produced. Invalid UTF-8 bytes are treated as separators.
std::vector<std::string> Tokenize(std::string_view text);

// Longest common subsequence length, O(n*m) time, O(min(n,m)) memory.
size_t LcsLength(std::span<const std::string> a, std::span<const std::string> b);

struct RougeL {
  size_t lcs = 0;
  double precision = 0;
  double recall = 0;
  double f = 0;  // beta = 1
  double score() const { return 100.0 * f; }
};

RougeL RougeLTokens(std::span<const std::string> candidate,
                    std::span<const std::string> reference);
// Both empty -> 100; one empty -> 0.
RougeL RougeLText(std::string_view candidate, std::string_view reference);
double RougeLScore(std::string_view candidate, std::string_view reference);

// Throws DimensionError on length mismatch and ValidationError on a zero or
// non-finite vector.
double CosineSimilarity(std::span<const double> a, std::span<const double> b);

struct CssResult {
  double cosine = 0;
  double score = 0;  // 100 * max(0, cosine)
};

// Embeds both texts through the backend. Transport failures propagate.
CssResult CssScore(const std::string& candidate, const std::string& reference,
                   Embedder& embedder);

// Fixed per-region response format used to align free-form model outputs
// with references before scoring:
//   "Artifact 1 at <location>: <explanation>."  (one line per region)
// A missing location drops " at <location>".
struct RegionText {
  std::string location;
  std::string explanation;
};
std::string FormatRegionResponse(std::span<const RegionText> regions);
// Splits free text into sentences (on . ! ? and newlines) and formats each
// as a region with no location.
std::string AlignFreeFormResponse(std::string_view text);

// Aggregates per-sample explanation scores (ROUGE-L and CSS).
class TextEvaluator {
 public:
  explicit TextEvaluator(Embedder* embedder) : embedder_(embedder) {}
  void Add(const std::string& id, const std::string& candidate,
           const std::string& reference);
  nlohmann::json Report() const;

 private:
  struct Item {
    std::string id;
    double rouge_l = 0;
    std::optional<CssResult> css;
  };
  Embedder* embedder_;
  std::vector<Item> items_;
};

}  // namespace forgeline

#endif  // FORGELINE_TEXT_METRICS_H_
