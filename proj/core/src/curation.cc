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

#include "forgeline/curation.h"

#include <algorithm>
#include <limits>
#include <map>

#include "forgeline/concurrency.h"
#include "forgeline/error.h"
#include "forgeline/image.h"
#include "forgeline/rng.h"

namespace forgeline {

namespace {

double SquaredDistance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Index of the nearest centroid, lowest index on ties.
int Nearest(const std::vector<double>& p,
            const std::vector<std::vector<double>>& centroids, double* dist) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t c = 0; c < centroids.size(); ++c) {
    const double d = SquaredDistance(p, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  if (dist) *dist = best_d;
  return best;
}

}  // namespace

KMeansResult KMeans(const std::vector<std::vector<double>>& points, int k,
                    uint64_t seed, int max_iters) {
  const size_t n = points.size();
  if (k < 1) throw ConfigError("k must be >= 1");
  if (static_cast<size_t>(k) > n)
    throw ConfigError("k = " + std::to_string(k) + " exceeds point count " +
                      std::to_string(n));
  const size_t dim = points[0].size();
  for (const auto& p : points)
    if (p.size() != dim) throw ConfigError("feature vectors differ in dimension");

  SplitMix64 rng(seed);
  KMeansResult res;
  res.centroids.push_back(points[rng.Below(n)]);
  std::vector<double> d2(n);
  while (res.centroids.size() < static_cast<size_t>(k)) {
    double total = 0;
    for (size_t i = 0; i < n; ++i) {
      Nearest(points[i], res.centroids, &d2[i]);
      total += d2[i];
    }
    size_t pick = n - 1;
    if (total > 0) {
      double target = rng.Uniform() * total;
      for (size_t i = 0; i < n; ++i) {
        if (target < d2[i]) {
          pick = i;
          break;
        }
        target -= d2[i];
      }
    } else {
      pick = rng.Below(n);  // every point coincides with a centroid
    }
    res.centroids.push_back(points[pick]);
  }

  res.assignments.assign(n, -1);
  for (int iter = 0; iter < std::max(1, max_iters); ++iter) {
    bool changed = false;
    double objective = 0;
    for (size_t i = 0; i < n; ++i) {
      double d;
      const int c = Nearest(points[i], res.centroids, &d);
      objective += d;
      if (c != res.assignments[i]) {
        res.assignments[i] = c;
        changed = true;
      }
    }
    res.objective.push_back(objective);
    res.iterations = iter + 1;
    if (!changed) {
      res.converged = true;
      break;
    }
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<size_t> counts(k, 0);
    for (size_t i = 0; i < n; ++i) {
      const int c = res.assignments[i];
      ++counts[c];
      for (size_t d = 0; d < dim; ++d) sums[c][d] += points[i][d];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (size_t d = 0; d < dim; ++d)
        res.centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);
    }
  }
  return res;
}

std::vector<size_t> StratifiedSample(std::span<const int> assignments,
                                     int n_per_cluster, uint64_t seed) {
  std::vector<size_t> out;
  if (n_per_cluster <= 0) return out;
  std::map<int, std::vector<size_t>> clusters;
  for (size_t i = 0; i < assignments.size(); ++i)
    clusters[assignments[i]].push_back(i);
  for (auto& [label, members] : clusters) {
    SplitMix64 rng(CounterHash(seed, static_cast<uint64_t>(label), 0));
    const size_t take = std::min(members.size(), static_cast<size_t>(n_per_cluster));
    for (size_t i = 0; i < take; ++i) {
      const size_t j = i + rng.Below(members.size() - i);
      std::swap(members[i], members[j]);
      out.push_back(members[i]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<JudgeLabel> ParseJudgeLabel(std::string_view text) {
  constexpr std::string_view kSpace = " \t\r\n";
  const auto first = text.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return std::nullopt;
  text = text.substr(first, text.find_last_not_of(kSpace) - first + 1);
  if (text == "Acceptable") return JudgeLabel::kAcceptable;
  if (text == "Rejected[Clarity]") return JudgeLabel::kRejectedClarity;
  if (text == "Rejected[Safety]") return JudgeLabel::kRejectedSafety;
  if (text == "Rejected[Realism]") return JudgeLabel::kRejectedRealism;
  return std::nullopt;
}

std::string_view ToString(JudgeLabel label) {
  switch (label) {
    case JudgeLabel::kAcceptable:
      return "Acceptable";
    case JudgeLabel::kRejectedClarity:
      return "Rejected[Clarity]";
    case JudgeLabel::kRejectedSafety:
      return "Rejected[Safety]";
    case JudgeLabel::kRejectedRealism:
      return "Rejected[Realism]";
  }
  return "";
}

size_t JudgeFilterResult::failed() const {
  return std::count_if(outcomes.begin(), outcomes.end(),
                       [](const JudgeOutcome& o) { return !o.label; });
}

nlohmann::json JudgeFilterResult::ToJson() const {
  nlohmann::json images = nlohmann::json::array();
  for (const auto& o : outcomes) {
    nlohmann::json j = {{"id", o.id},
                        {"raw_response", o.raw_response},
                        {"status", o.label ? "labeled" : "failed"}};
    if (o.label) {
      j["label"] = ToString(*o.label);
    } else {
      j["diagnostic"] = o.diagnostic;
    }
    images.push_back(std::move(j));
  }
  return {{"schema_version", 1},
          {"kind", "curation_filter"},
          {"images", std::move(images)},
          {"kept", kept},
          {"failed", failed()}};
}

JudgeFilterResult JudgeFilter(const DatasetManifest& manifest, Judge& judge,
                              const std::string& prompt, size_t max_parallel,
                              uint64_t seed) {
  JudgeFilterResult result;
  result.outcomes.resize(manifest.entries.size());
  ParallelFor(manifest.entries.size(), max_parallel, [&](size_t i) {
    const auto& entry = manifest.entries[i];
    const RgbImage image = LoadImageRef(entry.image_ref, manifest.base_dir);
    JudgeOutcome& o = result.outcomes[i];
    o.id = entry.id;
    o.raw_response = judge.Assess(image, prompt, {entry.id, seed});
    o.label = ParseJudgeLabel(o.raw_response);
    if (!o.label) o.diagnostic = "unparseable judge response";
  });
  for (const auto& o : result.outcomes)
    if (o.label == JudgeLabel::kAcceptable) result.kept.push_back(o.id);
  return result;
}

}  // namespace forgeline
