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

#include "forgeline/backends.h"

#include "forgeline/error.h"

namespace forgeline {

using nlohmann::json;

namespace {

constexpr std::pair<std::string_view, std::string_view> kRoleNames[] = {
    {"analyzer", "/analyze"}, {"generator", "/generate"},
    {"inpainter", "/inpaint"}, {"reviser", "/revise"},
    {"captioner", "/caption"}, {"embedder", "/embed"},
    {"scorer", "/score"},      {"judge", "/judge"}};

}  // namespace

std::string_view ToString(Role role) {
  return kRoleNames[static_cast<int>(role)].first;
}

std::string_view EndpointPath(Role role) {
  return kRoleNames[static_cast<int>(role)].second;
}

std::optional<Role> ParseRole(std::string_view name) {
  for (Role r : kAllRoles)
    if (ToString(r) == name) return r;
  return std::nullopt;
}

BinaryMask AnalyzerReport::UnionMask(int width, int height) const {
  BinaryMask out(width, height);
  for (const auto& region : regions) out |= region.mask;
  return out;
}

json MaskToJson(const BinaryMask& mask) {
  return {{"width", mask.width()},
          {"height", mask.height()},
          {"rle", RleEncode(mask)}};
}

BinaryMask MaskFromJson(const json& j) {
  try {
    if (j.contains("png")) {
      return DecodeMaskPng(Base64Decode(j.at("png").get<std::string>()));
    }
    const auto runs = j.at("rle").get<std::vector<int64_t>>();
    return RleDecode(runs, j.at("width").get<int>(), j.at("height").get<int>());
  } catch (const json::exception& e) {
    throw CodecError(std::string("malformed mask: ") + e.what());
  } catch (const DimensionError& e) {
    throw CodecError(std::string("malformed mask: ") + e.what());
  }
}

json ReportToJson(const AnalyzerReport& report) {
  json regions = json::array();
  for (const auto& r : report.regions) {
    json rj = {{"location", r.location},
               {"mask", MaskToJson(r.mask)},
               {"explanation", r.explanation}};
    if (r.artifact_type) rj["artifact_type"] = ToString(*r.artifact_type);
    regions.push_back(std::move(rj));
  }
  return {{"label", ToString(report.label)},
          {"fake_prob", report.fake_prob},
          {"explanation", report.explanation},
          {"regions", std::move(regions)}};
}

AnalyzerReport ReportFromJson(const json& j, int width, int height) {
  AnalyzerReport report;
  try {
    const auto label = ParseImageLabel(j.at("label").get<std::string>());
    if (!label) throw CodecError("unknown label");
    report.label = *label;
    report.fake_prob = j.at("fake_prob").get<double>();
    report.explanation = j.value("explanation", "");
    for (const auto& rj : j.at("regions")) {
      ReportedRegion region;
      region.location = rj.value("location", "");
      region.explanation = rj.value("explanation", "");
      region.mask = MaskFromJson(rj.at("mask"));
      if (rj.contains("artifact_type") && !rj["artifact_type"].is_null()) {
        region.artifact_type =
            ParseArtifactType(rj["artifact_type"].get<std::string>());
        if (!region.artifact_type) throw CodecError("unknown artifact type");
      }
      if (region.mask.width() != width || region.mask.height() != height) {
        throw CodecError("region mask " + std::to_string(region.mask.width()) +
                         "x" + std::to_string(region.mask.height()) +
                         " does not match image " + std::to_string(width) +
                         "x" + std::to_string(height));
      }
      report.regions.push_back(std::move(region));
    }
  } catch (const json::exception& e) {
    throw CodecError(std::string("malformed analyzer report: ") + e.what());
  }
  if (!(report.fake_prob >= 0 && report.fake_prob <= 1))
    throw ValidationError("fake_prob outside [0,1]");
  if ((report.label == ImageLabel::kFake) !=
      (report.fake_prob >= kFakeThreshold))
    throw ValidationError("label disagrees with fake_prob threshold");
  return report;
}

}  // namespace forgeline
