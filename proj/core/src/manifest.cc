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

#include "forgeline/manifest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "forgeline/error.h"
#include "forgeline/image.h"
#include "forgeline/raster.h"

namespace forgeline {

using nlohmann::json;

bool ValidationReport::Has(std::string_view message) const {
  for (const auto& v : violations)
    if (v.message == message) return true;
  return false;
}

namespace {

json ViolationJson(const Violation& v) {
  json j = {{"entry_id", v.entry_id},
            {"field", v.field_path},
            {"message", v.message}};
  if (v.line > 0) j["line"] = v.line;
  return j;
}

std::string RegionPath(size_t r) {
  return "regions[" + std::to_string(r) + "]";
}

// Parses one region; returns nullopt (after recording a violation) when the
// region cannot be represented.
std::optional<ArtifactRegion> ParseRegion(const json& j, const std::string& id,
                                          size_t r, size_t line,
                                          std::vector<Violation>& out) {
  const std::string path = RegionPath(r);
  if (!j.is_object()) {
    out.push_back({id, path, "region is not an object", line});
    return std::nullopt;
  }
  ArtifactRegion region;
  region.location = j.value("location", "");
  region.explanation = j.value("explanation", "");
  const auto type_it = j.find("artifact_type");
  if (type_it == j.end() || !type_it->is_string()) {
    out.push_back({id, path + ".artifact_type", "missing field", line});
    return std::nullopt;
  }
  const auto type = ParseArtifactType(type_it->get<std::string>());
  if (!type) {
    out.push_back({id, path + ".artifact_type", "unknown artifact type", line});
    return std::nullopt;
  }
  region.artifact_type = *type;
  const auto polys = j.find("polygons");
  if (polys != j.end()) {
    if (!polys->is_array()) {
      out.push_back({id, path + ".polygons", "polygons is not an array", line});
      return std::nullopt;
    }
    for (size_t p = 0; p < polys->size(); ++p) {
      const json& pj = (*polys)[p];
      Polygon poly;
      bool ok = pj.is_array();
      for (size_t v = 0; ok && v < pj.size(); ++v) {
        const json& pt = pj[v];
        ok = pt.is_array() && pt.size() == 2 && pt[0].is_number() &&
             pt[1].is_number();
        if (ok) poly.vertices.push_back({pt[0].get<double>(), pt[1].get<double>()});
      }
      if (!ok) {
        out.push_back({id, path + ".polygons[" + std::to_string(p) + "]",
                       "malformed polygon", line});
        return std::nullopt;
      }
      region.polygons.push_back(std::move(poly));
    }
  }
  return region;
}

std::optional<AnnotatedImage> ParseEntry(const json& j, size_t line,
                                         std::vector<Violation>& out) {
  const std::string fallback_id = "line " + std::to_string(line);
  if (!j.is_object()) {
    out.push_back({fallback_id, "", "entry is not an object", line});
    return std::nullopt;
  }
  AnnotatedImage entry;
  const auto id_it = j.find("id");
  if (id_it == j.end() || !id_it->is_string()) {
    out.push_back({fallback_id, "id", "missing field", line});
    return std::nullopt;
  }
  entry.id = id_it->get<std::string>();
  const std::string& id = entry.id.empty() ? fallback_id : entry.id;
  entry.image_ref = j.value("image", "");
  const auto label = ParseImageLabel(j.value("label", ""));
  if (!label) {
    out.push_back({id, "label", "unknown label", line});
    return std::nullopt;
  }
  entry.label = *label;
  const auto content = ParseContentType(j.value("content_type", ""));
  if (!content) {
    out.push_back({id, "content_type", "unknown content type", line});
    return std::nullopt;
  }
  entry.content_type = *content;
  if (j.contains("generator") && j["generator"].is_string())
    entry.generator = j["generator"].get<std::string>();
  if (j.contains("reference") && j["reference"].is_string())
    entry.reference_ref = j["reference"].get<std::string>();
  entry.width = j.value("width", 0);
  entry.height = j.value("height", 0);
  if (j.contains("regions")) {
    const json& regions = j["regions"];
    if (!regions.is_array()) {
      out.push_back({id, "regions", "regions is not an array", line});
    } else {
      for (size_t r = 0; r < regions.size(); ++r) {
        if (auto region = ParseRegion(regions[r], id, r, line, out))
          entry.regions.push_back(std::move(*region));
      }
    }
  }
  return entry;
}

}  // namespace

json ValidationReport::ToJson() const {
  json j = {{"schema_version", 1},
            {"kind", "validation"},
            {"ok", ok()},
            {"violations", json::array()},
            {"warnings", json::array()}};
  for (const auto& v : violations) j["violations"].push_back(ViolationJson(v));
  for (const auto& v : warnings) j["warnings"].push_back(ViolationJson(v));
  return j;
}

json EntryToJson(const AnnotatedImage& entry) {
  json j = {{"id", entry.id},
            {"image", entry.image_ref},
            {"label", ToString(entry.label)},
            {"content_type", ToString(entry.content_type)}};
  if (entry.generator) j["generator"] = *entry.generator;
  if (entry.width > 0) j["width"] = entry.width;
  if (entry.height > 0) j["height"] = entry.height;
  if (entry.reference_ref) j["reference"] = *entry.reference_ref;
  json regions = json::array();
  for (const auto& region : entry.regions) {
    json polys = json::array();
    for (const auto& poly : region.polygons) {
      json pts = json::array();
      for (const auto& p : poly.vertices) pts.push_back({p.x, p.y});
      polys.push_back(std::move(pts));
    }
    regions.push_back({{"location", region.location},
                       {"artifact_type", ToString(region.artifact_type)},
                       {"explanation", region.explanation},
                       {"polygons", std::move(polys)}});
  }
  j["regions"] = std::move(regions);
  return j;
}

std::string ManifestToJsonl(const DatasetManifest& manifest) {
  std::string out;
  for (const auto& entry : manifest.entries) {
    out += EntryToJson(entry).dump();
    out += '\n';
  }
  return out;
}

void WriteManifest(const std::string& path, const DatasetManifest& manifest) {
  const std::string text = ManifestToJsonl(manifest);
  WriteFileBytes(path, std::span(reinterpret_cast<const uint8_t*>(text.data()),
                                 text.size()));
}

ManifestLoad ParseManifestJsonl(const std::string& text,
                                const std::string& base_dir) {
  ManifestLoad load;
  load.manifest.base_dir = base_dir;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++load.line_count;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      load.parse_violations.push_back(
          {"line " + std::to_string(line_no), "", "malformed JSON", line_no});
      continue;
    }
    try {
      if (auto entry = ParseEntry(j, line_no, load.parse_violations))
        load.manifest.entries.push_back(std::move(*entry));
    } catch (const json::exception& e) {
      load.parse_violations.push_back({"line " + std::to_string(line_no), "",
                                       "malformed field", line_no});
    }
  }
  return load;
}

ManifestLoad LoadManifest(const std::string& path, Split split) {
  const auto bytes = ReadFileBytes(path);
  auto load = ParseManifestJsonl(
      std::string(bytes.begin(), bytes.end()),
      std::filesystem::path(path).parent_path().string());
  load.manifest.split = split;
  return load;
}

ValidationReport ValidateManifest(DatasetManifest& manifest,
                                  const ValidateOptions& options) {
  ValidationReport report;
  auto& bad = report.violations;
  if (options.expected_count &&
      *options.expected_count != manifest.entries.size()) {
    bad.push_back({"", "", "entry count mismatch"});
  }
  std::unordered_set<std::string> seen;
  for (auto& entry : manifest.entries) {
    const std::string& id = entry.id;
    if (id.empty()) bad.push_back({id, "id", "empty id"});
    if (!seen.insert(id).second) bad.push_back({id, "id", "duplicate id"});
    if (entry.label == ImageLabel::kReal && !entry.regions.empty())
      bad.push_back({id, "regions", "real image has regions"});
    if (entry.width <= 0 || entry.height <= 0) {
      int w = 0;
      int h = 0;
      bool resolved = false;
      if (!entry.image_ref.empty()) {
        try {
          resolved = PeekPngSize(
              ReadImageRefBytes(entry.image_ref, manifest.base_dir), w, h);
        } catch (const Error&) {
        }
      }
      if (resolved) {
        entry.width = w;
        entry.height = h;
      } else {
        bad.push_back({id, "width", "unresolved dimensions"});
      }
    }
    for (size_t r = 0; r < entry.regions.size(); ++r) {
      auto& region = entry.regions[r];
      const std::string path = RegionPath(r);
      if (region.explanation.empty())
        bad.push_back({id, path + ".explanation", "empty explanation"});
      if (region.polygons.empty())
        bad.push_back({id, path + ".polygons", "region has no polygons"});
      for (size_t p = 0; p < region.polygons.size(); ++p) {
        auto& poly = region.polygons[p];
        const std::string ppath = path + ".polygons[" + std::to_string(p) + "]";
        if (poly.vertices.size() < 3) {
          bad.push_back({id, ppath, "degenerate polygon"});
          continue;
        }
        bool finite = true;
        for (const auto& v : poly.vertices)
          finite = finite && std::isfinite(v.x) && std::isfinite(v.y);
        if (!finite) {
          bad.push_back({id, ppath, "non-finite coordinate"});
          continue;
        }
        if (options.clamp && entry.width > 0 && entry.height > 0 &&
            ClampPolygon(poly, entry.width, entry.height) > 0) {
          report.warnings.push_back({id, ppath, "vertex clamped into image"});
        }
      }
    }
  }
  return report;
}

ValidationReport ValidateManifestFile(const std::string& path,
                                      const ValidateOptions& options) {
  auto load = LoadManifest(path);
  ValidateOptions opts = options;
  opts.expected_count.reset();
  auto report = ValidateManifest(load.manifest, opts);
  report.violations.insert(report.violations.begin(),
                           load.parse_violations.begin(),
                           load.parse_violations.end());
  // Count checks cover every non-blank line, including unparseable ones.
  if (options.expected_count && *options.expected_count != load.line_count)
    report.violations.insert(report.violations.begin(),
                             {"", "", "entry count mismatch"});
  return report;
}

DatasetManifest LoadValidManifest(const std::string& path, Split split) {
  auto load = LoadManifest(path, split);
  auto report = ValidateManifest(load.manifest);
  report.violations.insert(report.violations.begin(),
                           load.parse_violations.begin(),
                           load.parse_violations.end());
  if (!report.ok()) {
    std::string msg = "manifest " + path + " has " +
                      std::to_string(report.violations.size()) +
                      " violation(s); first: ";
    const auto& v = report.violations.front();
    msg += v.entry_id + " " + v.field_path + ": " + v.message;
    throw ValidationError(msg);
  }
  return std::move(load.manifest);
}

DatasetStats& DatasetStats::operator+=(const DatasetStats& other) {
  for (size_t i = 0; i < images_by_content.size(); ++i)
    images_by_content[i] += other.images_by_content[i];
  for (size_t i = 0; i < regions_by_artifact.size(); ++i)
    regions_by_artifact[i] += other.regions_by_artifact[i];
  real_images += other.real_images;
  fake_images += other.fake_images;
  total_images += other.total_images;
  total_regions += other.total_regions;
  total_polygons += other.total_polygons;
  return *this;
}

json DatasetStats::ToJson() const {
  json content = json::object();
  for (ContentType c : kAllContentTypes)
    content[std::string(ToString(c))] = images_by_content[static_cast<int>(c)];
  json artifacts = json::object();
  for (ArtifactType a : kAllArtifactTypes)
    artifacts[std::string(ToString(a))] =
        regions_by_artifact[static_cast<int>(a)];
  return {{"schema_version", 1},
          {"kind", "dataset_stats"},
          {"images_by_content_type", content},
          {"regions_by_artifact_type", artifacts},
          {"real_images", real_images},
          {"fake_images", fake_images},
          {"total_images", total_images},
          {"total_regions", total_regions},
          {"total_polygons", total_polygons}};
}

DatasetStats ComputeDatasetStats(const DatasetManifest& manifest) {
  DatasetStats stats;
  for (const auto& entry : manifest.entries) {
    ++stats.total_images;
    ++stats.images_by_content[static_cast<int>(entry.content_type)];
    if (entry.label == ImageLabel::kReal) {
      ++stats.real_images;
    } else {
      ++stats.fake_images;
    }
    for (const auto& region : entry.regions) {
      ++stats.total_regions;
      ++stats.regions_by_artifact[static_cast<int>(region.artifact_type)];
      stats.total_polygons += region.polygons.size();
    }
  }
  return stats;
}

}  // namespace forgeline
