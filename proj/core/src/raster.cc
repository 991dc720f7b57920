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

#include "forgeline/raster.h"

#include <algorithm>
#include <cmath>

#include "forgeline/error.h"

namespace forgeline {

void CheckPolygon(const Polygon& polygon) {
  if (polygon.vertices.size() < 3) {
    throw ValidationError("degenerate polygon: " +
                          std::to_string(polygon.vertices.size()) +
                          " vertices, need >= 3");
  }
  for (const Point& p : polygon.vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ValidationError("non-finite polygon coordinate");
    }
  }
}

BinaryMask RasterizePolygon(const Polygon& polygon, int width, int height) {
  CheckPolygon(polygon);
  BinaryMask mask(width, height);
  const auto& v = polygon.vertices;
  const size_t n = v.size();
  std::vector<double> crossings;
  for (int row = 0; row < height; ++row) {
    const double py = row + 0.5;
    crossings.clear();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
      if ((v[i].y > py) != (v[j].y > py)) {
        crossings.push_back((v[j].x - v[i].x) * (py - v[i].y) /
                                (v[j].y - v[i].y) +
                            v[i].x);
      }
    }
    if (crossings.empty()) continue;
    std::sort(crossings.begin(), crossings.end());
    // Center is inside iff an odd number of crossings lie strictly right.
    size_t first_right = 0;
    for (int col = 0; col < width; ++col) {
      const double px = col + 0.5;
      while (first_right < crossings.size() && !(px < crossings[first_right]))
        ++first_right;
      if ((crossings.size() - first_right) % 2 == 1) mask.set(row, col, true);
    }
  }
  return mask;
}

BinaryMask RasterizePolygons(std::span<const Polygon> polygons, int width,
                             int height) {
  BinaryMask mask(width, height);
  for (const Polygon& p : polygons) mask |= RasterizePolygon(p, width, height);
  return mask;
}

BinaryMask RasterizeRegion(const ArtifactRegion& region, int width,
                           int height) {
  return RasterizePolygons(region.polygons, width, height);
}

BinaryMask GroundTruthMask(const AnnotatedImage& image) {
  BinaryMask mask(image.width, image.height);
  for (const auto& region : image.regions)
    mask |= RasterizeRegion(region, image.width, image.height);
  return mask;
}

int ClampPolygon(Polygon& polygon, int width, int height) {
  int moved = 0;
  for (Point& p : polygon.vertices) {
    const double x = std::clamp(p.x, 0.0, static_cast<double>(width));
    const double y = std::clamp(p.y, 0.0, static_cast<double>(height));
    moved += (x != p.x) + (y != p.y);
    p = {x, y};
  }
  return moved;
}

double PolygonArea(const Polygon& polygon) {
  const auto& v = polygon.vertices;
  double twice = 0;
  for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
    twice += v[j].x * v[i].y - v[i].x * v[j].y;
  return std::abs(twice) / 2;
}

double PolygonPerimeter(const Polygon& polygon) {
  const auto& v = polygon.vertices;
  double total = 0;
  for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
    total += std::hypot(v[i].x - v[j].x, v[i].y - v[j].y);
  return total;
}

BinaryMask Dilate(const BinaryMask& mask, int radius) {
  if (radius <= 0) return mask;
  const int w = mask.width();
  const int h = mask.height();
  // Separable square max filter: rows, then columns.
  BinaryMask rows(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      bool any = false;
      for (int k = std::max(0, c - radius); k <= std::min(w - 1, c + radius);
           ++k) {
        if (mask.at(r, k)) {
          any = true;
          break;
        }
      }
      rows.set(r, c, any);
    }
  }
  BinaryMask out(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      bool any = false;
      for (int k = std::max(0, r - radius); k <= std::min(h - 1, r + radius);
           ++k) {
        if (rows.at(k, c)) {
          any = true;
          break;
        }
      }
      out.set(r, c, any);
    }
  }
  return out;
}

}  // namespace forgeline
