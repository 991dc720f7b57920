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

#ifndef FORGELINE_RASTER_H_
#define FORGELINE_RASTER_H_

#include <span>
#include <string>
#include <vector>

#include "forgeline/annotation.h"

namespace forgeline {

// Throws ValidationError for fewer than 3 vertices or non-finite coordinates.
void CheckPolygon(const Polygon& polygon);

// Pixel (row, col) is set iff its center (col + 0.5, row + 0.5) is inside the
// polygon under the even-odd rule. Crossing test: an edge counts when it
// straddles the center's y half-open, and the center lies strictly left of
// the intersection.
BinaryMask RasterizePolygon(const Polygon& polygon, int width, int height);

// Each polygon rasterized independently, then OR-combined.
BinaryMask RasterizePolygons(std::span<const Polygon> polygons, int width,
                             int height);
BinaryMask RasterizeRegion(const ArtifactRegion& region, int width,
                           int height);

// Union of every region of the image. Dimensions come from the entry.
BinaryMask GroundTruthMask(const AnnotatedImage& image);

// Clamps vertices into [0, width] x [0, height]. Returns the number of
// coordinates that moved.
int ClampPolygon(Polygon& polygon, int width, int height);

// Shoelace area and perimeter, in pixel units.
double PolygonArea(const Polygon& polygon);
double PolygonPerimeter(const Polygon& polygon);

// Morphological dilation with the 8-neighborhood applied `radius` times,
// i.e. a (2r+1)x(2r+1) square structuring element.
BinaryMask Dilate(const BinaryMask& mask, int radius);

}  // namespace forgeline

#endif  // FORGELINE_RASTER_H_
