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

#ifndef FORGELINE_IMAGE_H_
#define FORGELINE_IMAGE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forgeline/annotation.h"

namespace forgeline {

// 8-bit interleaved RGB raster.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // width * height * 3

  RgbImage() = default;
  RgbImage(int w, int h, uint8_t fill = 0);

  size_t PixelCount() const {
    return static_cast<size_t>(width) * static_cast<size_t>(height);
  }
  uint8_t* at(int row, int col) {
    return &pixels[(static_cast<size_t>(row) * width + col) * 3];
  }
  const uint8_t* at(int row, int col) const {
    return &pixels[(static_cast<size_t>(row) * width + col) * 3];
  }
  bool SameShape(const RgbImage& other) const {
    return width == other.width && height == other.height;
  }
  bool operator==(const RgbImage&) const = default;
};

// Mask of pixels where any channel differs.
BinaryMask DiffMask(const RgbImage& a, const RgbImage& b);

std::string Base64Encode(std::span<const uint8_t> bytes);
// Throws CodecError on characters outside the standard alphabet or bad
// padding.
std::vector<uint8_t> Base64Decode(std::string_view text);

// Lossless PNG (libpng). Decode throws CodecError on malformed payloads;
// grayscale and alpha inputs are converted to RGB.
std::vector<uint8_t> EncodePng(const RgbImage& image);
RgbImage DecodePng(std::span<const uint8_t> bytes);

// Single-channel mask as 8-bit grayscale PNG (0 / 255). Decode treats any
// nonzero gray value as foreground.
std::vector<uint8_t> EncodeMaskPng(const BinaryMask& mask);
BinaryMask DecodeMaskPng(std::span<const uint8_t> bytes);

// Reads width/height from a PNG header without decoding pixels.
bool PeekPngSize(std::span<const uint8_t> bytes, int& width, int& height);

// Base64 PNG as used on the wire. Decoding also accepts a data URI prefix.
std::string ImageToBase64Png(const RgbImage& image);
RgbImage ImageFromBase64Png(std::string_view text);

inline constexpr std::string_view kPngDataUriPrefix = "data:image/png;base64,";

// Resolves a manifest image ref: inline data URI or a path (relative to
// base_dir). Throws IoError for unreadable files.
std::vector<uint8_t> ReadImageRefBytes(const std::string& ref,
                                       const std::string& base_dir);
RgbImage LoadImageRef(const std::string& ref, const std::string& base_dir);

std::vector<uint8_t> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::span<const uint8_t> bytes);
void WritePng(const std::string& path, const RgbImage& image);

}  // namespace forgeline

#endif  // FORGELINE_IMAGE_H_
