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

#ifndef FORGELINE_ANNOTATION_H_
#define FORGELINE_ANNOTATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace forgeline {

enum class ArtifactType { kPhysics, kDistortion, kStructure };
enum class ImageLabel { kReal, kFake };
enum class ContentType { kHuman, kObject, kAnimal, kScene };
enum class Split { kTrain, kTest, kUnsplit };

// Canonical lowercase names ("physics", "fake", "human", "test").
std::string_view ToString(ArtifactType type);
std::string_view ToString(ImageLabel label);
std::string_view ToString(ContentType type);
std::string_view ToString(Split split);

// Strict parsers. Return nullopt for anything but the canonical names.
std::optional<ArtifactType> ParseArtifactType(std::string_view text);
std::optional<ImageLabel> ParseImageLabel(std::string_view text);
std::optional<ContentType> ParseContentType(std::string_view text);
std::optional<Split> ParseSplit(std::string_view text);

inline constexpr ArtifactType kAllArtifactTypes[] = {
    ArtifactType::kPhysics, ArtifactType::kDistortion,
    ArtifactType::kStructure};
inline constexpr ContentType kAllContentTypes[] = {
    ContentType::kHuman, ContentType::kObject, ContentType::kAnimal,
    ContentType::kScene};

// Pixel coordinates, origin top-left, x to the right, y downward.
struct Point {
  double x = 0;
  double y = 0;
  bool operator==(const Point&) const = default;
};

struct Polygon {
  std::vector<Point> vertices;
  bool operator==(const Polygon&) const = default;
};

// Row-major {0,1} raster. Pixel (row, col) lives at bits[row * width + col].
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);  // all zero

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return bits_.size(); }

  bool at(int row, int col) const { return bits_[Index(row, col)] != 0; }
  void set(int row, int col, bool value) {
    bits_[Index(row, col)] = value ? 1 : 0;
  }
  bool operator[](size_t i) const { return bits_[i] != 0; }
  void set_flat(size_t i, bool value) { bits_[i] = value ? 1 : 0; }

  size_t Area() const;
  bool SameShape(const BinaryMask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  // In-place set operations; shapes must match.
  BinaryMask& operator|=(const BinaryMask& other);
  BinaryMask& operator&=(const BinaryMask& other);
  BinaryMask Complement() const;

  bool operator==(const BinaryMask&) const = default;

 private:
  size_t Index(int row, int col) const {
    return static_cast<size_t>(row) * static_cast<size_t>(width_) +
           static_cast<size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> bits_;
};

struct ArtifactRegion {
  std::string location;  // free-text phrase, e.g. "the cat's ears"
  std::vector<Polygon> polygons;
  ArtifactType artifact_type = ArtifactType::kStructure;
  std::string explanation;
};

struct AnnotatedImage {
  std::string id;
  // File path (relative paths resolve against the manifest directory) or an
  // inline "data:image/png;base64," URI.
  std::string image_ref;
  ImageLabel label = ImageLabel::kFake;
  ContentType content_type = ContentType::kHuman;
  std::vector<ArtifactRegion> regions;
  std::optional<std::string> generator;
  // Image dimensions; resolved from the PNG header when not in the manifest.
  int width = 0;
  int height = 0;
  // Paired artifact-free rendering, used by fixtures and mock backends.
  std::optional<std::string> reference_ref;
};

struct DatasetManifest {
  std::vector<AnnotatedImage> entries;
  Split split = Split::kUnsplit;
  // Directory that relative image refs resolve against.
  std::string base_dir;
};

}  // namespace forgeline

#endif  // FORGELINE_ANNOTATION_H_
