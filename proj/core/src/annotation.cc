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

#include "forgeline/annotation.h"

#include <algorithm>
#include <numeric>

#include "forgeline/error.h"

namespace forgeline {
namespace {

template <typename Enum, size_t N>
std::optional<Enum> Lookup(std::string_view text,
                           const std::pair<std::string_view, Enum> (&table)[N]) {
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  return std::nullopt;
}

constexpr std::pair<std::string_view, ArtifactType> kArtifactNames[] = {
    {"physics", ArtifactType::kPhysics},
    {"distortion", ArtifactType::kDistortion},
    {"structure", ArtifactType::kStructure}};
constexpr std::pair<std::string_view, ImageLabel> kLabelNames[] = {
    {"real", ImageLabel::kReal}, {"fake", ImageLabel::kFake}};
constexpr std::pair<std::string_view, ContentType> kContentNames[] = {
    {"human", ContentType::kHuman},
    {"object", ContentType::kObject},
    {"animal", ContentType::kAnimal},
    {"scene", ContentType::kScene}};
constexpr std::pair<std::string_view, Split> kSplitNames[] = {
    {"train", Split::kTrain}, {"test", Split::kTest},
    {"unsplit", Split::kUnsplit}};

}  // namespace

std::string_view ToString(ArtifactType type) {
  return kArtifactNames[static_cast<int>(type)].first;
}
std::string_view ToString(ImageLabel label) {
  return kLabelNames[static_cast<int>(label)].first;
}
std::string_view ToString(ContentType type) {
  return kContentNames[static_cast<int>(type)].first;
}
std::string_view ToString(Split split) {
  return kSplitNames[static_cast<int>(split)].first;
}

std::optional<ArtifactType> ParseArtifactType(std::string_view text) {
  return Lookup(text, kArtifactNames);
}
std::optional<ImageLabel> ParseImageLabel(std::string_view text) {
  return Lookup(text, kLabelNames);
}
std::optional<ContentType> ParseContentType(std::string_view text) {
  return Lookup(text, kContentNames);
}
std::optional<Split> ParseSplit(std::string_view text) {
  return Lookup(text, kSplitNames);
}

BinaryMask::BinaryMask(int width, int height)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw DimensionError("mask dimensions must be >= 1, got " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  bits_.assign(static_cast<size_t>(width) * static_cast<size_t>(height), 0);
}

size_t BinaryMask::Area() const {
  return static_cast<size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

BinaryMask& BinaryMask::operator|=(const BinaryMask& other) {
  if (!SameShape(other)) throw DimensionError("mask shape mismatch in OR");
  for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

BinaryMask& BinaryMask::operator&=(const BinaryMask& other) {
  if (!SameShape(other)) throw DimensionError("mask shape mismatch in AND");
  for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
  return *this;
}

BinaryMask BinaryMask::Complement() const {
  BinaryMask out = *this;
  for (auto& b : out.bits_) b = 1 - b;
  return out;
}

}  // namespace forgeline
