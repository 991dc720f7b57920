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

#ifndef FORGELINE_RLE_H_
#define FORGELINE_RLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "forgeline/annotation.h"

namespace forgeline {

// Row-major alternating run lengths, starting with the count of leading
// zeros (which may be 0). An all-zero 3x3 mask is [9]; all-one 2x2 is [0, 4].
using Rle = std::vector<int64_t>;

Rle RleEncode(const BinaryMask& mask);

// Throws CodecError for negative runs or runs not summing to width*height,
// DimensionError for non-positive dimensions.
BinaryMask RleDecode(std::span<const int64_t> runs, int width, int height);

}  // namespace forgeline

#endif  // FORGELINE_RLE_H_
