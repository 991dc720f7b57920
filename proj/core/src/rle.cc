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

#include "forgeline/rle.h"

#include "forgeline/error.h"

namespace forgeline {

Rle RleEncode(const BinaryMask& mask) {
  Rle runs;
  bool current = false;
  int64_t length = 0;
  for (size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] != current) {
      runs.push_back(length);
      current = !current;
      length = 0;
    }
    ++length;
  }
  runs.push_back(length);
  return runs;
}

BinaryMask RleDecode(std::span<const int64_t> runs, int width, int height) {
  BinaryMask mask(width, height);
  const auto total = static_cast<int64_t>(mask.size());
  int64_t pos = 0;
  bool value = false;
  for (int64_t run : runs) {
    if (run < 0) throw CodecError("negative run length in RLE");
    if (run > total - pos) {
      throw CodecError("RLE runs exceed " + std::to_string(width) + "x" +
                       std::to_string(height) + " pixels");
    }
    if (value) {
      for (int64_t k = 0; k < run; ++k)
        mask.set_flat(static_cast<size_t>(pos + k), true);
    }
    pos += run;
    value = !value;
  }
  if (pos != total) {
    throw CodecError("RLE runs sum to " + std::to_string(pos) + ", expected " +
                     std::to_string(total));
  }
  return mask;
}

}  // namespace forgeline
