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

#include <gtest/gtest.h>

#include "forgeline/error.h"
#include "test_util.h"

namespace forgeline {
namespace {

TEST(RleTest, AllZero) {
  EXPECT_EQ(RleEncode(BinaryMask(3, 3)), (Rle{9}));
}

TEST(RleTest, AllOneStartsWithZeroRun) {
  BinaryMask m(2, 2);
  for (size_t i = 0; i < m.size(); ++i) m.set_flat(i, true);
  EXPECT_EQ(RleEncode(m), (Rle{0, 4}));
}

TEST(RleTest, RowMajorRuns) {
  BinaryMask m(3, 2);
  m.set(0, 2, true);
  m.set(1, 0, true);
  m.set(1, 2, true);
  EXPECT_EQ(RleEncode(m), (Rle{2, 2, 1, 1}));
}

TEST(RleTest, RandomRoundTrip) {
  SplitMix64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    const int w = 1 + rng.Below(40), h = 1 + rng.Below(40);
    const BinaryMask m = testing::RandomMask(rng, w, h, rng.Uniform());
    ASSERT_EQ(RleDecode(RleEncode(m), w, h), m);
  }
}

TEST(RleTest, SumMismatchIsCodecError) {
  const Rle runs = {3, 4};
  EXPECT_THROW(RleDecode(runs, 3, 3), CodecError);
}

TEST(RleTest, NegativeRunIsCodecError) {
  const Rle runs = {10, -1};
  EXPECT_THROW(RleDecode(runs, 3, 3), CodecError);
}

}  // namespace
}  // namespace forgeline
