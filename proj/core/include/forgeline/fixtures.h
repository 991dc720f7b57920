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

#ifndef FORGELINE_FIXTURES_H_
#define FORGELINE_FIXTURES_H_

#include <cstdint>
#include <string>

#include "forgeline/annotation.h"

namespace forgeline {

struct FixtureSetOptions {
  int count = 10;
  int width = 48;
  int height = 40;
  uint64_t seed = 0;
};

// Writes a paired fixture set into `dir`: for each entry a clean reference
// PNG, a synthetic PNG equal to the reference except that channel 0 is
// XORed with 0x80 inside every annotated region, and one line of
// manifest.jsonl. Every entry is fake with two or three pairwise disjoint
// convex regions. Returns the manifest with base_dir = dir. Deterministic
// in the options.
DatasetManifest MakeFixtureSet(const std::string& dir,
                               const FixtureSetOptions& options = {});

}  // namespace forgeline

#endif  // FORGELINE_FIXTURES_H_
