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

// Writes the synthetic paired fixture set used by the tests and examples.
//
//   forgeline_mkfixtures <dir> [count] [seed]

#include <cstdlib>
#include <iostream>

#include "forgeline/error.h"
#include "forgeline/fixtures.h"

int main(int argc, char** argv) {
  if (argc < 2 || argc > 4) {
    std::cerr << "usage: " << argv[0] << " <dir> [count] [seed]\n";
    return 64;
  }
  forgeline::FixtureSetOptions options;
  if (argc > 2) options.count = std::atoi(argv[2]);
  if (argc > 3) options.seed = std::strtoull(argv[3], nullptr, 10);
  try {
    const auto manifest = forgeline::MakeFixtureSet(argv[1], options);
    std::cout << "wrote " << manifest.entries.size() << " fixtures to " << argv[1] << "\n";
  } catch (const forgeline::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
