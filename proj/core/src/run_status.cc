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

#include "forgeline/run_status.h"

#include <cstdio>

#include "forgeline/error.h"
#include "forgeline/rng.h"

namespace forgeline {

std::string_view ToString(RunStatus status) {
  switch (status) {
    case RunStatus::kCompleted:
      return "completed";
    case RunStatus::kEarlyStop:
      return "early_stop";
    case RunStatus::kAborted:
      return "aborted";
  }
  return "";
}

std::string ErrorKind(const std::exception& e) {
  if (dynamic_cast<const TransportError*>(&e)) return "transport";
  if (dynamic_cast<const ProtocolError*>(&e)) return "protocol";
  if (dynamic_cast<const ConfigError*>(&e)) return "config";
  if (dynamic_cast<const ValidationError*>(&e)) return "validation";
  return "other";
}

std::string ImageHash(const RgbImage& image) {
  const std::string dims =
      std::to_string(image.width) + "x" + std::to_string(image.height);
  uint64_t h = Fnv1a64(dims);
  h = Fnv1a64(std::string_view(reinterpret_cast<const char*>(image.pixels.data()),
                               image.pixels.size()),
              h);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace forgeline
