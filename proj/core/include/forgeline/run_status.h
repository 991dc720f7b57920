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

#ifndef FORGELINE_RUN_STATUS_H_
#define FORGELINE_RUN_STATUS_H_

#include <exception>
#include <string>
#include <string_view>

#include "forgeline/image.h"

namespace forgeline {

enum class RunStatus { kCompleted, kEarlyStop, kAborted };

std::string_view ToString(RunStatus status);  // "completed", ...

// Coarse class of the exception that aborted a run: "transport",
// "protocol", "config", "validation" or "other". The CLI maps the first two
// to the backend-failure exit code.
std::string ErrorKind(const std::exception& e);

// 16 hex digits of FNV-1a over width, height and pixel bytes. Used in run
// logs so identical runs produce identical logs.
std::string ImageHash(const RgbImage& image);

}  // namespace forgeline

#endif  // FORGELINE_RUN_STATUS_H_
