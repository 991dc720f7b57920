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

#ifndef FORGELINE_BACKEND_SERVER_H_
#define FORGELINE_BACKEND_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "forgeline/backend_suite.h"

namespace forgeline {

// Serves the roles present in a suite over the HTTP wire protocol. Requests
// are validated against the shipped request schemas (400 on violation);
// backend exceptions become 500 with {"error": ...}. Used for sidecar
// development and for protocol tests.
class BackendServer {
 public:
  explicit BackendServer(BackendSuite suite, std::string model_id = "forgeline-mock");
  ~BackendServer();
  BackendServer(const BackendServer&) = delete;
  BackendServer& operator=(const BackendServer&) = delete;

  // Binds 127.0.0.1 on `port` (0 picks a free port) and serves on a
  // background thread. Returns the bound port.
  int Start(int port = 0);
  void Stop();

  std::string url() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace forgeline

#endif  // FORGELINE_BACKEND_SERVER_H_
