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

#ifndef FORGELINE_HTTP_BACKEND_H_
#define FORGELINE_HTTP_BACKEND_H_

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "forgeline/backend_suite.h"
#include "forgeline/backends.h"
#include "forgeline/concurrency.h"

namespace forgeline {

// JSON-over-HTTP client for one role endpoint. Shareable across threads;
// in-flight requests are bounded by EndpointConfig::max_in_flight.
//
// Connection failures, timeouts and non-2xx answers raise TransportError
// once the attempt budget is spent (sleeping backoff_ms[k] between
// attempts). A 2xx body that is not JSON or fails the shipped response
// schema raises ProtocolError immediately. Requests are treated as
// idempotent.
class HttpEndpoint {
 public:
  HttpEndpoint(Role role, EndpointConfig config);

  // POST to the role's path ("/analyze", ...).
  nlohmann::json Call(const nlohmann::json& request) const;
  // GET /health.
  nlohmann::json Health() const;

  Role role() const { return role_; }
  const std::string& identity() const { return identity_; }

 private:
  nlohmann::json Send(const std::string& method, const std::string& path,
                      const nlohmann::json* body,
                      const std::string& schema) const;

  Role role_;
  EndpointConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::string identity_;
  std::unique_ptr<InFlightLimiter> limiter_;
};

// Role implementations speaking the wire protocol.
std::shared_ptr<Analyzer> MakeHttpAnalyzer(const EndpointConfig& config);
std::shared_ptr<Generator> MakeHttpGenerator(const EndpointConfig& config);
std::shared_ptr<Inpainter> MakeHttpInpainter(const EndpointConfig& config);
std::shared_ptr<Reviser> MakeHttpReviser(const EndpointConfig& config);
std::shared_ptr<Captioner> MakeHttpCaptioner(const EndpointConfig& config);
// Fetches the advertised dimension from /health lazily; vectors of any other
// length are a ProtocolError.
std::shared_ptr<Embedder> MakeHttpEmbedder(const EndpointConfig& config);
std::shared_ptr<Scorer> MakeHttpScorer(const EndpointConfig& config);
std::shared_ptr<Judge> MakeHttpJudge(const EndpointConfig& config);

// Wire request builders shared by the client and the in-process server.
nlohmann::json ContextToJson(const CallContext& ctx);
CallContext ContextFromJson(const nlohmann::json& request);

}  // namespace forgeline

#endif  // FORGELINE_HTTP_BACKEND_H_
