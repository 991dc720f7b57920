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

#include "forgeline/backend_server.h"

#include "httplib.h"

#include "forgeline/error.h"
#include "forgeline/http_backend.h"
#include "forgeline/json_schema.h"

namespace forgeline {

using nlohmann::json;

struct BackendServer::Impl {
  BackendSuite suite;
  std::string model_id;
  httplib::Server server;
  std::thread thread;
  int port = 0;
};

namespace {

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json Handle(const BackendSuite& suite, Role role, const json& req) {
  const CallContext ctx = ContextFromJson(req);
  auto image = [&] { return ImageFromBase64Png(req.at("image").get<std::string>()); };
  switch (role) {
    case Role::kAnalyzer:
      return ReportToJson(suite.analyzer->Analyze(image(), ctx));
    case Role::kGenerator:
      return {{"image", ImageToBase64Png(suite.generator->Generate(
                            req.at("prompt").get<std::string>(),
                            req.at("width").get<int>(),
                            req.at("height").get<int>(), ctx))}};
    case Role::kInpainter:
      return {{"image", ImageToBase64Png(suite.inpainter->Inpaint(
                            image(), MaskFromJson(req.at("mask")),
                            req.at("explanation").get<std::string>(), ctx))}};
    case Role::kReviser: {
      std::vector<MemoryEntry> memory;
      for (const auto& m : req.at("memory"))
        memory.push_back({m.at("iteration").get<int>(),
                          m.at("explanation").get<std::string>()});
      return {{"prompt", suite.reviser->Revise(req.at("prompt").get<std::string>(),
                                               memory)}};
    }
    case Role::kCaptioner:
      return {{"caption", suite.captioner->Caption(image(), ctx)}};
    case Role::kEmbedder: {
      const auto vec = req.contains("text")
                           ? suite.embedder->EmbedText(req["text"].get<std::string>())
                           : suite.embedder->EmbedImage(image());
      return {{"vector", vec}, {"dim", vec.size()}, {"model_id", "hash-embedder-32"}};
    }
    case Role::kScorer:
      return {{"score", suite.scorer->Score(image(), ctx)}};
    case Role::kJudge:
      return {{"response", suite.judge->Assess(
                               image(), req.at("prompt").get<std::string>(), ctx)}};
  }
  return json::object();
}

}  // namespace

BackendServer::BackendServer(BackendSuite suite, std::string model_id)
    : impl_(std::make_unique<Impl>()) {
  impl_->suite = std::move(suite);
  impl_->model_id = std::move(model_id);
  Impl* impl = impl_.get();
  impl->server.Get("/health", [impl](const httplib::Request&, httplib::Response& res) {
    json roles = json::array();
    for (Role r : kAllRoles)
      if (impl->suite.Has(r)) roles.push_back(ToString(r));
    json body = {{"status", "ok"}, {"roles", roles}, {"model_id", impl->model_id}};
    if (impl->suite.embedder) body["dim"] = impl->suite.embedder->dim();
    Reply(res, 200, body);
  });
  for (Role role : kAllRoles) {
    if (!impl->suite.Has(role)) continue;
    const std::string path(EndpointPath(role));
    impl->server.Post(path, [impl, role](const httplib::Request& http_req,
                                         httplib::Response& res) {
      const json req = json::parse(http_req.body, nullptr, false);
      if (req.is_discarded()) {
        Reply(res, 400, {{"error", "request is not JSON"}});
        return;
      }
      const std::string schema = std::string(EndpointPath(role).substr(1)) + ".request";
      const auto errors = ValidateJson(ShippedSchema(schema), req);
      if (!errors.empty()) {
        Reply(res, 400, {{"error", errors.front()}});
        return;
      }
      try {
        Reply(res, 200, Handle(impl->suite, role, req));
      } catch (const CodecError& e) {
        Reply(res, 400, {{"error", e.what()}});
      } catch (const std::exception& e) {
        Reply(res, 500, {{"error", e.what()}});
      }
    });
  }
}

BackendServer::~BackendServer() { Stop(); }

int BackendServer::Start(int port) {
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
  } else {
    impl_->port = impl_->server.bind_to_port("127.0.0.1", port) ? port : -1;
  }
  if (impl_->port <= 0) throw ConfigError("cannot bind backend server port");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void BackendServer::Stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string BackendServer::url() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port);
}

}  // namespace forgeline
