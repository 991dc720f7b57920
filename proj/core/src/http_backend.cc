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

#include "forgeline/http_backend.h"

#include <chrono>
#include <mutex>
#include <thread>

#include "httplib.h"

#include "forgeline/error.h"
#include "forgeline/json_schema.h"

namespace forgeline {

using nlohmann::json;

namespace {

std::string SchemaStem(Role role) {
  // "/analyze" -> "analyze"
  return std::string(EndpointPath(role).substr(1));
}

}  // namespace

json ContextToJson(const CallContext& ctx) {
  json j = json::object();
  if (!ctx.subject.empty()) j["subject"] = ctx.subject;
  j["seed"] = ctx.seed;
  return j;
}

CallContext ContextFromJson(const json& request) {
  CallContext ctx;
  ctx.subject = request.value("subject", "");
  ctx.seed = request.value("seed", uint64_t{0});
  return ctx;
}

HttpEndpoint::HttpEndpoint(Role role, EndpointConfig config)
    : role_(role),
      config_(std::move(config)),
      limiter_(std::make_unique<InFlightLimiter>(config_.max_in_flight)) {
  const std::string& url = config_.url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || !url.starts_with("http"))
    throw ConfigError("endpoint URL must be http(s)://host:port, got " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  if (path_start != std::string::npos) {
    path_prefix_ = url.substr(path_start);
    while (path_prefix_.ends_with('/')) path_prefix_.pop_back();
  }
  identity_ = std::string(ToString(role)) + "@" + url;
  if (config_.attempts < 1) config_.attempts = 1;
}

json HttpEndpoint::Call(const json& request) const {
  return Send("POST", std::string(EndpointPath(role_)), &request,
              SchemaStem(role_) + ".response");
}

json HttpEndpoint::Health() const {
  return Send("GET", "/health", nullptr, "health.response");
}

json HttpEndpoint::Send(const std::string& method, const std::string& path,
                        const json* body, const std::string& schema) const {
  InFlightLimiter::Slot slot(*limiter_);
  const std::string full_path = path_prefix_ + path;
  const std::string payload = body ? body->dump() : std::string();
  std::string last_error;
  for (int attempt = 0; attempt < config_.attempts; ++attempt) {
    if (attempt > 0 && !config_.backoff_ms.empty()) {
      const size_t k = std::min(static_cast<size_t>(attempt - 1),
                                config_.backoff_ms.size() - 1);
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config_.backoff_ms[k]));
    }
    httplib::Client client(scheme_host_port_);
    const auto timeout = std::chrono::milliseconds(config_.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Result res =
        method == "GET"
            ? client.Get(full_path)
            : client.Post(full_path, payload, "application/json");
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP " + std::to_string(res->status) + ": " +
                   res->body.substr(0, 200);
      continue;
    }
    json parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded())
      throw ProtocolError(identity_, "response is not JSON");
    const auto errors = ValidateJson(ShippedSchema(schema), parsed);
    if (!errors.empty())
      throw ProtocolError(identity_, "response violates " + schema + ": " +
                                         errors.front());
    return parsed;
  }
  throw TransportError(identity_, last_error + " (after " +
                                      std::to_string(config_.attempts) +
                                      " attempts)");
}

namespace {

RgbImage DecodeImageField(const HttpEndpoint& ep, const json& response) {
  try {
    return ImageFromBase64Png(response.at("image").get<std::string>());
  } catch (const CodecError& e) {
    throw ProtocolError(ep.identity(), e.what());
  }
}

class HttpAnalyzer : public Analyzer {
 public:
  explicit HttpAnalyzer(const EndpointConfig& c) : ep_(Role::kAnalyzer, c) {}
  AnalyzerReport Analyze(const RgbImage& image, const CallContext& ctx) override {
    json req = ContextToJson(ctx);
    req["image"] = ImageToBase64Png(image);
    const json res = ep_.Call(req);
    try {
      return ReportFromJson(res, image.width, image.height);
    } catch (const Error& e) {
      throw ProtocolError(ep_.identity(), e.what());
    }
  }

 private:
  HttpEndpoint ep_;
};

class HttpGenerator : public Generator {
 public:
  explicit HttpGenerator(const EndpointConfig& c) : ep_(Role::kGenerator, c) {}
  RgbImage Generate(const std::string& prompt, int width, int height,
                    const CallContext& ctx) override {
    json req = ContextToJson(ctx);
    req["prompt"] = prompt;
    req["width"] = width;
    req["height"] = height;
    return DecodeImageField(ep_, ep_.Call(req));
  }

 private:
  HttpEndpoint ep_;
};

class HttpInpainter : public Inpainter {
 public:
  explicit HttpInpainter(const EndpointConfig& c) : ep_(Role::kInpainter, c) {}
  RgbImage Inpaint(const RgbImage& image, const BinaryMask& mask,
                   const std::string& explanation,
                   const CallContext& ctx) override {
    json req = ContextToJson(ctx);
    req["image"] = ImageToBase64Png(image);
    req["mask"] = MaskToJson(mask);
    req["explanation"] = explanation;
    return DecodeImageField(ep_, ep_.Call(req));
  }

 private:
  HttpEndpoint ep_;
};

class HttpReviser : public Reviser {
 public:
  explicit HttpReviser(const EndpointConfig& c) : ep_(Role::kReviser, c) {}
  std::string Revise(const std::string& prompt,
                     const std::vector<MemoryEntry>& memory) override {
    json mem = json::array();
    for (const auto& m : memory)
      mem.push_back({{"iteration", m.iteration}, {"explanation", m.explanation}});
    return ep_.Call({{"prompt", prompt}, {"memory", mem}})
        .at("prompt")
        .get<std::string>();
  }

 private:
  HttpEndpoint ep_;
};

class HttpCaptioner : public Captioner {
 public:
  explicit HttpCaptioner(const EndpointConfig& c) : ep_(Role::kCaptioner, c) {}
  std::string Caption(const RgbImage& image, const CallContext& ctx) override {
    json req = ContextToJson(ctx);
    req["image"] = ImageToBase64Png(image);
    return ep_.Call(req).at("caption").get<std::string>();
  }

 private:
  HttpEndpoint ep_;
};

class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(const EndpointConfig& c) : ep_(Role::kEmbedder, c) {}

  std::vector<double> EmbedText(const std::string& text) override {
    return Check(ep_.Call({{"text", text}}));
  }
  std::vector<double> EmbedImage(const RgbImage& image) override {
    return Check(ep_.Call({{"image", ImageToBase64Png(image)}}));
  }
  int dim() const override {
    std::call_once(dim_once_, [&] { dim_ = ep_.Health().value("dim", 0); });
    return dim_;
  }

 private:
  std::vector<double> Check(const json& res) {
    auto vec = res.at("vector").get<std::vector<double>>();
    if (static_cast<int>(vec.size()) != res.at("dim").get<int>())
      throw ProtocolError(ep_.identity(), "vector length != response dim");
    if (static_cast<int>(vec.size()) != dim())
      throw ProtocolError(ep_.identity(), "vector length != /health dim");
    return vec;
  }

  HttpEndpoint ep_;
  mutable std::once_flag dim_once_;
  mutable int dim_ = 0;
};

class HttpScorer : public Scorer {
 public:
  explicit HttpScorer(const EndpointConfig& c) : ep_(Role::kScorer, c) {}
  double Score(const RgbImage& image, const CallContext& ctx) override {
    json req = ContextToJson(ctx);
    req["image"] = ImageToBase64Png(image);
    return ep_.Call(req).at("score").get<double>();
  }

 private:
  HttpEndpoint ep_;
};

class HttpJudge : public Judge {
 public:
  explicit HttpJudge(const EndpointConfig& c) : ep_(Role::kJudge, c) {}
  std::string Assess(const RgbImage& image, const std::string& prompt,
                     const CallContext& ctx) override {
    json req = ContextToJson(ctx);
    req["image"] = ImageToBase64Png(image);
    req["prompt"] = prompt;
    return ep_.Call(req).at("response").get<std::string>();
  }

 private:
  HttpEndpoint ep_;
};

}  // namespace

std::shared_ptr<Analyzer> MakeHttpAnalyzer(const EndpointConfig& c) {
  return std::make_shared<HttpAnalyzer>(c);
}
std::shared_ptr<Generator> MakeHttpGenerator(const EndpointConfig& c) {
  return std::make_shared<HttpGenerator>(c);
}
std::shared_ptr<Inpainter> MakeHttpInpainter(const EndpointConfig& c) {
  return std::make_shared<HttpInpainter>(c);
}
std::shared_ptr<Reviser> MakeHttpReviser(const EndpointConfig& c) {
  return std::make_shared<HttpReviser>(c);
}
std::shared_ptr<Captioner> MakeHttpCaptioner(const EndpointConfig& c) {
  return std::make_shared<HttpCaptioner>(c);
}
std::shared_ptr<Embedder> MakeHttpEmbedder(const EndpointConfig& c) {
  return std::make_shared<HttpEmbedder>(c);
}
std::shared_ptr<Scorer> MakeHttpScorer(const EndpointConfig& c) {
  return std::make_shared<HttpScorer>(c);
}
std::shared_ptr<Judge> MakeHttpJudge(const EndpointConfig& c) {
  return std::make_shared<HttpJudge>(c);
}

}  // namespace forgeline
