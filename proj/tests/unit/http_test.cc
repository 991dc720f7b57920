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

#include <chrono>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "forgeline/backend_server.h"
#include "forgeline/backend_suite.h"
#include "forgeline/conformance.h"
#include "forgeline/error.h"
#include "forgeline/http_backend.h"
#include "forgeline/manifest.h"
#include "forgeline/text_metrics.h"
#include "test_util.h"

namespace forgeline {
namespace {

using testing::Fixture;

EndpointConfig FastEndpoint(const std::string& url) {
  EndpointConfig ep;
  ep.url = url;
  ep.timeout_ms = 2000;
  ep.attempts = 2;
  ep.backoff_ms = {10};
  return ep;
}

class HttpRoundTripTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    manifest_ = new DatasetManifest(LoadValidManifest(Fixture("clean10/manifest.jsonl")));
    local_ = new BackendSuite(BuildMockSuite(*manifest_, {}));
    server_ = new BackendServer(BuildMockSuite(*manifest_, {}));
    server_->Start();
    BackendConfig remote;
    for (Role r : kAllRoles) remote.endpoints[r] = FastEndpoint(server_->url());
    std::vector<Role> all(std::begin(kAllRoles), std::end(kAllRoles));
    remote_ = new BackendSuite(BuildSuite(remote, nullptr, all));
  }
  static void TearDownTestSuite() {
    delete remote_;
    delete server_;
    delete local_;
    delete manifest_;
  }

  static RgbImage Image(const std::string& id) {
    for (const auto& e : manifest_->entries)
      if (e.id == id) return LoadImageRef(e.image_ref, manifest_->base_dir);
    throw std::runtime_error("no fixture " + id);
  }

  static DatasetManifest* manifest_;
  static BackendSuite* local_;
  static BackendServer* server_;
  static BackendSuite* remote_;
};

DatasetManifest* HttpRoundTripTest::manifest_ = nullptr;
BackendSuite* HttpRoundTripTest::local_ = nullptr;
BackendServer* HttpRoundTripTest::server_ = nullptr;
BackendSuite* HttpRoundTripTest::remote_ = nullptr;

TEST_F(HttpRoundTripTest, AnalyzerMatchesLocal) {
  const RgbImage img = Image("fx03");
  const CallContext ctx{"fx03", 1};
  EXPECT_EQ(ReportToJson(remote_->analyzer->Analyze(img, ctx)),
            ReportToJson(local_->analyzer->Analyze(img, ctx)));
}

TEST_F(HttpRoundTripTest, GeneratorAndInpainterMatchLocal) {
  const RgbImage img = Image("fx04");
  const CallContext ctx{"fx04", 0};
  EXPECT_EQ(remote_->generator->Generate("p Avoid: x", img.width, img.height, ctx),
            local_->generator->Generate("p Avoid: x", img.width, img.height, ctx));
  BinaryMask mask(img.width, img.height);
  for (int c = 0; c < img.width; ++c) mask.set(10, c, true);
  EXPECT_EQ(remote_->inpainter->Inpaint(img, mask, "fix", ctx),
            local_->inpainter->Inpaint(img, mask, "fix", ctx));
}

TEST_F(HttpRoundTripTest, TextRolesMatchLocal) {
  const std::vector<MemoryEntry> memory = {{0, "a"}, {1, "b"}};
  EXPECT_EQ(remote_->reviser->Revise("p", memory), local_->reviser->Revise("p", memory));
  const RgbImage img = Image("fx05");
  const CallContext ctx{"fx05", 0};
  EXPECT_EQ(remote_->captioner->Caption(img, ctx), local_->captioner->Caption(img, ctx));
  EXPECT_EQ(remote_->judge->Assess(img, "judge", ctx), local_->judge->Assess(img, "judge", ctx));
  EXPECT_DOUBLE_EQ(remote_->scorer->Score(img, ctx), local_->scorer->Score(img, ctx));
}

TEST_F(HttpRoundTripTest, EmbedderMatchesLocal) {
  EXPECT_EQ(remote_->embedder->dim(), 32);
  const auto r = remote_->embedder->EmbedText("six fingers");
  const auto l = local_->embedder->EmbedText("six fingers");
  ASSERT_EQ(r.size(), l.size());
  for (size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(r[i], l[i], 1e-12);
  EXPECT_NEAR(CssScore("a b c", "a b c", *remote_->embedder).score, 100.0, 1e-9);
}

TEST_F(HttpRoundTripTest, ConformancePassesForEveryRole) {
  for (Role r : kAllRoles) {
    const auto checks = RunConformance(r, FastEndpoint(server_->url()));
    ASSERT_FALSE(checks.empty());
    for (const auto& c : checks) EXPECT_TRUE(c.passed) << ToString(r) << " " << c.name << ": " << c.detail;
    if (r == Role::kEmbedder) EXPECT_GE(checks.size(), 4u);
  }
}

TEST_F(HttpRoundTripTest, ServerRejectsSchemaViolations) {
  httplib::Client client(server_->url());
  auto res = client.Post("/embed", R"({"txt": "x"})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  res = client.Post("/revise", "not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
}

TEST(HttpFailureTest, UnreachableIsTransportErrorAfterRetries) {
  // Port 9 (discard) on loopback is closed in the test environment.
  EndpointConfig ep = FastEndpoint("http://127.0.0.1:9");
  ep.attempts = 3;
  ep.backoff_ms = {5, 10};
  HttpEndpoint endpoint(Role::kReviser, ep);
  const auto start = std::chrono::steady_clock::now();
  try {
    endpoint.Call({{"prompt", "p"}, {"memory", nlohmann::json::array()}});
    FAIL() << "expected TransportError";
  } catch (const TransportError& e) {
    EXPECT_NE(std::string(e.what()).find("after 3 attempts"), std::string::npos);
    EXPECT_NE(e.endpoint().find("reviser"), std::string::npos);
  }
  EXPECT_GE(std::chrono::steady_clock::now() - start, std::chrono::milliseconds(15));
}

class FakeServer {
 public:
  explicit FakeServer(std::function<void(const httplib::Request&, httplib::Response&)> h) {
    server_.Post(".*", h);
    server_.Get(".*", h);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int hits = 0;

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

TEST(HttpFailureTest, NonJsonBodyIsProtocolError) {
  FakeServer fake([](const httplib::Request&, httplib::Response& res) {
    res.set_content("<html>", "text/html");
  });
  HttpEndpoint ep(Role::kReviser, FastEndpoint(fake.url()));
  EXPECT_THROW(ep.Call({{"prompt", "p"}, {"memory", nlohmann::json::array()}}), ProtocolError);
}

TEST(HttpFailureTest, SchemaViolatingBodyIsProtocolError) {
  FakeServer fake([](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"vector": "nope"})", "application/json");
  });
  auto embedder = MakeHttpEmbedder(FastEndpoint(fake.url()));
  EXPECT_THROW(embedder->EmbedText("x"), ProtocolError);
}

TEST(HttpFailureTest, ServerErrorIsRetriedThenTransportError) {
  std::atomic<int> hits{0};
  FakeServer fake([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 503;
    res.set_content(R"({"error": "busy"})", "application/json");
  });
  HttpEndpoint ep(Role::kReviser, FastEndpoint(fake.url()));
  EXPECT_THROW(ep.Call({{"prompt", "p"}, {"memory", nlohmann::json::array()}}), TransportError);
  EXPECT_EQ(hits.load(), 2);
}

TEST(HttpFailureTest, WrongEmbeddingDimIsProtocolError) {
  FakeServer fake([](const httplib::Request& req, httplib::Response& res) {
    if (req.path == "/health") {
      res.set_content(R"({"status": "ok", "dim": 4})", "application/json");
    } else {
      res.set_content(R"({"vector": [1, 0, 0], "dim": 3, "model_id": "m"})", "application/json");
    }
  });
  auto embedder = MakeHttpEmbedder(FastEndpoint(fake.url()));
  EXPECT_THROW(embedder->EmbedText("x"), ProtocolError);
  const auto checks = RunConformance(Role::kEmbedder, FastEndpoint(fake.url()));
  bool any_failed = false;
  for (const auto& c : checks) any_failed = any_failed || !c.passed;
  EXPECT_TRUE(any_failed);
}

}  // namespace
}  // namespace forgeline
