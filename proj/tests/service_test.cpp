// Copyright 2026 The kgforge Authors.
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

#include "kgforge/service.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <future>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "kgforge/common.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge::service {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

const std::string kUser = "urn:res:person/m.rossi%40research.example";

const PipelineConfig& config() {
  static const PipelineConfig c = [] {
    PipelineConfig c = load_config(std::string(KGFORGE_FIXTURES) + "/config.json");
    c.output_dir = (fs::temp_directory_path() / "kgforge-service-test").string();
    fs::remove_all(c.output_dir);
    return c;
  }();
  return c;
}

const Artifacts& fixture() {
  static const Artifacts a = build(config(), 1).artifacts;
  return a;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::shared_ptr<const Artifacts> with_version(std::uint64_t v) {
  auto a = std::make_shared<Artifacts>(fixture());
  a->version = v;
  return a;
}

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    log_ = (fs::temp_directory_path() / "kgforge-service-feedback.jsonl").string();
    fs::remove(log_);
    options_.token = "reader";
    options_.admin_token = "admin";
    options_.feedback_log = log_;
    options_.categories = config().categories;
    options_.recommend = config().recommend;
    options_.clock = [] { return std::string("2026-01-01T00:00:00Z"); };
  }
  void TearDown() override { fs::remove(log_); }

  std::unique_ptr<Service> make(Builder builder = nullptr) {
    if (!builder) {
      builder = [this] { return with_version(++next_version_); };
    }
    return std::make_unique<Service>(with_version(1), builder, options_);
  }

  static Response get(Service& s, const std::string& target, const std::string& token = "reader") {
    return s.handle({"GET", target, {{"Authorization", "Bearer " + token}}, ""});
  }
  static Response post(Service& s, const std::string& target, const std::string& body,
                       const std::string& token = "reader") {
    return s.handle({"POST", target, {{"Authorization", "Bearer " + token}}, body});
  }

  std::string log_;
  ServiceOptions options_;
  std::uint64_t next_version_ = 1;
};

TEST_F(ServiceTest, AuthenticationAndMethods) {
  auto s = make();
  EXPECT_EQ(get(*s, "/types", "wrong").status, 401);
  EXPECT_EQ(s->handle({"GET", "/types", {}, ""}).status, 401);
  EXPECT_EQ(get(*s, "/types").status, 200);
  EXPECT_EQ(get(*s, "/types", "admin").status, 200);
  EXPECT_EQ(post(*s, "/admin/reload", "", "reader").status, 403);
  EXPECT_EQ(get(*s, "/admin/reload", "admin").status, 405);
  EXPECT_EQ(post(*s, "/types", "").status, 405);
  EXPECT_EQ(get(*s, "/nowhere").status, 404);
  EXPECT_EQ(get(*s, "/types").version, 1u);
}

TEST_F(ServiceTest, TypesMatchLibrary) {
  auto s = make();
  const Artifacts& a = fixture();
  Json top = Json::parse(get(*s, "/types?limit=1").body);
  ASSERT_EQ(top.size(), 1u);
  auto want = analytics::top_types(a.hierarchy, a.graph, 1)[0];
  EXPECT_EQ(top[0]["id"], want.type_id);
  EXPECT_EQ(top[0]["transitive"], want.transitive);
  EXPECT_EQ(get(*s, "/types?limit=0").status, 400);
  EXPECT_EQ(get(*s, "/types?limit=x").status, 400);

  Json children = Json::parse(get(*s, "/types/Q8366/children").body);
  EXPECT_EQ(children, Json::array());
  EXPECT_EQ(get(*s, "/types/Q0/children").status, 404);
}

TEST_F(ServiceTest, TrendsMatchLibrary) {
  auto s = make();
  const Artifacts& a = fixture();
  Response r = get(*s, "/types/Q11862829/trends?from=2002&to=2021");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(Json::parse(r.body),
            analytics::to_json(analytics::trend_table(a.hierarchy, a.graph, "Q11862829", 2002, 2021)));
  EXPECT_EQ(get(*s, "/types/Q11862829/trends?from=2002").status, 400);
  EXPECT_EQ(get(*s, "/types/Q11862829/trends?from=2010&to=2002").status, 400);
  EXPECT_EQ(get(*s, "/types/Q0/trends?from=2002&to=2003").status, 404);
}

TEST_F(ServiceTest, InfoboxAndEvidence) {
  auto s = make();
  Json box = Json::parse(get(*s, "/entities/Q515701/infobox").body);
  EXPECT_EQ(box["label"], "Linked Data");
  bool part_of = false;
  for (const auto& row : box["rows"]) {
    if (row["label"] == "part of") {
      part_of = true;
      EXPECT_EQ(row["objects"][0]["label"], "Open Data");
      EXPECT_FALSE(row["objects"][0]["evidence"].empty());
    }
  }
  EXPECT_TRUE(part_of);
  EXPECT_EQ(get(*s, "/entities/Q0/infobox").status, 404);

  auto stmts = fixture().graph.match(std::nullopt, iri(vocab::kRdfType), iri(vocab::kRdfStatement));
  ASSERT_FALSE(stmts.empty());
  std::string id = stmts[0].subject.value();
  Json ev = Json::parse(get(*s, "/statements/" + id + "/evidence").body);
  ASSERT_FALSE(ev["evidence"].empty());
  EXPECT_EQ(ev["evidence"][0]["statement"], id);
  EXPECT_EQ(get(*s, "/statements/unknown/evidence").status, 404);
}

TEST_F(ServiceTest, RecommendationsMatchLibrary) {
  auto s = make();
  const Artifacts& a = fixture();
  std::string target = "/recommendations?user=" + percent_encode(kUser) + "&category=papers&k=3";
  Response r = get(*s, target);
  ASSERT_EQ(r.status, 200) << r.body;
  Json body = Json::parse(r.body);
  recommender::RecommendOptions opts = config().recommend;
  opts.k = 3;
  auto want = recommender::recommend(a.model, a.graph, kUser,
                                     config().categories.at("papers"), opts);
  ASSERT_EQ(body["items"].size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    const Json& item = body["items"][i];
    EXPECT_EQ(item["item"], want[i].item);
    EXPECT_DOUBLE_EQ(item["score"].get<double>(), want[i].score);
    EXPECT_DOUBLE_EQ(item["explanation"]["score"].get<double>(), want[i].score);
    auto e = recommender::explain(a.model, kUser, want[i].item, 5);
    double sum = 0;
    for (const auto& c : e.contributions) sum += c.weight;
    EXPECT_NEAR(sum, want[i].score, 1e-9);
  }
  EXPECT_EQ(get(*s, "/recommendations?user=" + percent_encode(kUser) + "&category=papers&k=0").status,
            400);
  EXPECT_EQ(get(*s, "/recommendations?category=papers").status, 400);
  EXPECT_EQ(get(*s, "/recommendations?user=" + percent_encode(kUser) + "&category=nope").status, 400);
  EXPECT_EQ(get(*s, "/recommendations?user=urn%3Ares%3Aperson%2Fnobody&category=papers").status,
            404);
}

TEST_F(ServiceTest, FeedbackAppendsInOrder) {
  auto s = make();
  Response first = post(*s, "/feedback",
                        R"({"user":"u","item":"i","verdict":"up","context":{"category":"papers","rank":1}})");
  ASSERT_EQ(first.status, 201) << first.body;
  EXPECT_EQ(Json::parse(first.body)["id"], 1);
  EXPECT_EQ(s->feedback_count(), 1u);
  EXPECT_EQ(post(*s, "/feedback", R"({"user":"u","item":"i"})").status, 400);
  EXPECT_EQ(post(*s, "/feedback", "not json").status, 400);
  EXPECT_EQ(post(*s, "/feedback", R"({"user":"u","item":"j","verdict":"down","comment":"meh"})").status,
            201);
  EXPECT_EQ(get(*s, "/feedback").status, 405);

  std::vector<Json> lines;
  for (const auto& line : lines_of(read_file(log_))) lines.push_back(Json::parse(line));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0]["item"], "i");
  EXPECT_EQ(lines[1]["item"], "j");
  EXPECT_EQ(lines[1]["comment"], "meh");
  EXPECT_EQ(lines[1]["timestamp"], "2026-01-01T00:00:00Z");

  // A restarted service continues the id sequence.
  auto again = make();
  EXPECT_EQ(again->feedback_count(), 2u);
}

TEST_F(ServiceTest, ReloadSwapsStateAndKeepsAnswers) {
  auto s = make();
  std::string before = get(*s, "/types?limit=5").body;
  Response r = post(*s, "/admin/reload", "", "admin");
  ASSERT_EQ(r.status, 200);
  Json j = Json::parse(r.body);
  EXPECT_EQ(j["old_version"], 1);
  EXPECT_EQ(j["new_version"], 2);
  Response after = get(*s, "/types?limit=5");
  EXPECT_EQ(after.version, 2u);
  EXPECT_EQ(after.body, before);
}

TEST_F(ServiceTest, ConcurrentReloadIsRejected) {
  std::promise<void> entered, release;
  auto release_future = release.get_future().share();
  auto s = make([&] {
    entered.set_value();
    release_future.wait();
    return with_version(2);
  });
  auto first = std::async(std::launch::async, [&] { return post(*s, "/admin/reload", "", "admin"); });
  entered.get_future().wait();
  EXPECT_EQ(post(*s, "/admin/reload", "", "admin").status, 409);
  EXPECT_EQ(get(*s, "/types").version, 1u);
  release.set_value();
  EXPECT_EQ(first.get().status, 200);
  EXPECT_EQ(get(*s, "/types").version, 2u);
}

TEST_F(ServiceTest, FailedRebuildKeepsServing) {
  auto s = make([]() -> std::shared_ptr<const Artifacts> { throw Error("boom"); });
  EXPECT_EQ(post(*s, "/admin/reload", "", "admin").status, 500);
  EXPECT_EQ(get(*s, "/types").status, 200);
  EXPECT_EQ(get(*s, "/types").version, 1u);
}

TEST_F(ServiceTest, HttpReadersDuringReloads) {
  auto s = make();
  HttpServer server(*s);
  int port = server.bind("127.0.0.1", 0);
  server.start();
  const std::string expected = get(*s, "/types?limit=3").body;

  std::atomic<bool> done{false};
  std::atomic<int> failures{0}, requests{0};
  std::vector<std::thread> readers;
  for (int i = 0; i < 8; ++i) {
    readers.emplace_back([&] {
      httplib::Client cli("127.0.0.1", port);
      cli.set_bearer_token_auth("reader");
      std::uint64_t last = 0;
      while (!done) {
        auto res = cli.Get("/types?limit=3");
        ++requests;
        if (!res || res->status != 200 || res->body != expected) {
          ++failures;
          continue;
        }
        std::uint64_t v = std::stoull(res->get_header_value("X-Graph-Version"));
        if (v < last) ++failures;
        last = v;
      }
    });
  }
  httplib::Client admin("127.0.0.1", port);
  admin.set_bearer_token_auth("admin");
  for (int i = 0; i < 5; ++i) {
    auto res = admin.Post("/admin/reload");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
  }
  done = true;
  for (auto& t : readers) t.join();
  server.stop();
  EXPECT_EQ(failures, 0);
  EXPECT_GT(requests, 0);
  EXPECT_EQ(s->current()->version, 6u);
}

}  // namespace
}  // namespace kgforge::service
