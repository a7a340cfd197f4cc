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

#ifndef KGFORGE_SERVICE_HPP_
#define KGFORGE_SERVICE_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "json.hpp"
#include "kgforge/pipeline.hpp"

namespace httplib {
class Server;
}

namespace kgforge::service {

struct ServiceOptions {
  std::string token;        // read access
  std::string admin_token;  // read access plus /admin/*
  std::string feedback_log;
  std::map<std::string, std::string> categories;  // name -> type IRI
  recommender::RecommendOptions recommend;
  std::size_t schema_size = analytics::kDefaultSchemaSize;
  std::size_t explain_top_m = 5;
  // Timestamp source for feedback events; defaults to UTC wall clock.
  std::function<std::string()> clock;
};

// Produces a fresh trio for /admin/reload. Runs outside the state lock.
using Builder = std::function<std::shared_ptr<const Artifacts>()>;

struct Request {
  std::string method;
  std::string target;  // raw path plus optional query string
  std::map<std::string, std::string> headers;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;              // JSON
  std::uint64_t version = 0;     // X-Graph-Version
};

// Transport-independent request handling. Every request pins the current
// state once and answers from it alone.
class Service {
 public:
  Service(std::shared_ptr<const Artifacts> initial, Builder builder, ServiceOptions options);

  std::shared_ptr<const Artifacts> current() const;
  Response handle(const Request& request);

  // Lines in the feedback log written by this instance or found at startup.
  std::size_t feedback_count() const;

 private:
  Response route(const Request& request, const Artifacts& state);
  Response reload(std::uint64_t current_version);
  Response post_feedback(const std::string& body, std::uint64_t version);

  mutable std::mutex state_mu_;
  std::shared_ptr<const Artifacts> state_;
  Builder builder_;
  ServiceOptions options_;
  std::atomic<bool> building_{false};
  mutable std::mutex feedback_mu_;
  std::size_t feedback_lines_ = 0;
};

// HTTP/1.1 front end over a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and returns the port; port 0 picks a free one. Throws Error.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void start();   // listen() on a background thread
  void stop();

 private:
  Service& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace kgforge::service

#endif  // KGFORGE_SERVICE_HPP_
