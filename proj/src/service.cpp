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

#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "httplib.h"
#include "kgforge/common.hpp"

namespace kgforge::service {

namespace {

using Json = nlohmann::json;

struct Target {
  std::vector<std::string> segments;
  std::map<std::string, std::string> query;
};

Target parse_target(std::string_view target) {
  Target t;
  std::size_t q = target.find('?');
  std::string_view path = target.substr(0, q);
  std::size_t pos = 0;
  while (pos <= path.size()) {
    std::size_t slash = path.find('/', pos);
    if (slash == std::string_view::npos) slash = path.size();
    if (slash > pos) t.segments.push_back(percent_decode(path.substr(pos, slash - pos)));
    pos = slash + 1;
  }
  if (q == std::string_view::npos) return t;
  std::string_view query = target.substr(q + 1);
  pos = 0;
  while (pos < query.size()) {
    std::size_t amp = query.find('&', pos);
    if (amp == std::string_view::npos) amp = query.size();
    std::string_view pair = query.substr(pos, amp - pos);
    std::size_t eq = pair.find('=');
    if (!pair.empty()) {
      std::string key = percent_decode(pair.substr(0, eq));
      std::string value = eq == std::string_view::npos ? "" : percent_decode(pair.substr(eq + 1));
      t.query[key] = value;
    }
    pos = amp + 1;
  }
  return t;
}

std::string header(const Request& r, std::string_view name) {
  for (const auto& [k, v] : r.headers) {
    if (to_lower_ascii(k) == to_lower_ascii(name)) return v;
  }
  return "";
}

Response json_response(int status, const Json& body, std::uint64_t version) {
  return {status, body.dump(), version};
}

Response error_response(int status, const std::string& message, std::uint64_t version) {
  return json_response(status, Json{{"error", message}}, version);
}

// Integer query parameter; nullopt when absent, throws ValidationError when
// malformed.
std::optional<long> int_param(const Target& t, const std::string& key) {
  auto it = t.query.find(key);
  if (it == t.query.end() || it->second.empty()) return std::nullopt;
  long v = 0;
  const std::string& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("query parameter " + key + " must be an integer");
  }
  return v;
}

std::string utc_now() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::size_t count_lines(const std::string& path) {
  std::ifstream in(path);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) ++n;
  }
  return n;
}

Json stats_array(const std::vector<analytics::TypeStats>& stats) {
  Json out = Json::array();
  for (const auto& s : stats) out.push_back(analytics::to_json(s));
  return out;
}

}  // namespace

Service::Service(std::shared_ptr<const Artifacts> initial, Builder builder, ServiceOptions options)
    : state_(std::move(initial)), builder_(std::move(builder)), options_(std::move(options)) {
  if (!state_) throw ValidationError("service needs an initial state");
  if (!options_.clock) options_.clock = utc_now;
  if (!options_.feedback_log.empty()) feedback_lines_ = count_lines(options_.feedback_log);
}

std::shared_ptr<const Artifacts> Service::current() const {
  std::lock_guard<std::mutex> lock(state_mu_);
  return state_;
}

std::size_t Service::feedback_count() const {
  std::lock_guard<std::mutex> lock(feedback_mu_);
  return feedback_lines_;
}

Response Service::handle(const Request& request) {
  const std::shared_ptr<const Artifacts> state = current();
  const std::uint64_t version = state->version;

  std::string auth = header(request, "Authorization");
  std::string token = auth.starts_with("Bearer ") ? trim(auth.substr(7)) : "";
  const bool admin = !options_.admin_token.empty() && token == options_.admin_token;
  const bool reader = admin || (!options_.token.empty() && token == options_.token);
  if (!reader) return error_response(401, "missing or invalid bearer token", version);

  Target t = parse_target(request.target);
  if (t.segments == std::vector<std::string>{"admin", "reload"}) {
    if (request.method != "POST") return error_response(405, "use POST", version);
    if (!admin) return error_response(403, "admin token required", version);
    return reload(version);
  }
  if (t.segments == std::vector<std::string>{"feedback"}) {
    if (request.method != "POST") return error_response(405, "use POST", version);
    return post_feedback(request.body, version);
  }
  if (request.method != "GET") return error_response(405, "use GET", version);
  try {
    return route(request, *state);
  } catch (const NotFoundError& e) {
    return error_response(404, e.what(), version);
  } catch (const ValidationError& e) {
    return error_response(400, e.what(), version);
  } catch (const UsageError& e) {
    return error_response(400, e.what(), version);
  } catch (const Error& e) {
    return error_response(500, e.what(), version);
  }
}

Response Service::route(const Request& request, const Artifacts& state) {
  const Target t = parse_target(request.target);
  const auto& seg = t.segments;
  const std::uint64_t v = state.version;

  if (seg.size() == 1 && seg[0] == "types") {
    long limit = int_param(t, "limit").value_or(10);
    if (limit < 1) throw ValidationError("limit must be at least 1");
    return json_response(200,
                         stats_array(analytics::top_types(state.hierarchy, state.graph,
                                                          static_cast<std::size_t>(limit))),
                         v);
  }
  if (seg.size() == 3 && seg[0] == "types" && seg[2] == "children") {
    return json_response(200,
                         stats_array(analytics::children_sorted(state.hierarchy, state.graph, seg[1])),
                         v);
  }
  if (seg.size() == 3 && seg[0] == "types" && seg[2] == "trends") {
    auto from = int_param(t, "from");
    auto to = int_param(t, "to");
    if (!from || !to) throw ValidationError("from and to are required");
    if (!state.hierarchy.contains(seg[1])) throw NotFoundError("unknown type " + seg[1]);
    return json_response(200,
                         analytics::to_json(analytics::trend_table(state.hierarchy, state.graph,
                                                                   seg[1], static_cast<int>(*from),
                                                                   static_cast<int>(*to))),
                         v);
  }
  if (seg.size() == 3 && seg[0] == "entities" && seg[2] == "infobox") {
    return json_response(
        200, analytics::to_json(analytics::infobox(state.graph, state.hierarchy, seg[1],
                                                   options_.schema_size)),
        v);
  }
  if (seg.size() == 3 && seg[0] == "statements" && seg[2] == "evidence") {
    std::string id = seg[1];
    if (id.starts_with(kStatementNamespace)) id = id.substr(kStatementNamespace.size());
    Json records = Json::array();
    for (const auto& r : analytics::evidence_for(state.graph, id)) {
      records.push_back(analytics::to_json(r));
    }
    return json_response(200, Json{{"statement", id}, {"evidence", records}}, v);
  }
  if (seg.size() == 1 && seg[0] == "recommendations") {
    auto user = t.query.find("user");
    auto category = t.query.find("category");
    if (user == t.query.end() || user->second.empty()) throw ValidationError("user is required");
    if (category == t.query.end() || category->second.empty()) {
      throw ValidationError("category is required");
    }
    std::string type = category->second;
    if (auto c = options_.categories.find(type); c != options_.categories.end()) {
      type = c->second;
    } else if (type.find(':') == std::string::npos) {
      throw ValidationError("unknown category " + type);
    }
    recommender::RecommendOptions opts = options_.recommend;
    if (auto k = int_param(t, "k")) {
      if (*k < 1) throw ValidationError("k must be at least 1");
      opts.k = static_cast<std::size_t>(*k);
    }
    auto recs = recommender::recommend(state.model, state.graph, user->second, type, opts);
    Json items = Json::array();
    for (const auto& r : recs) {
      Json item = recommender::recommendation_to_json(r);
      item["explanation"] = recommender::explanation_to_json(
          recommender::explain(state.model, user->second, r.item, options_.explain_top_m));
      items.push_back(std::move(item));
    }
    return json_response(
        200, Json{{"user", user->second}, {"category", category->second}, {"type", type},
                  {"items", items}},
        v);
  }
  throw NotFoundError("no route for " + request.target);
}

Response Service::reload(std::uint64_t current_version) {
  bool expected = false;
  if (!building_.compare_exchange_strong(expected, true)) {
    return error_response(409, "a rebuild is already in progress", current_version);
  }
  struct Reset {
    std::atomic<bool>& flag;
    ~Reset() { flag = false; }
  } reset{building_};

  std::shared_ptr<const Artifacts> fresh;
  try {
    fresh = builder_();
  } catch (const Error& e) {
    return error_response(500, std::string("rebuild failed: ") + e.what(), current_version);
  }
  if (!fresh) return error_response(500, "rebuild produced no state", current_version);
  std::uint64_t old_version;
  {
    std::lock_guard<std::mutex> lock(state_mu_);
    old_version = state_->version;
    state_ = fresh;
  }
  return json_response(200, Json{{"old_version", old_version}, {"new_version", fresh->version}},
                       fresh->version);
}

Response Service::post_feedback(const std::string& body, std::uint64_t version) {
  Json in = Json::parse(body, nullptr, false);
  if (in.is_discarded() || !in.is_object()) return error_response(400, "expected a JSON object", version);
  auto str = [&](const char* key) -> std::string {
    auto it = in.find(key);
    return it != in.end() && it->is_string() ? it->get<std::string>() : "";
  };
  const std::string verdict = str("verdict");
  if (verdict != "up" && verdict != "down") {
    return error_response(400, "verdict must be \"up\" or \"down\"", version);
  }
  if (str("user").empty() || str("item").empty()) {
    return error_response(400, "user and item are required", version);
  }
  Json event = {{"user", str("user")}, {"item", str("item")}, {"verdict", verdict}};
  if (auto c = in.find("comment"); c != in.end() && !c->is_null()) {
    if (!c->is_string()) return error_response(400, "comment must be a string", version);
    event["comment"] = *c;
  }
  if (auto ctx = in.find("context"); ctx != in.end() && !ctx->is_null()) {
    if (!ctx->is_object()) return error_response(400, "context must be an object", version);
    Json context = Json::object();
    if (auto c = ctx->find("category"); c != ctx->end()) {
      if (!c->is_string()) return error_response(400, "context.category must be a string", version);
      context["category"] = *c;
    }
    if (auto r = ctx->find("rank"); r != ctx->end()) {
      if (!r->is_number_integer() || r->get<long>() < 1) {
        return error_response(400, "context.rank must be a positive integer", version);
      }
      context["rank"] = *r;
    }
    event["context"] = context;
  }

  std::lock_guard<std::mutex> lock(feedback_mu_);
  event["id"] = feedback_lines_ + 1;
  event["timestamp"] = options_.clock();
  if (!options_.feedback_log.empty()) {
    std::filesystem::path p(options_.feedback_log);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(options_.feedback_log, std::ios::app | std::ios::binary);
    out << event.dump() << "\n";
    out.flush();
    if (!out) return error_response(500, "cannot append to feedback log", version);
  }
  ++feedback_lines_;
  return json_response(201, event, version);
}

// ---------------------------------------------------------------------------

HttpServer::HttpServer(Service& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  server_->new_task_queue = [] { return new httplib::ThreadPool(16); };
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    Request r;
    r.method = req.method;
    r.target = req.target;
    for (const auto& [k, v] : req.headers) r.headers[k] = v;
    r.body = req.body;
    Response out = service_.handle(r);
    res.status = out.status;
    res.set_header("X-Graph-Version", std::to_string(out.version));
    res.set_content(out.body, "application/json");
  };
  server_->Get(".*", handler);
  server_->Post(".*", handler);
  server_->Put(".*", handler);
  server_->Delete(".*", handler);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::start() {
  thread_ = std::thread([this] { listen(); });
  server_->wait_until_ready();
}

void HttpServer::stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace kgforge::service
