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

// kgforge command-line driver.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kgforge/analytics.hpp"
#include "kgforge/common.hpp"
#include "kgforge/ie_eval.hpp"
#include "kgforge/pipeline.hpp"
#include "kgforge/rec_eval.hpp"
#include "kgforge/recommender.hpp"
#include "kgforge/service.hpp"

namespace {

using Json = nlohmann::json;
using namespace kgforge;

constexpr int kUsage = 1;
constexpr int kDataError = 2;

struct Common {
  std::string config_path;
  std::string out_dir;
  std::string format = "table";
};

PipelineConfig load(const Common& c) {
  if (c.config_path.empty()) throw UsageError("--config is required");
  PipelineConfig config = load_config(c.config_path);
  if (!c.out_dir.empty()) {
    config.output_dir = std::filesystem::absolute(c.out_dir).string();
  }
  return config;
}

void emit(const Common& c, const Json& json, const std::string& table) {
  if (c.format == "json") {
    std::cout << json.dump(2) << "\n";
  } else {
    std::cout << table;
  }
}

std::string env(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

void add_common(CLI::App* cmd, Common& c, bool needs_config = true,
                const std::string& out_flag = "--out") {
  auto* opt = cmd->add_option("-c,--config", c.config_path, "pipeline config JSON");
  if (needs_config) opt->envname("KGFORGE_CONFIG");
  cmd->add_option(out_flag, c.out_dir, "output directory (overrides config)");
  cmd->add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}));
}

int cmd_ingest(const Common& c) {
  PipelineConfig config = load(c);
  IngestResult r = run_ingest(config);
  GraphBuilder b;
  for (const Triple& t : r.triples) b.insert(t);
  std::filesystem::create_directories(config.resolve(config.output_dir));
  write_file(config.output_path("ingest.nt"), b.publish(0).export_canonical());
  Json j = {{"entities", r.entities.size()},
            {"triples", r.triples.size()},
            {"documents", r.documents.size()},
            {"output", config.output_path("ingest.nt")}};
  emit(c, j,
       "entities  " + std::to_string(r.entities.size()) + "\ntriples   " +
           std::to_string(r.triples.size()) + "\ndocuments " + std::to_string(r.documents.size()) +
           "\n");
  return 0;
}

int cmd_extract(const Common& c, const std::vector<std::string>& external) {
  PipelineConfig config = load(c);
  for (const auto& e : external) {
    config.external_facts.push_back(std::filesystem::absolute(e).string());
  }
  const std::string ledger_path = config.output_path("fingerprints.jsonl");
  const std::string facts_path = config.output_path("facts.jsonl");
  std::map<std::string, ingest::Fingerprint> prior_ledger;
  std::vector<extraction::ExtractedFact> prior_facts;
  if (std::filesystem::exists(ledger_path) && std::filesystem::exists(facts_path)) {
    prior_ledger = ingest::read_ledger(read_file(ledger_path));
    prior_facts = extraction::import_external_facts(read_file(facts_path));
  }
  IngestResult ingested = run_ingest(config);
  ExtractResult r = run_extract(config, ingested, next_version(config), prior_ledger, prior_facts);
  std::filesystem::create_directories(config.resolve(config.output_dir));
  write_file(facts_path, extraction::write_facts_jsonl(r.facts));
  write_file(ledger_path, ingest::write_ledger(r.ledger));
  Json j = {{"facts", r.facts.size()}, {"reextracted", r.reextracted}, {"reused", r.reused}};
  emit(c, j,
       "facts       " + std::to_string(r.facts.size()) + "\nreextracted " +
           std::to_string(r.reextracted) + "\nreused      " + std::to_string(r.reused) + "\n");
  return 0;
}

int cmd_build(const Common& c) {
  PipelineConfig config = load(c);
  BuildResult r = build(config, next_version(config));
  write_artifacts(config, r);
  const Artifacts& a = r.artifacts;
  Json j = {{"version", a.version},         {"triples", a.graph.size()},
            {"rows", a.model.n()},          {"features", a.model.m()},
            {"types", a.hierarchy.size()},  {"facts", r.extracted.facts.size()},
            {"reextracted", r.extracted.reextracted}, {"reused", r.extracted.reused}};
  std::string table;
  for (const auto& [k, v] : j.items()) table += k + std::string(12 - k.size(), ' ') + v.dump() + "\n";
  emit(c, j, table);
  return 0;
}

int cmd_recommend(const Common& c, const std::string& user, const std::string& category,
                  std::size_t k, bool include_connected, std::size_t top_m) {
  PipelineConfig config = load(c);
  Artifacts a = load_or_build(config);
  std::string type = category;
  if (auto it = config.categories.find(category); it != config.categories.end()) {
    type = it->second;
  } else if (category.find(':') == std::string::npos) {
    throw UsageError("unknown category " + category);
  }
  recommender::RecommendOptions opts = config.recommend;
  if (k > 0) opts.k = k;
  if (include_connected) opts.exclude_connected = false;
  auto recs = recommender::recommend(a.model, a.graph, user, type, opts);
  Json items = Json::array();
  std::string table;
  char buf[64];
  for (const auto& r : recs) {
    auto e = recommender::explain(a.model, user, r.item, top_m);
    Json item = recommender::recommendation_to_json(r);
    item["explanation"] = recommender::explanation_to_json(e);
    items.push_back(item);
    std::snprintf(buf, sizeof buf, "%2d  %.4f  ", r.rank, r.score);
    table += buf + r.item + "\n";
    for (const auto& g : e.grouped) {
      table += "      " + g.type_label + ":";
      for (const auto& [label, w] : g.entities) table += " " + label;
      table += "\n";
    }
  }
  emit(c, Json{{"user", user}, {"type", type}, {"items", items}}, table);
  return 0;
}

int cmd_types(const Common& c, std::size_t limit, const std::string& parent) {
  PipelineConfig config = load(c);
  Artifacts a = load_or_build(config);
  auto stats = parent.empty() ? analytics::top_types(a.hierarchy, a.graph, limit)
                              : analytics::children_sorted(a.hierarchy, a.graph, parent);
  Json j = Json::array();
  std::string table;
  for (const auto& s : stats) {
    j.push_back(analytics::to_json(s));
    table += s.type_id + "  " + analytics::render_type_stats(s) + "\n";
  }
  emit(c, j, table);
  return 0;
}

int cmd_trends(const Common& c, const std::string& type, int from, int to, bool mentions) {
  PipelineConfig config = load(c);
  Artifacts a = load_or_build(config);
  auto t = analytics::trend_table(a.hierarchy, a.graph, type, from, to,
                                  mentions ? analytics::TrendCount::kMentions
                                           : analytics::TrendCount::kDocuments);
  emit(c, analytics::to_json(t), analytics::render_trends(t));
  return 0;
}

int cmd_infobox(const Common& c, const std::string& entity) {
  PipelineConfig config = load(c);
  Artifacts a = load_or_build(config);
  auto box = analytics::infobox(a.graph, a.hierarchy, entity, config.schema_size);
  emit(c, analytics::to_json(box), analytics::render_infobox(box));
  return 0;
}

int cmd_evidence(const Common& c, const std::string& statement) {
  PipelineConfig config = load(c);
  Artifacts a = load_or_build(config);
  Json j = Json::array();
  std::string table;
  for (const auto& e : analytics::evidence_for(a.graph, statement)) {
    j.push_back(analytics::to_json(e));
    table += e.doc_id + "  " + format_decimal(e.confidence) + "  " + e.sentence + "\n";
  }
  emit(c, j, table);
  return 0;
}

int cmd_eval_ie(const Common& c, const std::string& gold_path, std::string gazetteer,
                std::string rules, const std::string& predictions_path) {
  ie_eval::GoldCorpus gold = ie_eval::parse_gold(read_file(gold_path));
  ie_eval::Predictions predicted;
  if (!predictions_path.empty()) {
    std::map<std::string, std::vector<extraction::ExtractedFact>> by_doc;
    for (auto& f : extraction::import_external_facts(read_file(predictions_path))) {
      by_doc[f.doc_id].push_back(std::move(f));
    }
    for (const auto& [doc, facts] : by_doc) predicted[doc] = ie_eval::predictions_from_facts(facts);
  } else {
    extraction::SplitOptions options;
    if (!c.config_path.empty()) {
      PipelineConfig config = load(c);
      if (gazetteer.empty()) gazetteer = config.resolve(config.gazetteer);
      if (rules.empty()) rules = config.resolve(config.rules);
      options.abbreviations = config.abbreviations;
    }
    if (gazetteer.empty() || rules.empty()) {
      throw UsageError("eval-ie needs --gazetteer and --rules, --config, or --predictions");
    }
    auto g = extraction::parse_gazetteer(Json::parse(read_file(gazetteer)));
    auto r = extraction::parse_rules(Json::parse(read_file(rules)));
    predicted = ie_eval::predict(gold, g, r, options);
  }
  auto report = ie_eval::score(gold, predicted);
  emit(c, ie_eval::report_to_json(report), ie_eval::render_report(report));
  return 0;
}

int cmd_eval_rec(const Common& c, const std::string& judgments, const std::string& criterion,
                 const std::vector<std::string>& cutoffs) {
  auto js = rec_eval::parse_judgments_csv(read_file(judgments));
  auto k = rec_eval::default_cutoffs();
  for (const auto& spec : cutoffs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) throw UsageError("--cutoff expects category=K");
    int v = 0;
    try {
      v = std::stoi(spec.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--cutoff expects category=K");
    }
    if (v < 1) throw UsageError("cutoff K must be at least 1");
    k[spec.substr(0, eq)] = v;
  }
  std::vector<rec_eval::EvalReport> reports;
  if (to_lower_ascii(criterion) == "all") {
    for (auto cr : {rec_eval::Criterion::kLow, rec_eval::Criterion::kMedium,
                    rec_eval::Criterion::kHigh}) {
      reports.push_back(rec_eval::evaluate(js, cr, k));
    }
  } else {
    reports.push_back(rec_eval::evaluate(js, rec_eval::parse_criterion(criterion), k));
  }
  emit(c, rec_eval::reports_to_json(reports), rec_eval::render_table(reports));
  return 0;
}

int cmd_export(const Common& c, const std::string& file) {
  PipelineConfig config = load(c);
  Artifacts a = load_or_build(config);
  std::string bytes = a.graph.export_canonical();
  if (file.empty()) {
    std::cout << bytes;
  } else {
    write_file(file, bytes);
  }
  return 0;
}

int cmd_serve(const Common& c, std::string host, int port) {
  PipelineConfig config = load(c);
  service::ServiceOptions opts;
  opts.token = env("KGFORGE_TOKEN");
  opts.admin_token = env("KGFORGE_ADMIN_TOKEN");
  if (opts.token.empty() && opts.admin_token.empty()) {
    throw UsageError("set KGFORGE_TOKEN (and KGFORGE_ADMIN_TOKEN for reloads)");
  }
  opts.feedback_log = config.resolve(config.feedback_log);
  opts.categories = config.categories;
  opts.recommend = config.recommend;
  opts.schema_size = config.schema_size;
  auto initial = std::make_shared<const Artifacts>(load_or_build(config));
  auto builder = [config]() {
    BuildResult r = build(config, next_version(config));
    write_artifacts(config, r);
    return std::make_shared<const Artifacts>(std::move(r.artifacts));
  };
  service::Service svc(initial, builder, opts);
  service::HttpServer server(svc);
  if (host.empty()) host = config.host;
  if (port < 0) port = config.port;
  int bound = server.bind(host, port);
  std::cerr << "kgforge: serving graph version " << initial->version << " on http://" << host
            << ":" << bound << "\n";
  server.listen();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kgforge: knowledge-graph induction and exploitation"};
  app.require_subcommand(1);
  Common c;

  auto* ingest_cmd = app.add_subcommand("ingest", "map source records to triples");
  add_common(ingest_cmd, c);

  std::vector<std::string> external;
  auto* extract_cmd = app.add_subcommand("extract", "extract facts from text payloads");
  add_common(extract_cmd, c);
  extract_cmd->add_option("--external", external, "additional fact JSONL files");

  auto* build_cmd = app.add_subcommand("build", "build graph, model and hierarchy");
  add_common(build_cmd, c);

  std::string user, category;
  std::size_t k = 0, top_m = 5;
  bool include_connected = false;
  auto* rec_cmd = app.add_subcommand("recommend", "recommend items for a user");
  add_common(rec_cmd, c);
  rec_cmd->add_option("--user", user, "user IRI")->required();
  rec_cmd->add_option("--category", category, "category name or type IRI")->required();
  rec_cmd->add_option("-k", k, "list length");
  rec_cmd->add_option("--top", top_m, "contributions per feature group");
  rec_cmd->add_flag("--include-connected", include_connected, "keep authored items");

  std::size_t limit = 10;
  std::string parent;
  auto* types_cmd = app.add_subcommand("types", "types by cumulative entity count");
  add_common(types_cmd, c);
  types_cmd->add_option("--limit", limit, "number of types")->check(CLI::PositiveNumber);
  types_cmd->add_option("--children-of", parent, "list the children of this type instead");

  std::string type;
  int from = 0, to = 0;
  bool mentions = false;
  auto* trends_cmd = app.add_subcommand("trends", "per-year distribution for a type");
  add_common(trends_cmd, c);
  trends_cmd->add_option("--type", type, "type id")->required();
  trends_cmd->add_option("--from", from, "first year")->required();
  trends_cmd->add_option("--to", to, "last year")->required();
  trends_cmd->add_flag("--mentions", mentions, "count facts instead of documents");

  std::string entity;
  auto* infobox_cmd = app.add_subcommand("infobox", "infobox for an entity");
  add_common(infobox_cmd, c);
  infobox_cmd->add_option("--entity", entity, "entity id or IRI")->required();

  std::string statement;
  auto* evidence_cmd = app.add_subcommand("evidence", "provenance for a statement");
  add_common(evidence_cmd, c);
  evidence_cmd->add_option("--statement", statement, "statement id")->required();

  std::string gold, gazetteer, rules, predictions;
  auto* eval_ie_cmd = app.add_subcommand("eval-ie", "score extraction against gold");
  add_common(eval_ie_cmd, c, false);
  eval_ie_cmd->add_option("--gold", gold, "gold corpus JSONL")->required();
  eval_ie_cmd->add_option("--gazetteer", gazetteer, "gazetteer JSON");
  eval_ie_cmd->add_option("--rules", rules, "rules JSON");
  eval_ie_cmd->add_option("--predictions", predictions, "score these facts instead");

  std::string judgments, criterion = "all";
  std::vector<std::string> cutoffs;
  auto* eval_rec_cmd = app.add_subcommand("eval-rec", "MAP and P@K from graded judgments");
  add_common(eval_rec_cmd, c, false);
  eval_rec_cmd->add_option("--judgments", judgments, "judgments CSV")->required();
  eval_rec_cmd->add_option("--criterion", criterion, "LOW, MEDIUM, HIGH or all");
  eval_rec_cmd->add_option("--cutoff", cutoffs, "category=K");

  std::string export_file;
  auto* export_cmd = app.add_subcommand("export", "canonical N-Triples of the graph");
  add_common(export_cmd, c, true, "--out-dir");
  export_cmd->add_option("--out", export_file, "write here instead of stdout");

  std::string host;
  int port = -1;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP JSON service");
  add_common(serve_cmd, c);
  serve_cmd->add_option("--host", host, "bind address");
  serve_cmd->add_option("--port", port, "port (0 picks a free one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*ingest_cmd) return cmd_ingest(c);
    if (*extract_cmd) return cmd_extract(c, external);
    if (*build_cmd) return cmd_build(c);
    if (*rec_cmd) return cmd_recommend(c, user, category, k, include_connected, top_m);
    if (*types_cmd) return cmd_types(c, limit, parent);
    if (*trends_cmd) return cmd_trends(c, type, from, to, mentions);
    if (*infobox_cmd) return cmd_infobox(c, entity);
    if (*evidence_cmd) return cmd_evidence(c, statement);
    if (*eval_ie_cmd) return cmd_eval_ie(c, gold, gazetteer, rules, predictions);
    if (*eval_rec_cmd) return cmd_eval_rec(c, judgments, criterion, cutoffs);
    if (*export_cmd) return cmd_export(c, export_file);
    if (*serve_cmd) return cmd_serve(c, host, port);
  } catch (const UsageError& e) {
    std::cerr << "kgforge: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "kgforge: " << e.what() << "\n";
    return kDataError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "kgforge: malformed JSON: " << e.what() << "\n";
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "kgforge: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}
