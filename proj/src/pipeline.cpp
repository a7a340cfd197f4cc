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

#include "kgforge/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>

#include "kgforge/common.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge {

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

std::string get_string(const Json& obj, const char* key, const std::string& where,
                       const std::string& fallback = "") {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_string()) throw ValidationError(where + "." + key + ": expected a string");
  return it->get<std::string>();
}

std::vector<std::string> get_strings(const Json& obj, const char* key, const std::string& where) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) throw ValidationError(where + "." + key + ": expected an array");
  for (const Json& v : *it) {
    if (!v.is_string()) throw ValidationError(where + "." + key + ": expected strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

template <typename T>
T get_number(const Json& obj, const char* key, const std::string& where, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_number()) throw ValidationError(where + "." + key + ": expected a number");
  return it->get<T>();
}

bool get_bool(const Json& obj, const char* key, const std::string& where, bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_boolean()) throw ValidationError(where + "." + key + ": expected a boolean");
  return it->get<bool>();
}

Json read_json(const std::string& path) {
  Json doc = Json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded()) throw ValidationError(path + ": malformed JSON");
  return doc;
}

std::set<std::string> read_ontology(const std::string& path) {
  std::set<std::string> out;
  std::string text = read_file(path);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = trim(std::string_view(text).substr(pos, nl - pos));
    pos = nl + 1;
    if (!line.empty() && line[0] != '#') out.insert(line);
  }
  return out;
}

void check_ontology(const ingest::MappingSpec& spec, const std::set<std::string>& vocabulary) {
  if (!vocabulary.count(spec.record_type)) {
    throw ValidationError("mapping " + spec.source + ": record type " + spec.record_type +
                          " is not in the ontology");
  }
  for (const auto& p : spec.properties) {
    if (!vocabulary.count(p.predicate)) {
      throw ValidationError("mapping " + spec.source + ": predicate " + p.predicate +
                            " is not in the ontology");
    }
  }
}

std::string resources_digest(const PipelineConfig& config) {
  std::vector<std::string> parts = {read_file(config.resolve(config.gazetteer)),
                                    read_file(config.resolve(config.rules))};
  parts.insert(parts.end(), config.abbreviations.begin(), config.abbreviations.end());
  return stable_hash128(parts).hex();
}

bool fact_less(const extraction::ExtractedFact& a, const extraction::ExtractedFact& b) {
  if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
  if (a.offset != b.offset) return a.offset < b.offset;
  return extraction::statement_id(a) < extraction::statement_id(b);
}

}  // namespace

std::string PipelineConfig::resolve(const std::string& path) const {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

std::string PipelineConfig::output_path(const std::string& name) const {
  return (fs::path(resolve(output_dir)) / name).string();
}

PipelineConfig parse_config(const Json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw ValidationError("config: expected a JSON object");
  PipelineConfig c;
  c.base_dir = base_dir.empty() ? "." : base_dir;
  try {
    c.ontology = get_string(doc, "ontology", "config");
    c.mappings = get_strings(doc, "mappings", "config");
    if (auto it = doc.find("sources"); it != doc.end()) {
      if (!it->is_array()) throw ValidationError("config.sources: expected an array");
      for (const Json& s : *it) {
        ingest::SourceLocation loc;
        loc.mapping = get_string(s, "mapping", "config.sources");
        loc.path = get_string(s, "path", "config.sources");
        loc.url = get_string(s, "url", "config.sources");
        loc.cursor_param = get_string(s, "cursor_param", "config.sources", "cursor");
        if (loc.mapping.empty() || (loc.path.empty() == loc.url.empty())) {
          throw ValidationError("config.sources: each source needs a mapping and one of path/url");
        }
        c.sources.push_back(std::move(loc));
      }
    }
    c.gazetteer = get_string(doc, "gazetteer", "config");
    c.rules = get_string(doc, "rules", "config");
    for (auto& a : get_strings(doc, "abbreviations", "config")) c.abbreviations.insert(a);
    c.background = get_string(doc, "background", "config");
    c.external_facts = get_strings(doc, "external_facts", "config");
    c.output_dir = get_string(doc, "output_dir", "config", "out");
    c.schema_size = get_number<std::size_t>(doc, "schema_size", "config", c.schema_size);

    if (auto f = doc.find("features"); f != doc.end()) {
      const std::string w = "config.features";
      for (auto& s : get_strings(*f, "stopwords", w)) c.features.stopwords.insert(to_lower_ascii(s));
      c.features.min_token_length =
          get_number<std::size_t>(*f, "min_token_length", w, c.features.min_token_length);
      if (f->contains("person_types")) {
        auto v = get_strings(*f, "person_types", w);
        c.features.person_types = {v.begin(), v.end()};
      }
      if (f->contains("hop_predicates")) {
        auto v = get_strings(*f, "hop_predicates", w);
        c.features.hop_predicates = {v.begin(), v.end()};
      }
      c.features.hop_depth = get_number<int>(*f, "hop_depth", w, c.features.hop_depth);
      if (auto g = f->find("group_weights"); g != f->end()) {
        for (const auto& [name, weight] : g->items()) {
          if (!weight.is_number()) throw ValidationError(w + ".group_weights: expected numbers");
          c.features.group_weights[recommender::parse_group(name)] = weight.get<double>();
        }
      }
    }
    if (auto r = doc.find("recommend"); r != doc.end()) {
      const std::string w = "config.recommend";
      c.recommend.k = get_number<std::size_t>(*r, "k", w, c.recommend.k);
      c.recommend.exclude_connected =
          get_bool(*r, "exclude_connected", w, c.recommend.exclude_connected);
      if (r->contains("authorship_predicates")) {
        auto v = get_strings(*r, "authorship_predicates", w);
        c.recommend.authorship_predicates = {v.begin(), v.end()};
      }
      if (auto cats = r->find("categories"); cats != r->end()) {
        for (const auto& [name, type] : cats->items()) {
          if (!type.is_string()) throw ValidationError(w + ".categories: expected type IRIs");
          c.categories[name] = type.get<std::string>();
        }
      }
    }
    if (auto s = doc.find("service"); s != doc.end()) {
      c.host = get_string(*s, "host", "config.service", c.host);
      c.port = get_number<int>(*s, "port", "config.service", c.port);
      c.feedback_log = get_string(*s, "feedback_log", "config.service", c.feedback_log);
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return c;
}

PipelineConfig load_config(const std::string& path) {
  std::string dir = fs::path(path).parent_path().string();
  return parse_config(read_json(path), dir);
}

IngestResult run_ingest(const PipelineConfig& config) {
  std::set<std::string> vocabulary;
  if (!config.ontology.empty()) vocabulary = read_ontology(config.resolve(config.ontology));

  std::map<std::string, ingest::MappingSpec> specs;
  for (const std::string& m : config.mappings) {
    ingest::MappingSpec spec = ingest::parse_mapping(read_json(config.resolve(m)));
    if (!vocabulary.empty()) check_ontology(spec, vocabulary);
    std::string name = spec.source;
    if (!specs.emplace(name, std::move(spec)).second) {
      throw ValidationError("two mappings for source " + name);
    }
  }

  GraphBuilder triples;
  std::set<Term> entities;
  std::map<std::string, std::vector<std::string>> texts;
  std::map<std::string, int> years;
  std::set<std::string> text_predicates;
  for (const ingest::SourceLocation& loc : config.sources) {
    auto spec = specs.find(loc.mapping);
    if (spec == specs.end()) throw ValidationError("no mapping for source " + loc.mapping);
    for (const ingest::SourceRecord& record : ingest::fetch_records(loc, config.base_dir)) {
      ingest::MappedRecord mapped = ingest::record_to_triples(record, spec->second);
      for (const Triple& t : mapped.triples) triples.insert(t);
      const std::string iri_text = mapped.subject.iri_text();
      entities.insert(mapped.subject);
      for (auto& payload : mapped.texts) {
        text_predicates.insert(payload.predicate);
        texts[iri_text].push_back(std::move(payload.text));
      }
      if (mapped.year) years.try_emplace(iri_text, *mapped.year);
    }
  }
  for (const std::string& p : text_predicates) {
    triples.insert(Term::iri(p), iri(vocab::kRdfType), iri(vocab::kTextPayloadProperty));
  }

  IngestResult out;
  out.triples = triples.publish(0).triples();
  out.entities.assign(entities.begin(), entities.end());
  for (auto& [owner, parts] : texts) {
    std::string joined;
    for (const auto& p : parts) {
      if (p.empty()) continue;
      if (!joined.empty()) joined += ' ';
      joined += p;
    }
    extraction::Document doc{owner, owner, joined, std::nullopt};
    if (auto y = years.find(owner); y != years.end()) doc.year = y->second;
    out.documents.push_back(std::move(doc));
  }
  return out;
}

ExtractResult run_extract(const PipelineConfig& config, const IngestResult& ingested,
                          std::uint64_t version,
                          const std::map<std::string, ingest::Fingerprint>& prior_ledger,
                          const std::vector<extraction::ExtractedFact>& prior_facts) {
  const extraction::Gazetteer gazetteer =
      extraction::parse_gazetteer(read_json(config.resolve(config.gazetteer)));
  const auto rules = extraction::parse_rules(read_json(config.resolve(config.rules)));
  extraction::SplitOptions options{config.abbreviations};

  std::map<std::string, std::vector<const extraction::ExtractedFact*>> prior_by_doc;
  for (const auto& f : prior_facts) prior_by_doc[f.doc_id].push_back(&f);

  ExtractResult out;
  for (const extraction::Document& doc : ingested.documents) {
    std::optional<ingest::Fingerprint> prior;
    if (auto it = prior_ledger.find(doc.doc_id); it != prior_ledger.end()) prior = it->second;
    if (!ingest::needs_reextraction(doc.doc_id, doc.text, prior)) {
      out.ledger.push_back(*prior);
      for (const auto* f : prior_by_doc[doc.doc_id]) out.facts.push_back(*f);
      ++out.reused;
      continue;
    }
    out.ledger.push_back(ingest::fingerprint(doc.doc_id, doc.text, version));
    auto facts = extraction::extract_document(doc, gazetteer, rules, options);
    out.facts.insert(out.facts.end(), facts.begin(), facts.end());
    ++out.reextracted;
  }
  for (const std::string& path : config.external_facts) {
    auto facts = extraction::import_external_facts(read_file(config.resolve(path)));
    out.facts.insert(out.facts.end(), facts.begin(), facts.end());
  }

  std::sort(out.facts.begin(), out.facts.end(), fact_less);
  out.facts.erase(std::unique(out.facts.begin(), out.facts.end(),
                              [](const auto& a, const auto& b) {
                                return extraction::statement_id(a) ==
                                           extraction::statement_id(b) &&
                                       a.confidence == b.confidence;
                              }),
                  out.facts.end());
  return out;
}

GraphSnapshot assemble_graph(const IngestResult& ingested,
                             const std::vector<extraction::ExtractedFact>& facts,
                             const std::vector<analytics::BackgroundRow>& background,
                             std::uint64_t version) {
  GraphBuilder b;
  for (const Triple& t : ingested.triples) b.insert(t);
  std::map<std::string, std::string> owners;
  for (const auto& doc : ingested.documents) {
    owners[doc.doc_id] = doc.owner;
    for (const Triple& t : extraction::document_triples(doc)) b.insert(t);
  }
  for (const auto& f : facts) {
    auto it = owners.find(f.doc_id);
    for (const Triple& t : extraction::reify(f, it == owners.end() ? "" : it->second)) b.insert(t);
  }
  for (const auto& row : background) {
    for (const Triple& t : analytics::background_triples(row)) b.insert(t);
  }
  return b.publish(version);
}

BuildResult build(const PipelineConfig& config, std::uint64_t version) {
  std::map<std::string, ingest::Fingerprint> prior_ledger;
  std::vector<extraction::ExtractedFact> prior_facts;
  const std::string ledger_path = config.output_path("fingerprints.jsonl");
  const std::string facts_path = config.output_path("facts.jsonl");
  const std::string digest_path = config.output_path("extraction.digest");
  const std::string digest = resources_digest(config);
  if (fs::exists(ledger_path) && fs::exists(facts_path) && fs::exists(digest_path) &&
      trim(read_file(digest_path)) == digest) {
    prior_ledger = ingest::read_ledger(read_file(ledger_path));
    prior_facts = extraction::import_external_facts(read_file(facts_path));
  }

  BuildResult result;
  IngestResult ingested = run_ingest(config);
  result.extracted = run_extract(config, ingested, version, prior_ledger, prior_facts);
  std::vector<analytics::BackgroundRow> background;
  if (!config.background.empty()) {
    background = analytics::parse_background(read_file(config.resolve(config.background)));
  }
  Artifacts& a = result.artifacts;
  a.version = version;
  a.graph = assemble_graph(ingested, result.extracted.facts, background, version);
  a.model = recommender::fit(ingested.entities, a.graph, config.features);
  a.hierarchy = analytics::build_hierarchy(a.graph);
  return result;
}

void write_artifacts(const PipelineConfig& config, const BuildResult& result) {
  fs::create_directories(config.resolve(config.output_dir));
  write_file(config.output_path("graph.nt"), result.artifacts.graph.export_canonical());
  write_file(config.output_path("model.json"), result.artifacts.model.dump());
  write_file(config.output_path("facts.jsonl"), extraction::write_facts_jsonl(result.extracted.facts));
  write_file(config.output_path("fingerprints.jsonl"), ingest::write_ledger(result.extracted.ledger));
  write_file(config.output_path("extraction.digest"), resources_digest(config) + "\n");
  write_file(config.output_path("version"), std::to_string(result.artifacts.version) + "\n");
}

std::optional<Artifacts> load_artifacts(const PipelineConfig& config) {
  const std::string graph_path = config.output_path("graph.nt");
  const std::string model_path = config.output_path("model.json");
  const std::string version_path = config.output_path("version");
  if (!fs::exists(graph_path) || !fs::exists(model_path) || !fs::exists(version_path)) {
    return std::nullopt;
  }
  Artifacts a;
  std::string v = trim(read_file(version_path));
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), a.version);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ValidationError(version_path + ": not a version number");
  }
  a.graph = import_canonical(read_file(graph_path), a.version);
  a.model = recommender::VsmModel::load(read_file(model_path));
  a.hierarchy = analytics::build_hierarchy(a.graph);
  return a;
}

std::uint64_t next_version(const PipelineConfig& config) {
  const std::string path = config.output_path("version");
  if (!fs::exists(path)) return 1;
  std::string v = trim(read_file(path));
  std::uint64_t n = 0;
  std::from_chars(v.data(), v.data() + v.size(), n);
  return n + 1;
}

Artifacts load_or_build(const PipelineConfig& config) {
  if (auto a = load_artifacts(config)) return std::move(*a);
  BuildResult result = build(config, next_version(config));
  write_artifacts(config, result);
  return std::move(result.artifacts);
}

}  // namespace kgforge
