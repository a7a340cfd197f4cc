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

#ifndef KGFORGE_PIPELINE_HPP_
#define KGFORGE_PIPELINE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "kgforge/analytics.hpp"
#include "kgforge/extraction.hpp"
#include "kgforge/graph_store.hpp"
#include "kgforge/ingest.hpp"
#include "kgforge/recommender.hpp"

namespace kgforge {

// Paths are resolved against the directory of the config file.
struct PipelineConfig {
  std::string base_dir = ".";
  std::string ontology;  // optional vocabulary file, one IRI per line
  std::vector<std::string> mappings;
  std::vector<ingest::SourceLocation> sources;
  std::string gazetteer;
  std::string rules;
  std::set<std::string> abbreviations;
  std::string background;                   // optional background KB JSONL
  std::vector<std::string> external_facts;  // optional fact JSONL files
  std::string output_dir = "out";

  recommender::FeatureConfig features;
  recommender::RecommendOptions recommend;
  std::map<std::string, std::string> categories;  // name -> type IRI
  std::size_t schema_size = analytics::kDefaultSchemaSize;

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string feedback_log = "feedback.jsonl";

  std::string resolve(const std::string& path) const;
  std::string output_path(const std::string& name) const;
};

// Throws ValidationError naming the offending key.
PipelineConfig parse_config(const nlohmann::json& doc, const std::string& base_dir = ".");
PipelineConfig load_config(const std::string& path);

struct IngestResult {
  std::vector<Triple> triples;
  std::vector<extraction::Document> documents;  // one per entity with text, by doc id
  std::vector<Term> entities;                   // record subjects, sorted
};

IngestResult run_ingest(const PipelineConfig& config);

struct ExtractResult {
  std::vector<extraction::ExtractedFact> facts;
  std::vector<ingest::Fingerprint> ledger;
  std::size_t reextracted = 0;
  std::size_t reused = 0;
};

// Documents whose fingerprint matches prior_ledger reuse their facts from
// prior_facts instead of being re-parsed. External fact files are appended.
ExtractResult run_extract(const PipelineConfig& config, const IngestResult& ingested,
                          std::uint64_t version,
                          const std::map<std::string, ingest::Fingerprint>& prior_ledger = {},
                          const std::vector<extraction::ExtractedFact>& prior_facts = {});

GraphSnapshot assemble_graph(const IngestResult& ingested,
                             const std::vector<extraction::ExtractedFact>& facts,
                             const std::vector<analytics::BackgroundRow>& background,
                             std::uint64_t version);

// The trio served together; all three belong to one build version.
struct Artifacts {
  std::uint64_t version = 0;
  GraphSnapshot graph;
  recommender::VsmModel model;
  analytics::TypeHierarchy hierarchy;
};

struct BuildResult {
  Artifacts artifacts;
  ExtractResult extracted;
};

// ingest -> extract (incremental against any ledger in the output
// directory) -> graph -> model -> hierarchy.
BuildResult build(const PipelineConfig& config, std::uint64_t version);

// graph.nt, model.json, facts.jsonl, fingerprints.jsonl, version.
void write_artifacts(const PipelineConfig& config, const BuildResult& result);
std::optional<Artifacts> load_artifacts(const PipelineConfig& config);

// Next version number after the one recorded in the output directory.
std::uint64_t next_version(const PipelineConfig& config);

// Loads artifacts from the output directory, building and writing them first
// when absent.
Artifacts load_or_build(const PipelineConfig& config);

}  // namespace kgforge

#endif  // KGFORGE_PIPELINE_HPP_
