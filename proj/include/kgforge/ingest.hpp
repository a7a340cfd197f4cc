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

#ifndef KGFORGE_INGEST_HPP_
#define KGFORGE_INGEST_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "kgforge/graph_store.hpp"

namespace kgforge::ingest {

using Json = nlohmann::json;

inline constexpr int kMappingSchemaVersion = 1;

enum class PropertyKind { kLiteral, kDate, kEntityRef, kTextPayload };

struct IdRule {
  std::vector<std::string> key_paths;
  std::string ns;  // IRI prefix, e.g. "urn:res:person/"
};

struct PropertyRule {
  std::string path;
  std::string predicate;
  PropertyKind kind = PropertyKind::kLiteral;
  std::string ref_namespace;  // entity-ref only
  std::string ref_key_path;   // entity-ref only, relative to each element
  bool required = false;
};

// Named normalization rules attached to a source path. Trim and whitespace
// collapse always run on strings; these add to them.
struct NormalizeRules {
  bool lowercase = false;
  enum class DateOrder { kNone, kYmd, kMdy, kDmy } date = DateOrder::kNone;
};

struct MappingSpec {
  std::string source;
  std::string record_type;
  IdRule id;
  std::vector<PropertyRule> properties;
  std::map<std::string, NormalizeRules> normalizers;
  // Optional path to the record's year, used to date its document.
  std::string year_path;

  const NormalizeRules& rules_for(const std::string& path) const;
};

// Validates a mapping document (see docs/mapping-spec.md). Throws
// ValidationError naming the offending field.
MappingSpec parse_mapping(const Json& doc);

struct SourceRecord {
  Json data;
  std::string source;
  std::string retrieved_at;  // ISO-8601 timestamp, informational
};

// Scalar JSON value as text: strings verbatim, integers without decimal
// point, booleans as true/false. Throws NormalizationError for null,
// objects and arrays.
std::string scalar_text(const Json& value, const std::string& path);

// trim -> collapse whitespace -> optional lowercase -> optional date
// coercion to YYYY-MM-DD. Throws NormalizationError carrying `path` when the
// date rule cannot parse the value.
std::string normalize(std::string_view value, const NormalizeRules& rules,
                      const std::string& path = "");

// Resolves a dotted path ("a.b.c") against a JSON tree, fanning out through
// arrays. Missing keys and nulls yield no values.
std::vector<Json> resolve_path(const Json& root, std::string_view path);

// namespace + percent-encoded normalized key values joined with "/".
// Throws ResolutionError naming the first missing or empty key.
std::string mint_iri(const Json& record, const IdRule& rule, const MappingSpec& spec);

struct TextPayload {
  std::string predicate;
  std::string text;
};

struct MappedRecord {
  Term subject;
  std::vector<Triple> triples;
  std::vector<TextPayload> texts;
  std::optional<int> year;
};

// One rdf:type triple plus one triple per resolved scalar per property
// rule. Text-payload rules emit the literal and also return the text so the
// caller can register it for extraction.
MappedRecord record_to_triples(const SourceRecord& record, const MappingSpec& spec);

// --------------------------------------------------------------------------
// Change detection

struct Fingerprint {
  std::string iri;
  std::string digest;  // 32 hex chars
  std::uint64_t version = 0;
};

Fingerprint fingerprint(std::string_view iri, std::string_view text,
                        std::uint64_t version);

// True iff there is no prior fingerprint or its digest differs from the
// digest of `text`.
bool needs_reextraction(std::string_view iri, std::string_view text,
                        const std::optional<Fingerprint>& prior);

// Fingerprint ledger: JSONL of {"iri", "digest", "version"}, sorted by IRI.
std::string write_ledger(const std::vector<Fingerprint>& entries);
std::map<std::string, Fingerprint> read_ledger(std::string_view jsonl);

// --------------------------------------------------------------------------
// Sources

// A JSON array of records, either a local file or a plain-HTTP GET endpoint.
// For URLs returning {"items": [...], "next": "<cursor>"}, pages are followed
// by re-issuing the request with `cursor_param=<cursor>` until "next" is
// absent or null.
struct SourceLocation {
  std::string mapping;  // MappingSpec::source this feed belongs to
  std::string path;
  std::string url;
  std::string cursor_param = "cursor";
};

std::vector<SourceRecord> fetch_records(const SourceLocation& location,
                                        const std::string& base_dir = "");

}  // namespace kgforge::ingest

#endif  // KGFORGE_INGEST_HPP_
