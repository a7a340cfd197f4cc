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

#ifndef KGFORGE_EXTRACTION_HPP_
#define KGFORGE_EXTRACTION_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kgforge/graph_store.hpp"

namespace kgforge::extraction {

using Json = nlohmann::json;

struct Document {
  std::string doc_id;
  std::string owner;  // IRI of the entity the text is attached to
  std::string text;
  std::optional<int> year;
};

// Offsets are byte offsets into the UTF-8 document text.
struct Sentence {
  std::string doc_id;
  std::size_t offset = 0;
  std::string text;
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct GazetteerEntry {
  std::vector<std::string> surface_forms;
  std::string id;
  std::string label;
  std::string type_id;
  std::string type_label;
};

enum class Direction { kSubjectFirst, kObjectFirst, kEither };

struct RelationRule {
  std::string relation_id;
  std::string relation_label;
  std::string subject_type;
  std::string object_type;
  std::vector<std::string> trigger;  // lowercase tokens, matched contiguously
  Direction direction = Direction::kSubjectFirst;
  double confidence = 1.0;
};

struct Mention {
  std::size_t start = 0;  // within the sentence
  std::size_t end = 0;    // exclusive
  std::string surface;
  GazetteerEntry entry;
};

struct FactArgument {
  std::string mention;
  std::string label;
  std::string id;
  std::string type_id;
  std::string type_label;
  friend bool operator==(const FactArgument&, const FactArgument&) = default;
};

struct FactRelation {
  std::string id;
  std::string label;
  friend bool operator==(const FactRelation&, const FactRelation&) = default;
};

struct ExtractedFact {
  FactArgument subject;
  FactRelation relation;
  FactArgument object;
  std::string doc_id;
  std::size_t offset = 0;  // sentence start within the document
  std::string sentence;
  double confidence = 1.0;
  friend bool operator==(const ExtractedFact&, const ExtractedFact&) = default;
};

// ---------------------------------------------------------------------------
// Resources

class Gazetteer {
 public:
  Gazetteer() = default;
  explicit Gazetteer(std::vector<GazetteerEntry> entries);

  const std::vector<GazetteerEntry>& entries() const { return entries_; }

  // Surface forms, lowercased, longest first; ties by entity id.
  struct Form {
    std::string lowered;
    std::size_t entry;
  };
  const std::vector<Form>& forms() const { return forms_; }

 private:
  std::vector<GazetteerEntry> entries_;
  std::vector<Form> forms_;
};

// JSON arrays; see docs/formats.md.
Gazetteer parse_gazetteer(const Json& doc);
std::vector<RelationRule> parse_rules(const Json& doc);

// ---------------------------------------------------------------------------
// Pipeline stages

struct SplitOptions {
  std::set<std::string> abbreviations;  // tokens like "e.g." or "Dr."
};

// Splits after '.', '!' or '?' when followed by whitespace and then an
// uppercase letter or the end of the text, unless the word ending at the
// terminator is a listed abbreviation. Sentences are trimmed; empty ones are
// dropped.
std::vector<Sentence> split_sentences(const Document& doc, const SplitOptions& options = {});

// Leftmost-longest, non-overlapping, case-insensitive gazetteer matches on
// word boundaries, in offset order.
std::vector<Mention> find_mentions(const Sentence& s, const Gazetteer& gazetteer);

// Emits one fact per (ordered mention pair, matching rule) whose trigger
// occurs in the window between the mentions plus one token on each flank.
// Facts with the same (subject id, relation id, object id) collapse to the
// highest confidence.
std::vector<ExtractedFact> apply_rules(const Sentence& s, const std::vector<Mention>& mentions,
                                       const std::vector<RelationRule>& rules);

// split -> find_mentions -> apply_rules over a whole document.
std::vector<ExtractedFact> extract_document(const Document& doc, const Gazetteer& gazetteer,
                                            const std::vector<RelationRule>& rules,
                                            const SplitOptions& options = {});

// ---------------------------------------------------------------------------
// Fact JSONL exchange format

Json fact_to_json(const ExtractedFact& f);
std::string write_facts_jsonl(const std::vector<ExtractedFact>& facts);

// Validates every line; throws ParseError with the 1-based line number on a
// schema violation or a confidence outside (0, 1].
std::vector<ExtractedFact> import_external_facts(std::string_view jsonl);

// ---------------------------------------------------------------------------
// Reification

// Statement id: hex of a 128-bit hash over (doc id, sentence offset,
// subject id, relation id, object id).
std::string statement_id(const ExtractedFact& f);

// Triples for one fact: rdf:Statement node with subject/predicate/object
// links, mention literals, statement-level subject/object types, canonical
// labels for entities, types and the relation, rdf:type links for both
// arguments, the evidence sentence with its document and offset, the
// confidence as xsd:decimal, and (when owner is non-empty) a hasStatement
// link from the owning entity.
std::vector<Triple> reify(const ExtractedFact& f, std::string_view owner = {});

// Document node: type, owner link, text and optional year.
std::vector<Triple> document_triples(const Document& doc);

}  // namespace kgforge::extraction

#endif  // KGFORGE_EXTRACTION_HPP_
