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

#ifndef KGFORGE_ANALYTICS_HPP_
#define KGFORGE_ANALYTICS_HPP_

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kgforge/graph_store.hpp"

namespace kgforge::analytics {

// Identifiers: entities and types in the Wikidata entity namespace are
// addressed by their bare id ("Q11862829"); anything else by its full IRI.
std::string short_id(const Term& t);
Term term_for_id(std::string_view id);

// Least rdfs:label of the node, falling back to its short id.
std::string label_of(const GraphSnapshot& kg, const Term& t);

// ---------------------------------------------------------------------------
// Background KB

struct BackgroundRow {
  std::string subject;
  std::string relation;
  std::string object;
  std::string subject_label;
  std::string relation_label;
  std::string object_label;
};

// JSONL, one row per line: {"subject", "relation", "object"} ids plus
// optional "subject_label", "relation_label", "object_label". Throws
// ParseError with the line number.
std::vector<BackgroundRow> parse_background(std::string_view jsonl);

// wd:subject wdt:relation wd:object plus one rdfs:label per given label.
std::vector<Triple> background_triples(const BackgroundRow& row);

// ---------------------------------------------------------------------------
// Type hierarchy

struct TypeNode {
  std::string id;                    // least member id
  std::string label;
  std::vector<std::string> members;  // sorted; more than one after a cycle
  std::vector<std::size_t> parents;  // node indexes, sorted
  std::vector<std::size_t> children;
};

class TypeHierarchy {
 public:
  TypeHierarchy() = default;

  const std::vector<TypeNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool contains(std::string_view type_id) const;
  // Node index of the component containing type_id; throws NotFoundError.
  std::size_t index_of(std::string_view type_id) const;
  const TypeNode& node(std::string_view type_id) const { return nodes_[index_of(type_id)]; }

  // Node indexes reachable downwards, including the start node, sorted.
  std::vector<std::size_t> descendants(std::size_t index) const;
  // Member type ids of the node and all its descendants.
  std::set<std::string> descendant_type_ids(std::size_t index) const;

  friend TypeHierarchy build_hierarchy(const GraphSnapshot& kg);

 private:
  std::vector<TypeNode> nodes_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Nodes: every subject/object type of a reified fact, both ends of every
// subclass edge and every instance-of object. Edges: direct wdt:P279
// triples and reified facts whose relation is P279. Strongly connected
// components collapse into one node.
TypeHierarchy build_hierarchy(const GraphSnapshot& kg);

struct TypeStats {
  std::string type_id;
  std::string label;
  std::size_t direct = 0;      // distinct entities typed with the node's members
  std::size_t transitive = 0;  // distinct entities over the node and descendants
  std::size_t triples = 0;     // reified facts with one of those entities as an argument
  friend bool operator==(const TypeStats&, const TypeStats&) = default;
};

// Entities typed (rdf:type or wdt:P31) with any member of the node.
std::set<Term> direct_entities(const TypeHierarchy& h, const GraphSnapshot& kg,
                               std::size_t index);
std::set<Term> transitive_entities(const TypeHierarchy& h, const GraphSnapshot& kg,
                                   std::size_t index);

// Throws NotFoundError for a type outside the hierarchy.
TypeStats type_stats(const TypeHierarchy& h, const GraphSnapshot& kg, std::string_view type_id);

// Sorted by transitive count descending, then type id.
std::vector<TypeStats> top_types(const TypeHierarchy& h, const GraphSnapshot& kg, std::size_t n);
std::vector<TypeStats> children_sorted(const TypeHierarchy& h, const GraphSnapshot& kg,
                                       std::string_view type_id);

// "algorithm — 473 direct / 746 transitive"
std::string render_type_stats(const TypeStats& s);

// ---------------------------------------------------------------------------
// Trends

enum class TrendCount { kDocuments, kMentions };

struct TrendRow {
  std::string entity_id;
  std::string label;
  std::vector<std::size_t> counts;  // one per year
  std::vector<double> cells;        // percentages, one per year
  std::size_t total = 0;
  friend bool operator==(const TrendRow&, const TrendRow&) = default;
};

struct TrendTable {
  std::string type_id;
  int from = 0;
  int to = 0;
  std::vector<TrendRow> rows;  // total descending, then entity id
  friend bool operator==(const TrendTable&, const TrendTable&) = default;
};

// Rows for the transitive instances of the type. By default count(e, y) is
// the number of distinct documents of year y with a reified fact mentioning
// e as subject or object; kMentions counts the facts instead. Throws
// ValidationError when from > to, NotFoundError for an unknown type.
TrendTable trend_table(const TypeHierarchy& h, const GraphSnapshot& kg, std::string_view type_id,
                       int from, int to, TrendCount mode = TrendCount::kDocuments);

// ---------------------------------------------------------------------------
// Schemas and infoboxes

struct SchemaRelation {
  std::string relation_id;
  std::string label;
  std::size_t frequency = 0;
  friend bool operator==(const SchemaRelation&, const SchemaRelation&) = default;
};

struct InfoboxSchema {
  std::string type_id;
  std::vector<SchemaRelation> relations;  // frequency descending, then id
};

inline constexpr std::size_t kDefaultSchemaSize = 10;

// Counts reified facts by relation where the fact's subject type is the
// type or one of its descendants.
InfoboxSchema induce_schema(const GraphSnapshot& kg, const TypeHierarchy& h,
                            std::string_view type_id, std::size_t n = kDefaultSchemaSize);

struct EvidenceRecord {
  std::string statement_id;
  std::string sentence;
  std::string doc_id;
  std::size_t offset = 0;
  double confidence = 0.0;
  friend bool operator==(const EvidenceRecord&, const EvidenceRecord&) = default;
};

// Records for every reified statement asserting the same triple as the
// given statement, ordered by doc id, offset, statement id. Throws
// NotFoundError for an unknown statement.
std::vector<EvidenceRecord> evidence_for(const GraphSnapshot& kg, std::string_view statement_id);

struct InfoboxObject {
  std::string object_id;
  std::string label;
  std::vector<EvidenceRecord> evidence;  // induced occurrences
  bool background = false;               // asserted directly by the background KB
};

struct InfoboxRow {
  std::string relation_id;
  std::string label;
  std::vector<InfoboxObject> objects;  // by object id
};

struct Infobox {
  std::string entity_id;
  std::string label;
  std::vector<std::string> types;
  std::vector<InfoboxRow> rows;  // schema rank order; empty rows omitted
};

// Throws NotFoundError when the entity does not occur in the graph.
Infobox infobox(const GraphSnapshot& kg, const TypeHierarchy& h, std::string_view entity_id,
                std::size_t schema_size = kDefaultSchemaSize);

// ---------------------------------------------------------------------------
// Rendering

nlohmann::json to_json(const TypeStats& s);
nlohmann::json to_json(const TrendTable& t);
nlohmann::json to_json(const InfoboxSchema& s);
nlohmann::json to_json(const EvidenceRecord& e);
nlohmann::json to_json(const Infobox& b);

std::string render_trends(const TrendTable& t);
std::string render_infobox(const Infobox& b);

}  // namespace kgforge::analytics

#endif  // KGFORGE_ANALYTICS_HPP_
