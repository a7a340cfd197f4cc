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

#include "kgforge/analytics.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <functional>

#include "kgforge/common.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge::analytics {

namespace {

using Json = nlohmann::json;

Term viri(std::string_view v) { return Term::iri(std::string(v)); }

const Term& rdf_type() {
  static const Term t = viri(vocab::kRdfType);
  return t;
}

Term instance_of() { return Term::iri(vocab::relation_iri(vocab::kInstanceOf)); }
Term subclass_of() { return Term::iri(vocab::relation_iri(vocab::kSubclassOf)); }

std::vector<Term> all_statements(const GraphSnapshot& kg) {
  return kg.subjects(rdf_type(), viri(vocab::kRdfStatement));
}

std::size_t integer_of(const std::optional<Term>& t) {
  if (!t || !t->is_literal()) return 0;
  std::size_t v = 0;
  const std::string& s = t->value();
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::optional<int> year_of(const GraphSnapshot& kg, const Term& doc) {
  auto y = kg.object(doc, viri(vocab::kYear));
  if (!y || !y->is_literal()) return std::nullopt;
  int v = 0;
  const std::string& s = y->value();
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

double max_confidence(const GraphSnapshot& kg, const Term& stmt) {
  double best = 0.0;
  for (const Term& c : kg.objects(stmt, viri(vocab::kConfidence))) {
    if (c.is_literal()) best = std::max(best, std::strtod(c.value().c_str(), nullptr));
  }
  return best;
}

EvidenceRecord evidence_record(const GraphSnapshot& kg, const Term& stmt) {
  EvidenceRecord r;
  r.statement_id = stmt.value();
  if (auto s = kg.object(stmt, viri(vocab::kEvidenceSentence)); s && s->is_literal()) {
    r.sentence = s->value();
  }
  if (auto d = kg.object(stmt, viri(vocab::kEvidenceDocument)); d && d->is_iri()) {
    r.doc_id = vocab::document_id(d->value());
  }
  r.offset = integer_of(kg.object(stmt, viri(vocab::kEvidenceOffset)));
  r.confidence = max_confidence(kg, stmt);
  return r;
}

bool evidence_less(const EvidenceRecord& a, const EvidenceRecord& b) {
  return std::tie(a.doc_id, a.offset, a.statement_id) <
         std::tie(b.doc_id, b.offset, b.statement_id);
}

// Reified statements with the entity as subject or object.
std::set<Term> statements_mentioning(const GraphSnapshot& kg, const Term& e) {
  std::set<Term> out;
  for (Term& s : kg.subjects(viri(vocab::kRdfSubject), e)) out.insert(std::move(s));
  for (Term& s : kg.subjects(viri(vocab::kRdfObject), e)) out.insert(std::move(s));
  return out;
}

const Json& require(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string() || it->get<std::string>().empty()) {
    throw ValidationError(std::string("\"") + key + "\" must be a non-empty string");
  }
  return *it;
}

std::string optional_string(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return "";
  if (!it->is_string()) throw ValidationError(std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

}  // namespace

std::string short_id(const Term& t) {
  std::string text = t.is_literal() ? t.value() : t.iri_text();
  std::string id = vocab::entity_id(text);
  return id.empty() ? text : id;
}

Term term_for_id(std::string_view id) {
  if (id.find(':') != std::string_view::npos) return Term::iri(std::string(id));
  return Term::iri(vocab::entity_iri(id));
}

std::string label_of(const GraphSnapshot& kg, const Term& t) {
  if (auto l = kg.object(t, viri(vocab::kRdfsLabel)); l && l->is_literal()) return l->value();
  return short_id(t);
}

std::vector<BackgroundRow> parse_background(std::string_view jsonl) {
  std::vector<BackgroundRow> out;
  std::size_t line_no = 0, pos = 0;
  while (pos < jsonl.size()) {
    std::size_t nl = jsonl.find('\n', pos);
    std::string_view line =
        jsonl.substr(pos, nl == std::string_view::npos ? jsonl.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? jsonl.size() : nl + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      Json j = Json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) throw ValidationError("expected a JSON object");
      BackgroundRow r;
      r.subject = require(j, "subject").get<std::string>();
      r.relation = require(j, "relation").get<std::string>();
      r.object = require(j, "object").get<std::string>();
      r.subject_label = optional_string(j, "subject_label");
      r.relation_label = optional_string(j, "relation_label");
      r.object_label = optional_string(j, "object_label");
      out.push_back(std::move(r));
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

std::vector<Triple> background_triples(const BackgroundRow& row) {
  const Term s = term_for_id(row.subject);
  const Term p = Term::iri(vocab::relation_iri(row.relation));
  const Term o = term_for_id(row.object);
  const Term label = viri(vocab::kRdfsLabel);
  std::vector<Triple> out = {{s, p, o}};
  if (!row.subject_label.empty()) out.push_back({s, label, lit(row.subject_label)});
  if (!row.relation_label.empty()) out.push_back({p, label, lit(row.relation_label)});
  if (!row.object_label.empty()) out.push_back({o, label, lit(row.object_label)});
  return out;
}

// ---------------------------------------------------------------------------
// Hierarchy

bool TypeHierarchy::contains(std::string_view type_id) const {
  return index_.find(type_id) != index_.end();
}

std::size_t TypeHierarchy::index_of(std::string_view type_id) const {
  auto it = index_.find(type_id);
  if (it == index_.end()) throw NotFoundError("unknown type " + std::string(type_id));
  return it->second;
}

std::vector<std::size_t> TypeHierarchy::descendants(std::size_t index) const {
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<std::size_t> stack{index}, out;
  seen[index] = true;
  while (!stack.empty()) {
    std::size_t n = stack.back();
    stack.pop_back();
    out.push_back(n);
    for (std::size_t c : nodes_[n].children) {
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::string> TypeHierarchy::descendant_type_ids(std::size_t index) const {
  std::set<std::string> out;
  for (std::size_t n : descendants(index)) {
    out.insert(nodes_[n].members.begin(), nodes_[n].members.end());
  }
  return out;
}

TypeHierarchy build_hierarchy(const GraphSnapshot& kg) {
  std::set<std::string> ids;
  std::set<std::pair<std::string, std::string>> edges;  // child, parent

  for (const Term& st : all_statements(kg)) {
    for (auto pred : {vocab::kSubjectType, vocab::kObjectType}) {
      for (const Term& t : kg.objects(st, viri(pred))) ids.insert(short_id(t));
    }
    if (kg.contains({st, viri(vocab::kRdfPredicate), subclass_of()})) {
      auto s = kg.object(st, viri(vocab::kRdfSubject));
      auto o = kg.object(st, viri(vocab::kRdfObject));
      if (s && o) edges.emplace(short_id(*s), short_id(*o));
    }
  }
  for (const Triple& t : kg.match(std::nullopt, subclass_of())) {
    if (!t.object.is_literal()) edges.emplace(short_id(t.subject), short_id(t.object));
  }
  for (const Triple& t : kg.match(std::nullopt, instance_of())) {
    if (!t.object.is_literal()) ids.insert(short_id(t.object));
  }
  for (const auto& [c, p] : edges) {
    ids.insert(c);
    ids.insert(p);
  }

  // Tarjan over the id graph, iterative.
  std::vector<std::string> id_list(ids.begin(), ids.end());
  std::map<std::string, std::size_t, std::less<>> pos;
  for (std::size_t i = 0; i < id_list.size(); ++i) pos[id_list[i]] = i;
  std::vector<std::vector<std::size_t>> adj(id_list.size());
  for (const auto& [c, p] : edges) {
    if (c != p) adj[pos[c]].push_back(pos[p]);
  }

  const std::size_t n = id_list.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, n_comp = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (order[root] != kUnset) continue;
    std::vector<std::pair<std::size_t, std::size_t>> work{{root, 0}};
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!work.empty()) {
      auto& [v, next] = work.back();
      if (next < adj[v].size()) {
        std::size_t w = adj[v][next++];
        if (order[w] == kUnset) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order[w]);
        }
        continue;
      }
      if (low[v] == order[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = n_comp;
        } while (w != v);
        ++n_comp;
      }
      std::size_t done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
    }
  }

  std::vector<std::vector<std::string>> members(n_comp);
  for (std::size_t i = 0; i < n; ++i) members[comp[i]].push_back(id_list[i]);
  for (auto& m : members) std::sort(m.begin(), m.end());
  std::vector<std::size_t> by_id(n_comp);
  for (std::size_t c = 0; c < n_comp; ++c) by_id[c] = c;
  std::sort(by_id.begin(), by_id.end(),
            [&](std::size_t a, std::size_t b) { return members[a][0] < members[b][0]; });
  std::vector<std::size_t> node_of_comp(n_comp);
  for (std::size_t k = 0; k < n_comp; ++k) node_of_comp[by_id[k]] = k;

  TypeHierarchy h;
  h.nodes_.resize(n_comp);
  for (std::size_t c = 0; c < n_comp; ++c) {
    TypeNode& node = h.nodes_[node_of_comp[c]];
    node.members = members[c];
    node.id = members[c][0];
    node.label = label_of(kg, term_for_id(node.id));
  }
  std::set<std::pair<std::size_t, std::size_t>> node_edges;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : adj[v]) {
      std::size_t a = node_of_comp[comp[v]], b = node_of_comp[comp[w]];
      if (a != b) node_edges.emplace(a, b);
    }
  }
  for (const auto& [child, parent] : node_edges) {
    h.nodes_[child].parents.push_back(parent);
    h.nodes_[parent].children.push_back(child);
  }
  for (auto& node : h.nodes_) {
    std::sort(node.parents.begin(), node.parents.end());
    std::sort(node.children.begin(), node.children.end());
  }
  for (std::size_t i = 0; i < h.nodes_.size(); ++i) {
    for (const auto& m : h.nodes_[i].members) h.index_[m] = i;
  }
  return h;
}

std::set<Term> direct_entities(const TypeHierarchy& h, const GraphSnapshot& kg,
                               std::size_t index) {
  std::set<Term> out;
  for (const std::string& id : h.nodes()[index].members) {
    const Term t = term_for_id(id);
    for (Term& e : kg.subjects(rdf_type(), t)) out.insert(std::move(e));
    for (Term& e : kg.subjects(instance_of(), t)) out.insert(std::move(e));
  }
  return out;
}

std::set<Term> transitive_entities(const TypeHierarchy& h, const GraphSnapshot& kg,
                                   std::size_t index) {
  std::set<Term> out;
  for (std::size_t d : h.descendants(index)) out.merge(direct_entities(h, kg, d));
  return out;
}

namespace {

TypeStats stats_for(const TypeHierarchy& h, const GraphSnapshot& kg, std::size_t index) {
  TypeStats s;
  s.type_id = h.nodes()[index].id;
  s.label = h.nodes()[index].label;
  s.direct = direct_entities(h, kg, index).size();
  auto all = transitive_entities(h, kg, index);
  s.transitive = all.size();
  std::set<Term> stmts;
  for (const Term& e : all) stmts.merge(statements_mentioning(kg, e));
  s.triples = stmts.size();
  return s;
}

void sort_stats(std::vector<TypeStats>& v) {
  std::sort(v.begin(), v.end(), [](const TypeStats& a, const TypeStats& b) {
    if (a.transitive != b.transitive) return a.transitive > b.transitive;
    return a.type_id < b.type_id;
  });
}

}  // namespace

TypeStats type_stats(const TypeHierarchy& h, const GraphSnapshot& kg, std::string_view type_id) {
  return stats_for(h, kg, h.index_of(type_id));
}

std::vector<TypeStats> top_types(const TypeHierarchy& h, const GraphSnapshot& kg, std::size_t n) {
  std::vector<TypeStats> out;
  for (std::size_t i = 0; i < h.size(); ++i) out.push_back(stats_for(h, kg, i));
  sort_stats(out);
  if (out.size() > n) out.resize(n);
  return out;
}

std::vector<TypeStats> children_sorted(const TypeHierarchy& h, const GraphSnapshot& kg,
                                       std::string_view type_id) {
  std::vector<TypeStats> out;
  for (std::size_t c : h.nodes()[h.index_of(type_id)].children) out.push_back(stats_for(h, kg, c));
  sort_stats(out);
  return out;
}

std::string render_type_stats(const TypeStats& s) {
  return s.label + " — " + std::to_string(s.direct) + " direct / " +
         std::to_string(s.transitive) + " transitive";
}

// ---------------------------------------------------------------------------
// Trends

TrendTable trend_table(const TypeHierarchy& h, const GraphSnapshot& kg, std::string_view type_id,
                       int from, int to, TrendCount mode) {
  if (from > to) {
    throw ValidationError("empty year range " + std::to_string(from) + ".." + std::to_string(to));
  }
  const std::size_t index = h.index_of(type_id);
  const std::size_t n_years = static_cast<std::size_t>(to - from) + 1;

  TrendTable table;
  table.type_id = h.nodes()[index].id;
  table.from = from;
  table.to = to;
  for (const Term& e : transitive_entities(h, kg, index)) {
    std::vector<std::set<Term>> docs(n_years);
    std::vector<std::size_t> facts(n_years, 0);
    for (const Term& st : statements_mentioning(kg, e)) {
      for (const Term& doc : kg.objects(st, viri(vocab::kEvidenceDocument))) {
        auto y = year_of(kg, doc);
        if (!y || *y < from || *y > to) continue;
        std::size_t slot = static_cast<std::size_t>(*y - from);
        docs[slot].insert(doc);
        ++facts[slot];
      }
    }
    TrendRow row;
    row.entity_id = short_id(e);
    row.label = label_of(kg, e);
    for (std::size_t i = 0; i < n_years; ++i) {
      row.counts.push_back(mode == TrendCount::kDocuments ? docs[i].size() : facts[i]);
      row.total += row.counts.back();
    }
    if (row.total == 0) continue;
    for (std::size_t c : row.counts) {
      row.cells.push_back(100.0 * static_cast<double>(c) / static_cast<double>(row.total));
    }
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const TrendRow& a, const TrendRow& b) {
    if (a.total != b.total) return a.total > b.total;
    return a.entity_id < b.entity_id;
  });
  return table;
}

// ---------------------------------------------------------------------------
// Schemas, evidence, infoboxes

InfoboxSchema induce_schema(const GraphSnapshot& kg, const TypeHierarchy& h,
                            std::string_view type_id, std::size_t n) {
  std::set<std::string> types;
  if (h.contains(type_id)) {
    types = h.descendant_type_ids(h.index_of(type_id));
  } else {
    types.insert(std::string(type_id));
  }
  std::map<std::string, std::pair<std::size_t, Term>> freq;
  for (const Term& st : all_statements(kg)) {
    auto stype = kg.object(st, viri(vocab::kSubjectType));
    auto rel = kg.object(st, viri(vocab::kRdfPredicate));
    if (!stype || !rel || !types.count(short_id(*stype))) continue;
    std::string rid = vocab::relation_id(rel->iri_text());
    if (rid.empty()) rid = rel->iri_text();
    auto [it, _] = freq.try_emplace(rid, 0, *rel);
    ++it->second.first;
  }
  InfoboxSchema schema;
  schema.type_id = h.contains(type_id) ? h.node(type_id).id : std::string(type_id);
  for (const auto& [rid, entry] : freq) {
    schema.relations.push_back({rid, label_of(kg, entry.second), entry.first});
  }
  std::stable_sort(schema.relations.begin(), schema.relations.end(),
                   [](const SchemaRelation& a, const SchemaRelation& b) {
                     return a.frequency > b.frequency;
                   });
  if (schema.relations.size() > n) schema.relations.resize(n);
  return schema;
}

std::vector<EvidenceRecord> evidence_for(const GraphSnapshot& kg, std::string_view statement_id) {
  const Term stmt = Term::statement(std::string(statement_id));
  if (!kg.contains({stmt, rdf_type(), viri(vocab::kRdfStatement)})) {
    throw NotFoundError("unknown statement " + std::string(statement_id));
  }
  auto s = kg.object(stmt, viri(vocab::kRdfSubject));
  auto p = kg.object(stmt, viri(vocab::kRdfPredicate));
  auto o = kg.object(stmt, viri(vocab::kRdfObject));
  std::vector<EvidenceRecord> out;
  if (!s || !p || !o) {
    out.push_back(evidence_record(kg, stmt));
    return out;
  }
  for (const Term& other : kg.subjects(viri(vocab::kRdfSubject), *s)) {
    if (kg.contains({other, viri(vocab::kRdfPredicate), *p}) &&
        kg.contains({other, viri(vocab::kRdfObject), *o})) {
      out.push_back(evidence_record(kg, other));
    }
  }
  std::sort(out.begin(), out.end(), evidence_less);
  return out;
}

Infobox infobox(const GraphSnapshot& kg, const TypeHierarchy& h, std::string_view entity_id,
                std::size_t schema_size) {
  const Term e = term_for_id(entity_id);
  if (kg.match(e).empty() && kg.match(std::nullopt, std::nullopt, e).empty()) {
    throw NotFoundError("unknown entity " + std::string(entity_id));
  }
  Infobox box;
  box.entity_id = short_id(e);
  box.label = label_of(kg, e);
  std::set<std::string> types;
  for (const Term& t : kg.objects(e, rdf_type())) {
    if (t.is_iri() && h.contains(short_id(t))) types.insert(short_id(t));
  }
  for (const Term& t : kg.objects(e, instance_of())) {
    if (t.is_iri() && h.contains(short_id(t))) types.insert(short_id(t));
  }
  box.types.assign(types.begin(), types.end());

  // relation id -> (best rank, label)
  std::map<std::string, std::pair<std::size_t, std::string>> relations;
  for (const std::string& t : box.types) {
    auto schema = induce_schema(kg, h, t, schema_size);
    for (std::size_t r = 0; r < schema.relations.size(); ++r) {
      const auto& rel = schema.relations[r];
      auto [it, inserted] = relations.try_emplace(rel.relation_id, r, rel.label);
      if (!inserted) it->second.first = std::min(it->second.first, r);
    }
  }
  std::vector<std::pair<std::size_t, std::string>> order;
  for (const auto& [rid, v] : relations) order.emplace_back(v.first, rid);
  std::sort(order.begin(), order.end());

  const auto stmts = kg.subjects(viri(vocab::kRdfSubject), e);
  for (const auto& [_, rid] : order) {
    const Term rel = rid.find(':') != std::string::npos ? Term::iri(rid)
                                                        : Term::iri(vocab::relation_iri(rid));
    std::map<std::string, InfoboxObject> objects;
    for (const Term& st : stmts) {
      if (!kg.contains({st, viri(vocab::kRdfPredicate), rel})) continue;
      auto o = kg.object(st, viri(vocab::kRdfObject));
      if (!o) continue;
      InfoboxObject& obj = objects[short_id(*o)];
      obj.object_id = short_id(*o);
      obj.label = label_of(kg, *o);
      obj.evidence.push_back(evidence_record(kg, st));
    }
    for (const Term& o : kg.objects(e, rel)) {
      InfoboxObject& obj = objects[short_id(o)];
      obj.object_id = short_id(o);
      obj.label = o.is_literal() ? o.value() : label_of(kg, o);
      obj.background = true;
    }
    if (objects.empty()) continue;
    InfoboxRow row;
    row.relation_id = rid;
    row.label = relations[rid].second;
    for (auto& [__, obj] : objects) {
      std::sort(obj.evidence.begin(), obj.evidence.end(), evidence_less);
      row.objects.push_back(std::move(obj));
    }
    box.rows.push_back(std::move(row));
  }
  return box;
}

// ---------------------------------------------------------------------------
// Rendering

Json to_json(const TypeStats& s) {
  return {{"id", s.type_id},
          {"label", s.label},
          {"direct", s.direct},
          {"transitive", s.transitive},
          {"triples", s.triples}};
}

Json to_json(const TrendTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"id", r.entity_id},
                    {"label", r.label},
                    {"counts", r.counts},
                    {"cells", r.cells},
                    {"total", r.total}});
  }
  std::vector<int> years;
  for (int y = t.from; y <= t.to; ++y) years.push_back(y);
  return {{"type", t.type_id}, {"from", t.from}, {"to", t.to}, {"years", years}, {"rows", rows}};
}

Json to_json(const InfoboxSchema& s) {
  Json rels = Json::array();
  for (const auto& r : s.relations) {
    rels.push_back({{"id", r.relation_id}, {"label", r.label}, {"frequency", r.frequency}});
  }
  return {{"type", s.type_id}, {"relations", rels}};
}

Json to_json(const EvidenceRecord& e) {
  return {{"statement", e.statement_id},
          {"sentence", e.sentence},
          {"doc_id", e.doc_id},
          {"offset", e.offset},
          {"confidence", e.confidence}};
}

Json to_json(const Infobox& b) {
  Json rows = Json::array();
  for (const auto& r : b.rows) {
    Json objects = Json::array();
    for (const auto& o : r.objects) {
      Json evidence = Json::array();
      for (const auto& e : o.evidence) evidence.push_back(to_json(e));
      objects.push_back({{"id", o.object_id},
                         {"label", o.label},
                         {"evidence", evidence},
                         {"background", o.background}});
    }
    rows.push_back({{"relation", r.relation_id}, {"label", r.label}, {"objects", objects}});
  }
  return {{"id", b.entity_id}, {"label", b.label}, {"types", b.types}, {"rows", rows}};
}

std::string render_trends(const TrendTable& t) {
  std::size_t width = 6;
  for (const auto& r : t.rows) width = std::max(width, r.label.size());
  std::string out = "Entity" + std::string(width - 6, ' ');
  char buf[32];
  for (int y = t.from; y <= t.to; ++y) {
    std::snprintf(buf, sizeof buf, " %5d", y);
    out += buf;
  }
  out += "  Total\n";
  for (const auto& r : t.rows) {
    out += r.label + std::string(width - r.label.size(), ' ');
    for (double c : r.cells) {
      if (c == 0.0) {
        out += "      ";
      } else {
        std::snprintf(buf, sizeof buf, " %4.0f%%", c);
        out += buf;
      }
    }
    std::snprintf(buf, sizeof buf, "  %5zu\n", r.total);
    out += buf;
  }
  return out;
}

std::string render_infobox(const Infobox& b) {
  std::string out = b.label + " (" + b.entity_id + ")\n";
  std::string types;
  for (const auto& t : b.types) types += (types.empty() ? "" : ", ") + t;
  out += "  types: " + types + "\n";
  for (const auto& r : b.rows) {
    out += "  " + r.label + ":\n";
    for (const auto& o : r.objects) {
      out += "    " + o.label + (o.background ? " [KB]" : "") + "\n";
      for (const auto& e : o.evidence) {
        out += "      - " + e.sentence + " (" + e.doc_id + ", " + format_decimal(e.confidence) + ")\n";
      }
    }
  }
  return out;
}

}  // namespace kgforge::analytics
