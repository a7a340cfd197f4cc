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

#include "kgforge/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

#include "kgforge/common.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge::recommender {

namespace {

using Json = nlohmann::json;

Term viri(std::string_view v) { return Term::iri(std::string(v)); }

std::string label_of(const Term& t, const GraphSnapshot& kg) {
  if (auto l = kg.object(t, viri(vocab::kRdfsLabel)); l && l->is_literal()) return l->value();
  if (t.is_literal()) return t.value();
  std::string id = vocab::entity_id(t.iri_text());
  if (!id.empty()) return id;
  id = vocab::relation_id(t.iri_text());
  return id.empty() ? t.iri_text() : id;
}

bool is_text_payload(const Term& pred, const GraphSnapshot& kg) {
  return kg.contains({pred, viri(vocab::kRdfType), viri(vocab::kTextPayloadProperty)});
}

bool excluded_struct_predicate(const Term& pred, const GraphSnapshot& kg) {
  const std::string& p = pred.value();
  if (p.starts_with(vocab::kVocabNs) || p == vocab::kRdfsLabel) return true;
  return is_text_payload(pred, kg);
}

// bow, entity and frame features for one entity (no struct, no hops).
void content_features(const Term& entity, const GraphSnapshot& kg, const FeatureConfig& config,
                      FeatureCounts& out) {
  for (const Term& doc : kg.subjects(viri(vocab::kOwner), entity)) {
    for (const Term& text : kg.objects(doc, viri(vocab::kText))) {
      if (!text.is_literal()) continue;
      for (std::string& tok : tokenize(text.value())) {
        if (tok.size() < config.min_token_length || config.stopwords.count(tok)) continue;
        ++out[{FeatureGroup::kBow, std::move(tok)}];
      }
    }
  }
  for (const Term& st : kg.objects(entity, viri(vocab::kHasStatement))) {
    auto subj = kg.object(st, viri(vocab::kRdfSubject));
    auto rel = kg.object(st, viri(vocab::kRdfPredicate));
    auto obj = kg.object(st, viri(vocab::kRdfObject));
    auto stype = kg.object(st, viri(vocab::kSubjectType));
    auto otype = kg.object(st, viri(vocab::kObjectType));
    if (!subj || !rel || !obj) continue;
    std::string st_label = stype ? label_of(*stype, kg) : "";
    std::string ot_label = otype ? label_of(*otype, kg) : "";
    ++out[{FeatureGroup::kEntity, label_of(*subj, kg) + ":" + st_label}];
    ++out[{FeatureGroup::kEntity, label_of(*obj, kg) + ":" + ot_label}];
    ++out[{FeatureGroup::kFrame, st_label + "," + label_of(*rel, kg) + "," + ot_label}];
  }
}

bool owns_text(const Term& entity, const GraphSnapshot& kg) {
  return !kg.subjects(viri(vocab::kOwner), entity).empty();
}

bool is_person(const Term& entity, const GraphSnapshot& kg, const FeatureConfig& config) {
  for (const Term& t : kg.objects(entity, viri(vocab::kRdfType))) {
    if (t.is_iri() && config.person_types.count(t.value())) return true;
  }
  return false;
}

}  // namespace

std::string_view group_name(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::kBow: return "bow";
    case FeatureGroup::kStruct: return "struct";
    case FeatureGroup::kEntity: return "entity";
    case FeatureGroup::kFrame: return "frame";
  }
  return "?";
}

FeatureGroup parse_group(std::string_view name) {
  for (FeatureGroup g : kAllGroups) {
    if (group_name(g) == name) return g;
  }
  throw ValidationError("unknown feature group \"" + std::string(name) + "\"");
}

SparseVector::SparseVector(std::vector<std::pair<std::uint32_t, double>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [i, w] : entries) {
    if (!std::isfinite(w)) throw ValidationError("non-finite feature weight");
    if (!entries_.empty() && entries_.back().first == i) {
      entries_.back().second += w;
    } else {
      entries_.emplace_back(i, w);
    }
  }
  std::erase_if(entries_, [](const auto& e) { return e.second == 0.0; });
}

double SparseVector::norm() const {
  double s = 0.0;
  for (const auto& [_, w] : entries_) s += w * w;
  return std::sqrt(s);
}

double SparseVector::weight(std::uint32_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const auto& e, std::uint32_t i) { return e.first < i; });
  return it != entries_.end() && it->first == index ? it->second : 0.0;
}

double dot(const SparseVector& u, const SparseVector& v) {
  const auto& a = u.entries();
  const auto& b = v.entries();
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      s += a[i++].second * b[j++].second;
    }
  }
  return s;
}

double cosine(const SparseVector& u, const SparseVector& v) {
  if (u.empty() || v.empty()) return 0.0;
  return dot(u, v) / (u.norm() * v.norm());
}

FeatureCounts featurize(const Term& entity, const GraphSnapshot& kg, const FeatureConfig& config) {
  auto own = kg.match(entity);
  if (own.empty()) throw NotFoundError("entity not in graph: " + entity.canonical());

  FeatureCounts out;
  for (const Triple& t : own) {
    if (t.object.is_statement() || excluded_struct_predicate(t.predicate, kg)) continue;
    std::string obj = t.object.is_literal() ? t.object.value() : t.object.iri_text();
    ++out[{FeatureGroup::kStruct, t.predicate.value() + "=" + obj}];
  }
  content_features(entity, kg, config, out);

  if (!owns_text(entity, kg) && is_person(entity, kg, config)) {
    std::set<Term> visited{entity};
    std::deque<std::pair<Term, int>> queue{{entity, 0}};
    while (!queue.empty()) {
      auto [node, depth] = queue.front();
      queue.pop_front();
      if (depth >= config.hop_depth) continue;
      std::vector<Term> next;
      for (const std::string& p : config.hop_predicates) {
        for (Term& o : kg.objects(node, viri(p))) {
          if (o.is_iri()) next.push_back(std::move(o));
        }
        for (Term& s : kg.subjects(viri(p), node)) next.push_back(std::move(s));
      }
      for (Term& n : next) {
        if (!visited.insert(n).second) continue;
        content_features(n, kg, config, out);
        queue.emplace_back(std::move(n), depth + 1);
      }
    }
  }
  return out;
}

double VsmModel::group_weight(FeatureGroup g) const {
  return group_weights_[static_cast<std::size_t>(g)];
}

const SparseVector* VsmModel::row(std::string_view entity) const {
  auto it = rows_.find(std::string(entity));
  return it == rows_.end() ? nullptr : &it->second;
}

std::optional<std::uint32_t> VsmModel::index_of(const FeatureKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string VsmModel::dump() const {
  Json vocab = Json::array();
  for (const auto& k : vocabulary_) vocab.push_back({std::string(group_name(k.group)), k.name});
  Json weights = Json::object();
  for (FeatureGroup g : kAllGroups) weights[std::string(group_name(g))] = group_weight(g);
  Json rows = Json::object();
  for (const auto& [iri, v] : rows_) {
    Json r = Json::array();
    for (const auto& [i, w] : v.entries()) r.push_back({i, w});
    rows[iri] = std::move(r);
  }
  Json out = {{"vocab", std::move(vocab)},
              {"idf", idf_},
              {"group_weights", std::move(weights)},
              {"rows", std::move(rows)}};
  return out.dump() + "\n";
}

VsmModel VsmModel::load(std::string_view json) {
  VsmModel m;
  try {
    Json j = Json::parse(json);
    for (const Json& k : j.at("vocab")) {
      FeatureKey key{parse_group(k.at(0).get<std::string>()), k.at(1).get<std::string>()};
      m.index_.emplace(key, static_cast<std::uint32_t>(m.vocabulary_.size()));
      m.vocabulary_.push_back(std::move(key));
    }
    m.idf_ = j.at("idf").get<std::vector<double>>();
    if (m.idf_.size() != m.vocabulary_.size()) throw ValidationError("idf length mismatch");
    for (const auto& [g, w] : j.at("group_weights").items()) {
      m.group_weights_[static_cast<std::size_t>(parse_group(g))] = w.get<double>();
    }
    for (const auto& [iri, r] : j.at("rows").items()) {
      std::vector<std::pair<std::uint32_t, double>> entries;
      for (const Json& e : r) {
        auto i = e.at(0).get<std::uint32_t>();
        if (i >= m.vocabulary_.size()) throw ValidationError("feature index out of range");
        entries.emplace_back(i, e.at(1).get<double>());
      }
      m.rows_.emplace(iri, SparseVector(std::move(entries)));
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed model: ") + e.what());
  }
  m.fitted_ = true;
  return m;
}

double smoothed_idf(std::size_t n, std::size_t df) {
  return std::log((1.0 + static_cast<double>(n)) / (1.0 + static_cast<double>(df))) + 1.0;
}

VsmModel fit_counts(const std::map<std::string, FeatureCounts>& counts,
                    const std::map<FeatureGroup, double>& group_weights) {
  VsmModel m;
  for (const auto& [g, w] : group_weights) {
    if (!std::isfinite(w) || w < 0.0) throw ValidationError("group weight must be >= 0");
    m.group_weights_[static_cast<std::size_t>(g)] = w;
  }
  std::map<FeatureKey, std::size_t> df;
  for (const auto& [_, c] : counts) {
    for (const auto& [k, n] : c) {
      if (n > 0) ++df[k];
    }
  }
  for (const auto& [k, d] : df) {
    m.index_.emplace(k, static_cast<std::uint32_t>(m.vocabulary_.size()));
    m.vocabulary_.push_back(k);
    m.idf_.push_back(smoothed_idf(counts.size(), d));
  }
  for (const auto& [entity, c] : counts) {
    std::vector<std::pair<std::uint32_t, double>> entries;
    for (const auto& [k, n] : c) {
      if (n == 0) continue;
      std::uint32_t i = m.index_.at(k);
      entries.emplace_back(i, static_cast<double>(n) * m.idf_[i] * m.group_weight(k.group));
    }
    m.rows_.emplace(entity, SparseVector(std::move(entries)));
  }
  m.fitted_ = true;
  return m;
}

VsmModel fit(const std::vector<Term>& entities, const GraphSnapshot& kg,
             const FeatureConfig& config) {
  if (entities.empty()) throw ValidationError("no entities to fit");
  std::map<std::string, FeatureCounts> counts;
  for (const Term& e : entities) counts[e.iri_text()] = featurize(e, kg, config);
  return fit_counts(counts, config.group_weights);
}

std::vector<Recommendation> recommend(const VsmModel& model, const GraphSnapshot& kg,
                                      std::string_view user, std::string_view target_type,
                                      const RecommendOptions& options) {
  if (!model.fitted()) throw ValidationError("model is not fitted");
  if (options.k < 1) throw ValidationError("k must be at least 1");
  const SparseVector* u = model.row(user);
  if (!u) throw NotFoundError("no feature row for " + std::string(user));

  const Term user_term = Term::iri(std::string(user));
  std::unordered_set<std::string> connected;
  if (options.exclude_connected) {
    for (const std::string& p : options.authorship_predicates) {
      for (const Term& o : kg.objects(user_term, viri(p))) connected.insert(o.iri_text());
      for (const Term& s : kg.subjects(viri(p), user_term)) connected.insert(s.iri_text());
    }
  }

  std::vector<Recommendation> out;
  for (const Term& c : kg.subjects(viri(vocab::kRdfType), viri(target_type))) {
    std::string iri = c.iri_text();
    if (iri == user || connected.count(iri)) continue;
    const SparseVector* v = model.row(iri);
    if (!v) continue;
    out.push_back({iri, std::string(target_type), cosine(*u, *v), 0});
  }
  std::sort(out.begin(), out.end(), [](const Recommendation& a, const Recommendation& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.item < b.item;
  });
  if (out.size() > options.k) out.resize(options.k);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
  return out;
}

Explanation explain(const VsmModel& model, std::string_view user, std::string_view item,
                    std::size_t top_m) {
  const SparseVector* u = model.row(user);
  const SparseVector* v = model.row(item);
  if (!u) throw NotFoundError("no feature row for " + std::string(user));
  if (!v) throw NotFoundError("no feature row for " + std::string(item));

  Explanation e;
  e.score = cosine(*u, *v);
  if (u->empty() || v->empty()) return e;
  const double denom = u->norm() * v->norm();
  for (const auto& [i, w] : u->entries()) {
    double x = v->weight(i);
    if (x != 0.0) e.contributions.push_back({model.vocabulary()[i], w * x / denom});
  }
  std::sort(e.contributions.begin(), e.contributions.end(),
            [](const Contribution& a, const Contribution& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.feature < b.feature;
            });
  for (const Contribution& c : e.contributions) {
    auto& bucket = e.top[c.feature.group];
    if (bucket.size() < top_m) bucket.push_back(c);
  }

  std::map<std::string, EntityGroup> groups;
  for (const Contribution& c : e.contributions) {
    if (c.feature.group != FeatureGroup::kEntity) continue;
    std::size_t colon = c.feature.name.rfind(':');
    std::string label = colon == std::string::npos ? c.feature.name : c.feature.name.substr(0, colon);
    std::string type = colon == std::string::npos ? "" : c.feature.name.substr(colon + 1);
    EntityGroup& g = groups[type];
    g.type_label = type;
    g.entities.emplace_back(std::move(label), c.weight);
    g.total += c.weight;
  }
  for (auto& [_, g] : groups) e.grouped.push_back(std::move(g));
  std::stable_sort(e.grouped.begin(), e.grouped.end(),
                   [](const EntityGroup& a, const EntityGroup& b) { return a.total > b.total; });
  return e;
}

nlohmann::json recommendation_to_json(const Recommendation& r) {
  return {{"item", r.item}, {"type", r.item_type}, {"score", r.score}, {"rank", r.rank}};
}

nlohmann::json explanation_to_json(const Explanation& e) {
  auto contribution = [](const Contribution& c) {
    return Json{{"group", std::string(group_name(c.feature.group))},
                {"feature", c.feature.name},
                {"weight", c.weight}};
  };
  Json top = Json::object();
  for (const auto& [g, list] : e.top) {
    Json arr = Json::array();
    for (const auto& c : list) arr.push_back(contribution(c));
    top[std::string(group_name(g))] = std::move(arr);
  }
  Json grouped = Json::array();
  for (const auto& g : e.grouped) {
    Json ents = Json::array();
    for (const auto& [label, w] : g.entities) ents.push_back({{"label", label}, {"weight", w}});
    grouped.push_back({{"type", g.type_label}, {"total", g.total}, {"entities", std::move(ents)}});
  }
  return {{"score", e.score}, {"top", std::move(top)}, {"grouped", std::move(grouped)}};
}

}  // namespace kgforge::recommender
