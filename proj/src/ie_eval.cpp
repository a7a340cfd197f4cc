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

#include "kgforge/ie_eval.hpp"

#include <cstdio>
#include <set>
#include <tuple>

#include "kgforge/common.hpp"

namespace kgforge::ie_eval {

namespace {

using Json = nlohmann::json;

std::string norm(std::string_view label) { return to_lower_ascii(collapse_whitespace(label)); }

using Key = std::vector<std::string>;

Key mention_key(const GoldMention& m, Metric metric) {
  Key k{std::to_string(m.start), std::to_string(m.end)};
  if (metric == Metric::kTYPE) k.push_back(norm(m.type_label));
  if (metric == Metric::kEL) k.push_back(norm(m.label));
  return k;
}

Key fact_key(const GoldFact& f, Metric metric) {
  if (metric == Metric::kRN) return {norm(f.subject_label), norm(f.relation), norm(f.object_label)};
  return {norm(f.subject_label), norm(f.subject_type), norm(f.relation), norm(f.object_label),
          norm(f.object_type)};
}

Counts match_keys(const std::vector<Key>& gold, const std::vector<Key>& pred) {
  std::vector<bool> used(gold.size(), false);
  Counts c;
  for (const Key& p : pred) {
    for (std::size_t g = 0; g < gold.size(); ++g) {
      if (!used[g] && gold[g] == p) {
        used[g] = true;
        ++c.tp;
        break;
      }
    }
  }
  c.fp = pred.size() - c.tp;
  c.fn = gold.size() - c.tp;
  return c;
}

template <typename T, typename KeyFn>
std::vector<T> dedupe(const std::vector<T>& items, KeyFn full_key) {
  std::set<Key> seen;
  std::vector<T> out;
  for (const T& item : items) {
    if (seen.insert(full_key(item)).second) out.push_back(item);
  }
  return out;
}

const Json& require(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(std::string("missing \"") + key + "\"");
  return *it;
}

std::string require_string(const Json& obj, const char* key) {
  const Json& v = require(obj, key);
  if (!v.is_string()) throw ValidationError(std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

// Accepts both {"type": "label"} and {"type": {"label": ...}}.
std::string type_label(const Json& obj) {
  const Json& t = require(obj, "type");
  if (t.is_string()) return t.get<std::string>();
  if (t.is_object()) return require_string(t, "label");
  throw ValidationError("\"type\" must be a string or object");
}

}  // namespace

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::kMD: return "MD";
    case Metric::kTYPE: return "TYPE";
    case Metric::kEL: return "EL";
    case Metric::kRN: return "RN";
    case Metric::kREL: return "REL";
  }
  return "?";
}

double Counts::precision() const {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double Counts::recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double Counts::f1() const {
  double p = precision(), r = recall();
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

GoldCorpus parse_gold(std::string_view jsonl) {
  GoldCorpus corpus;
  std::set<std::string> ids;
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
      GoldDocument d;
      d.doc_id = require_string(j, "doc_id");
      d.text = require_string(j, "text");
      if (!ids.insert(d.doc_id).second) throw ValidationError("duplicate doc_id " + d.doc_id);
      for (const Json& m : require(j, "mentions")) {
        GoldMention gm;
        gm.start = require(m, "start").get<std::size_t>();
        gm.end = require(m, "end").get<std::size_t>();
        if (gm.start >= gm.end || gm.end > d.text.size()) {
          throw ValidationError("mention span out of range");
        }
        gm.label = require_string(m, "label");
        gm.type_label = type_label(m);
        d.mentions.push_back(std::move(gm));
      }
      for (const Json& f : require(j, "facts")) {
        const Json& s = require(f, "subject");
        const Json& o = require(f, "object");
        d.facts.push_back({require_string(s, "label"), type_label(s),
                           require_string(require(f, "relation"), "label"),
                           require_string(o, "label"), type_label(o)});
      }
      corpus.push_back(std::move(d));
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    } catch (const Json::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return corpus;
}

MetricReport score(const GoldCorpus& gold, const Predictions& predicted) {
  std::set<std::string> gold_ids;
  for (const GoldDocument& d : gold) gold_ids.insert(d.doc_id);
  for (const auto& [id, _] : predicted) {
    if (!gold_ids.count(id)) throw NotFoundError("prediction for unknown doc id " + id);
  }

  MetricReport report;
  for (Metric m : kAllMetrics) report.counts[m] = Counts{};
  const PredictedDocument empty;
  for (const GoldDocument& d : gold) {
    auto it = predicted.find(d.doc_id);
    const PredictedDocument& p = it == predicted.end() ? empty : it->second;
    auto mentions = dedupe(p.mentions, [](const GoldMention& m) {
      return Key{std::to_string(m.start), std::to_string(m.end), norm(m.label),
                 norm(m.type_label)};
    });
    auto facts = dedupe(p.facts, [](const GoldFact& f) { return fact_key(f, Metric::kREL); });

    for (Metric m : kAllMetrics) {
      std::vector<Key> g, q;
      if (m == Metric::kRN || m == Metric::kREL) {
        for (const auto& f : d.facts) g.push_back(fact_key(f, m));
        for (const auto& f : facts) q.push_back(fact_key(f, m));
      } else {
        for (const auto& x : d.mentions) g.push_back(mention_key(x, m));
        for (const auto& x : mentions) q.push_back(mention_key(x, m));
      }
      Counts c = match_keys(g, q);
      Counts& total = report.counts[m];
      total.tp += c.tp;
      total.fp += c.fp;
      total.fn += c.fn;
    }
  }
  return report;
}

PredictedDocument predictions_from_facts(const std::vector<extraction::ExtractedFact>& facts) {
  PredictedDocument out;
  for (const auto& f : facts) {
    out.facts.push_back({f.subject.label, f.subject.type_label, f.relation.label, f.object.label,
                         f.object.type_label});
  }
  return out;
}

Predictions predict(const GoldCorpus& gold, const extraction::Gazetteer& gazetteer,
                    const std::vector<extraction::RelationRule>& rules,
                    const extraction::SplitOptions& options) {
  Predictions out;
  for (const GoldDocument& d : gold) {
    PredictedDocument& p = out[d.doc_id];
    extraction::Document doc{d.doc_id, "", d.text, std::nullopt};
    for (const auto& s : extraction::split_sentences(doc, options)) {
      auto mentions = extraction::find_mentions(s, gazetteer);
      for (const auto& m : mentions) {
        p.mentions.push_back(
            {s.offset + m.start, s.offset + m.end, m.entry.label, m.entry.type_label});
      }
      auto facts = predictions_from_facts(extraction::apply_rules(s, mentions, rules)).facts;
      p.facts.insert(p.facts.end(), facts.begin(), facts.end());
    }
  }
  return out;
}

std::string render_report(const MetricReport& r, std::string_view row_label) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf, "%-16s %8s %8s %8s %8s %8s %8s %8s\n", "", "MD-F1", "TYPE-F1",
                "EL-F1", "RN-F1", "REL-P", "REL-R", "REL-F1");
  out += buf;
  std::string label(row_label.substr(0, 16));
  std::snprintf(buf, sizeof buf, "%-16s %8.2f %8.2f %8.2f %8.2f %8.2f %8.2f %8.2f\n",
                label.c_str(), 100.0 * r[Metric::kMD].f1(), 100.0 * r[Metric::kTYPE].f1(),
                100.0 * r[Metric::kEL].f1(), 100.0 * r[Metric::kRN].f1(),
                100.0 * r[Metric::kREL].precision(), 100.0 * r[Metric::kREL].recall(),
                100.0 * r[Metric::kREL].f1());
  out += buf;
  return out;
}

Json report_to_json(const MetricReport& r) {
  Json out = Json::object();
  for (const auto& [m, c] : r.counts) {
    out[std::string(metric_name(m))] = {{"tp", c.tp},
                                        {"fp", c.fp},
                                        {"fn", c.fn},
                                        {"precision", c.precision()},
                                        {"recall", c.recall()},
                                        {"f1", c.f1()}};
  }
  return out;
}

}  // namespace kgforge::ie_eval
