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

#include "kgforge/extraction.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "kgforge/common.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge::extraction {

namespace {

bool is_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }

struct Token {
  std::size_t start;
  std::size_t end;
  std::string lowered;
};

std::vector<Token> tokens_with_offsets(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_word_byte(s[i])) {
      ++i;
      continue;
    }
    std::size_t b = i;
    while (i < s.size() && is_word_byte(s[i])) ++i;
    out.push_back({b, i, to_lower_ascii(s.substr(b, i - b))});
  }
  return out;
}

bool contains_sequence(const std::vector<std::string>& window,
                       const std::vector<std::string>& trigger) {
  if (trigger.empty() || trigger.size() > window.size()) return false;
  return std::search(window.begin(), window.end(), trigger.begin(), trigger.end()) !=
         window.end();
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string() || v.get<std::string>().empty()) {
    throw ValidationError(where + "." + key + ": expected a non-empty string");
  }
  return v.get<std::string>();
}

Direction parse_direction(const std::string& s, const std::string& where) {
  if (s == "subject-first") return Direction::kSubjectFirst;
  if (s == "object-first") return Direction::kObjectFirst;
  if (s == "either") return Direction::kEither;
  throw ValidationError(where + ".direction: unknown value \"" + s + "\"");
}

FactArgument argument_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  FactArgument a;
  a.mention = string_field(j, "mention", where);
  a.label = string_field(j, "label", where);
  a.id = string_field(j, "id", where);
  const Json& type = field(j, "type", where);
  if (!type.is_object()) throw ValidationError(where + ".type: expected an object");
  a.type_id = string_field(type, "id", where + ".type");
  a.type_label = string_field(type, "label", where + ".type");
  return a;
}

Json argument_to_json(const FactArgument& a) {
  return Json{{"mention", a.mention},
              {"label", a.label},
              {"id", a.id},
              {"type", {{"id", a.type_id}, {"label", a.type_label}}}};
}

}  // namespace

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries) : entries_(std::move(entries)) {
  std::set<std::string> ids;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const GazetteerEntry& e = entries_[i];
    if (e.surface_forms.empty()) {
      throw ValidationError("gazetteer entry " + e.id + ": no surface forms");
    }
    if (!ids.insert(e.id).second) throw ValidationError("gazetteer: duplicate entity id " + e.id);
    for (const std::string& form : e.surface_forms) {
      std::string lowered = to_lower_ascii(trim(form));
      if (lowered.empty()) throw ValidationError("gazetteer entry " + e.id + ": empty surface form");
      forms_.push_back({std::move(lowered), i});
    }
  }
  std::sort(forms_.begin(), forms_.end(), [this](const Form& a, const Form& b) {
    if (a.lowered.size() != b.lowered.size()) return a.lowered.size() > b.lowered.size();
    const std::string& ia = entries_[a.entry].id;
    const std::string& ib = entries_[b.entry].id;
    if (ia != ib) return ia < ib;
    return a.lowered < b.lowered;
  });
}

Gazetteer parse_gazetteer(const Json& doc) {
  if (!doc.is_array()) throw ValidationError("gazetteer: expected a JSON array");
  std::vector<GazetteerEntry> entries;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const Json& j = doc[i];
    std::string where = "gazetteer[" + std::to_string(i) + "]";
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    GazetteerEntry e;
    const Json& forms = field(j, "surface_forms", where);
    if (!forms.is_array() || forms.empty()) {
      throw ValidationError(where + ".surface_forms: expected a non-empty array");
    }
    for (const Json& f : forms) {
      if (!f.is_string()) throw ValidationError(where + ".surface_forms: expected strings");
      e.surface_forms.push_back(f.get<std::string>());
    }
    e.id = string_field(j, "id", where);
    e.label = string_field(j, "label", where);
    const Json& type = field(j, "type", where);
    e.type_id = string_field(type, "id", where + ".type");
    e.type_label = string_field(type, "label", where + ".type");
    entries.push_back(std::move(e));
  }
  return Gazetteer(std::move(entries));
}

std::vector<RelationRule> parse_rules(const Json& doc) {
  if (!doc.is_array()) throw ValidationError("rules: expected a JSON array");
  std::vector<RelationRule> rules;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const Json& j = doc[i];
    std::string where = "rules[" + std::to_string(i) + "]";
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    RelationRule r;
    const Json& rel = field(j, "relation", where);
    r.relation_id = string_field(rel, "id", where + ".relation");
    r.relation_label = string_field(rel, "label", where + ".relation");
    r.subject_type = string_field(j, "subject_type", where);
    r.object_type = string_field(j, "object_type", where);
    const Json& trig = field(j, "trigger", where);
    if (trig.is_string()) {
      r.trigger = tokenize(trig.get<std::string>());
    } else if (trig.is_array()) {
      for (const Json& t : trig) {
        if (!t.is_string()) throw ValidationError(where + ".trigger: expected strings");
        for (auto& tok : tokenize(t.get<std::string>())) r.trigger.push_back(tok);
      }
    }
    if (r.trigger.empty()) throw ValidationError(where + ".trigger: must be non-empty");
    if (j.contains("direction")) {
      r.direction = parse_direction(string_field(j, "direction", where), where);
    }
    if (j.contains("confidence")) {
      const Json& c = j["confidence"];
      if (!c.is_number()) throw ValidationError(where + ".confidence: expected a number");
      r.confidence = c.get<double>();
    }
    if (!(r.confidence > 0.0 && r.confidence <= 1.0)) {
      throw ValidationError(where + ".confidence: must be in (0, 1]");
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

std::vector<Sentence> split_sentences(const Document& doc, const SplitOptions& options) {
  const std::string& text = doc.text;
  const std::size_t n = text.size();
  std::vector<Sentence> out;

  auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && is_space_byte(text[begin])) ++begin;
    while (end > begin && is_space_byte(text[end - 1])) --end;
    if (begin < end) out.push_back({doc.doc_id, begin, text.substr(begin, end - begin)});
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    if (j < n && !is_space_byte(text[j])) continue;
    std::size_t k = j;
    while (k < n && is_space_byte(text[k])) ++k;
    if (k < n && !is_upper(text[k])) continue;

    std::size_t word_start = i;
    while (word_start > 0 && !is_space_byte(text[word_start - 1])) --word_start;
    if (options.abbreviations.count(text.substr(word_start, i + 1 - word_start))) continue;

    emit(start, i + 1);
    start = k;
    i = k > 0 ? k - 1 : 0;
  }
  if (start < n) emit(start, n);
  return out;
}

std::vector<Mention> find_mentions(const Sentence& s, const Gazetteer& gazetteer) {
  const std::string lowered = to_lower_ascii(s.text);
  const std::size_t n = lowered.size();
  std::vector<Mention> out;
  std::size_t i = 0;
  while (i < n) {
    bool word_start = i == 0 || !is_word_byte(lowered[i - 1]);
    bool matched = false;
    if (word_start) {
      for (const auto& form : gazetteer.forms()) {
        const std::size_t len = form.lowered.size();
        if (i + len > n || lowered.compare(i, len, form.lowered) != 0) continue;
        bool ends_in_word = is_word_byte(form.lowered.back());
        if (ends_in_word && i + len < n && is_word_byte(lowered[i + len])) continue;
        out.push_back({i, i + len, s.text.substr(i, len), gazetteer.entries()[form.entry]});
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return out;
}

std::vector<ExtractedFact> apply_rules(const Sentence& s, const std::vector<Mention>& mentions,
                                       const std::vector<RelationRule>& rules) {
  const std::vector<Token> tokens = tokens_with_offsets(s.text);

  // Tokens strictly between the two mentions plus one on each flank.
  auto window = [&](const Mention& left, const Mention& right) {
    std::vector<std::string> w;
    const Token* before = nullptr;
    for (const Token& t : tokens) {
      if (t.end <= left.start) before = &t;
    }
    if (before) w.push_back(before->lowered);
    for (const Token& t : tokens) {
      if (t.start >= left.end && t.end <= right.start) w.push_back(t.lowered);
    }
    for (const Token& t : tokens) {
      if (t.start >= right.end) {
        w.push_back(t.lowered);
        break;
      }
    }
    return w;
  };

  std::vector<ExtractedFact> out;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> seen;
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    for (std::size_t j = 0; j < mentions.size(); ++j) {
      if (i == j) continue;
      const Mention& subj = mentions[i];
      const Mention& obj = mentions[j];
      if (subj.entry.id == obj.entry.id) continue;
      const bool subject_first = subj.start < obj.start;
      const auto w = subject_first ? window(subj, obj) : window(obj, subj);
      for (const RelationRule& rule : rules) {
        if (rule.subject_type != subj.entry.type_id || rule.object_type != obj.entry.type_id) {
          continue;
        }
        if (rule.direction == Direction::kSubjectFirst && !subject_first) continue;
        if (rule.direction == Direction::kObjectFirst && subject_first) continue;
        if (!contains_sequence(w, rule.trigger)) continue;

        auto key = std::make_tuple(subj.entry.id, rule.relation_id, obj.entry.id);
        auto it = seen.find(key);
        if (it != seen.end()) {
          ExtractedFact& prev = out[it->second];
          prev.confidence = std::max(prev.confidence, rule.confidence);
          continue;
        }
        ExtractedFact f;
        f.subject = {subj.surface, subj.entry.label, subj.entry.id, subj.entry.type_id,
                     subj.entry.type_label};
        f.relation = {rule.relation_id, rule.relation_label};
        f.object = {obj.surface, obj.entry.label, obj.entry.id, obj.entry.type_id,
                    obj.entry.type_label};
        f.doc_id = s.doc_id;
        f.offset = s.offset;
        f.sentence = s.text;
        f.confidence = rule.confidence;
        seen.emplace(key, out.size());
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

std::vector<ExtractedFact> extract_document(const Document& doc, const Gazetteer& gazetteer,
                                            const std::vector<RelationRule>& rules,
                                            const SplitOptions& options) {
  std::vector<ExtractedFact> out;
  for (const Sentence& s : split_sentences(doc, options)) {
    auto facts = apply_rules(s, find_mentions(s, gazetteer), rules);
    out.insert(out.end(), std::make_move_iterator(facts.begin()),
               std::make_move_iterator(facts.end()));
  }
  return out;
}

Json fact_to_json(const ExtractedFact& f) {
  return Json{{"doc_id", f.doc_id},
              {"sentence", f.sentence},
              {"offset", f.offset},
              {"confidence", f.confidence},
              {"subject", argument_to_json(f.subject)},
              {"relation", {{"id", f.relation.id}, {"label", f.relation.label}}},
              {"object", argument_to_json(f.object)}};
}

std::string write_facts_jsonl(const std::vector<ExtractedFact>& facts) {
  std::string out;
  for (const ExtractedFact& f : facts) out += fact_to_json(f).dump() + "\n";
  return out;
}

std::vector<ExtractedFact> import_external_facts(std::string_view jsonl) {
  std::vector<ExtractedFact> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t nl = jsonl.find('\n', pos);
    std::string_view line =
        jsonl.substr(pos, nl == std::string_view::npos ? jsonl.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? jsonl.size() : nl + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      Json j = Json::parse(line, nullptr, false);
      if (j.is_discarded()) throw ValidationError("invalid JSON");
      if (!j.is_object()) throw ValidationError("expected a JSON object");
      ExtractedFact f;
      f.doc_id = string_field(j, "doc_id", "fact");
      f.sentence = string_field(j, "sentence", "fact");
      const Json& offset = field(j, "offset", "fact");
      if (!offset.is_number_unsigned()) throw ValidationError("fact.offset: expected a non-negative integer");
      f.offset = offset.get<std::size_t>();
      const Json& conf = field(j, "confidence", "fact");
      if (!conf.is_number()) throw ValidationError("fact.confidence: expected a number");
      f.confidence = conf.get<double>();
      if (!(f.confidence > 0.0 && f.confidence <= 1.0)) {
        throw ValidationError("fact.confidence: must be in (0, 1]");
      }
      f.subject = argument_from_json(field(j, "subject", "fact"), "fact.subject");
      const Json& rel = field(j, "relation", "fact");
      if (!rel.is_object()) throw ValidationError("fact.relation: expected an object");
      f.relation = {string_field(rel, "id", "fact.relation"),
                    string_field(rel, "label", "fact.relation")};
      f.object = argument_from_json(field(j, "object", "fact"), "fact.object");
      if (f.sentence.find(f.subject.mention) == std::string::npos ||
          f.sentence.find(f.object.mention) == std::string::npos) {
        throw ValidationError("fact: evidence sentence does not contain both mentions");
      }
      out.push_back(std::move(f));
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

std::string statement_id(const ExtractedFact& f) {
  return stable_hash128(std::vector<std::string>{f.doc_id, std::to_string(f.offset),
                                                 f.subject.id, f.relation.id, f.object.id})
      .hex();
}

std::vector<Triple> reify(const ExtractedFact& f, std::string_view owner) {
  const Term stmt = Term::statement(statement_id(f));
  const Term subj = Term::iri(vocab::entity_iri(f.subject.id));
  const Term obj = Term::iri(vocab::entity_iri(f.object.id));
  const Term rel = Term::iri(vocab::relation_iri(f.relation.id));
  const Term subj_type = Term::iri(vocab::entity_iri(f.subject.type_id));
  const Term obj_type = Term::iri(vocab::entity_iri(f.object.type_id));
  const Term type = iri(vocab::kRdfType);
  const Term label = iri(vocab::kRdfsLabel);

  std::vector<Triple> out = {
      {stmt, type, iri(vocab::kRdfStatement)},
      {stmt, iri(vocab::kRdfSubject), subj},
      {stmt, iri(vocab::kRdfPredicate), rel},
      {stmt, iri(vocab::kRdfObject), obj},
      {stmt, iri(vocab::kSubjectMention), lit(f.subject.mention)},
      {stmt, iri(vocab::kObjectMention), lit(f.object.mention)},
      {stmt, iri(vocab::kSubjectType), subj_type},
      {stmt, iri(vocab::kObjectType), obj_type},
      {subj, label, lit(f.subject.label)},
      {obj, label, lit(f.object.label)},
      {subj, type, subj_type},
      {obj, type, obj_type},
      {subj_type, label, lit(f.subject.type_label)},
      {obj_type, label, lit(f.object.type_label)},
      {rel, label, lit(f.relation.label)},
      {stmt, iri(vocab::kEvidenceSentence), lit(f.sentence)},
      {stmt, iri(vocab::kEvidenceDocument), Term::iri(vocab::document_iri(f.doc_id))},
      {stmt, iri(vocab::kEvidenceOffset),
       Term::typed_literal(std::to_string(f.offset), std::string(vocab::kXsdInteger))},
      {stmt, iri(vocab::kConfidence),
       Term::typed_literal(format_decimal(f.confidence), std::string(vocab::kXsdDecimal))},
  };
  if (!owner.empty()) out.push_back({iri(owner), iri(vocab::kHasStatement), stmt});
  return out;
}

std::vector<Triple> document_triples(const Document& doc) {
  const Term node = Term::iri(vocab::document_iri(doc.doc_id));
  std::vector<Triple> out = {
      {node, iri(vocab::kRdfType), iri(vocab::kDocument)},
      {node, iri(vocab::kText), lit(doc.text)},
  };
  if (!doc.owner.empty()) out.push_back({node, iri(vocab::kOwner), iri(doc.owner)});
  if (doc.year) {
    out.push_back({node, iri(vocab::kYear),
                   Term::typed_literal(std::to_string(*doc.year), std::string(vocab::kXsdInteger))});
  }
  return out;
}

}  // namespace kgforge::extraction
