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

#include "kgforge/ingest.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>

#include "httplib.h"
#include "kgforge/common.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge::ingest {

namespace {

const NormalizeRules kNoRules{};

std::string require_string(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string() || it->get<std::string>().empty()) {
    throw ValidationError(where + ": missing or empty \"" + key + "\"");
  }
  return it->get<std::string>();
}

PropertyKind parse_kind(const std::string& kind, const std::string& where) {
  if (kind == "literal") return PropertyKind::kLiteral;
  if (kind == "date") return PropertyKind::kDate;
  if (kind == "entity-ref") return PropertyKind::kEntityRef;
  if (kind == "text-payload") return PropertyKind::kTextPayload;
  throw ValidationError(where + ": unknown kind \"" + kind + "\"");
}

NormalizeRules parse_rules(const Json& names, const std::string& path) {
  if (!names.is_array()) {
    throw ValidationError("normalizers." + path + ": expected an array of rule names");
  }
  NormalizeRules rules;
  for (const Json& n : names) {
    if (!n.is_string()) throw ValidationError("normalizers." + path + ": rule names are strings");
    const std::string name = n.get<std::string>();
    if (name == "trim" || name == "collapse") continue;  // always applied
    if (name == "lowercase") rules.lowercase = true;
    else if (name == "date:ymd") rules.date = NormalizeRules::DateOrder::kYmd;
    else if (name == "date:mdy") rules.date = NormalizeRules::DateOrder::kMdy;
    else if (name == "date:dmy") rules.date = NormalizeRules::DateOrder::kDmy;
    else throw ValidationError("normalizers." + path + ": unknown rule \"" + name + "\"");
  }
  return rules;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

std::string coerce_date(const std::string& value, NormalizeRules::DateOrder order,
                        const std::string& path) {
  std::vector<std::string_view> parts;
  std::string_view v = value;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= v.size(); ++i) {
    if (i == v.size() || v[i] == '/' || v[i] == '-' || v[i] == '.') {
      parts.push_back(v.substr(start, i - start));
      start = i + 1;
    }
  }
  int a = 0, b = 0, c = 0;
  if (parts.size() != 3 || !parse_int(parts[0], a) || !parse_int(parts[1], b) ||
      !parse_int(parts[2], c)) {
    throw NormalizationError(path, "unparseable date \"" + value + "\"");
  }
  int y = 0, m = 0, d = 0;
  std::size_t year_len = 0;
  switch (order) {
    case NormalizeRules::DateOrder::kYmd: y = a; m = b; d = c; year_len = parts[0].size(); break;
    case NormalizeRules::DateOrder::kMdy: m = a; d = b; y = c; year_len = parts[2].size(); break;
    case NormalizeRules::DateOrder::kDmy: d = a; m = b; y = c; year_len = parts[2].size(); break;
    case NormalizeRules::DateOrder::kNone: return value;
  }
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (year_len != 4 || m < 1 || m > 12 || d < 1 ||
      d > kDays[m - 1] + (m == 2 && is_leap(y) ? 1 : 0)) {
    throw NormalizationError(path, "invalid date \"" + value + "\"");
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
  return buf;
}

void resolve_into(const Json& node, const std::vector<std::string>& keys,
                  std::size_t depth, std::vector<Json>& out) {
  if (node.is_null()) return;
  if (node.is_array()) {
    for (const Json& e : node) resolve_into(e, keys, depth, out);
    return;
  }
  if (depth == keys.size()) {
    out.push_back(node);
    return;
  }
  if (!node.is_object()) return;
  auto it = node.find(keys[depth]);
  if (it == node.end()) return;
  resolve_into(*it, keys, depth + 1, out);
}

std::string now_iso8601() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<SourceRecord> wrap(const Json& items, const SourceLocation& loc,
                               const std::string& stamp) {
  std::vector<SourceRecord> out;
  for (const Json& item : items) {
    if (!item.is_object()) {
      throw ValidationError("source " + loc.mapping + ": records must be JSON objects");
    }
    out.push_back(SourceRecord{item, loc.mapping, stamp});
  }
  return out;
}

}  // namespace

const NormalizeRules& MappingSpec::rules_for(const std::string& path) const {
  auto it = normalizers.find(path);
  return it == normalizers.end() ? kNoRules : it->second;
}

MappingSpec parse_mapping(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("mapping: expected a JSON object");
  if (doc.contains("version")) {
    if (!doc["version"].is_number_integer() ||
        doc["version"].get<int>() != kMappingSchemaVersion) {
      throw ValidationError("mapping: unsupported version");
    }
  }
  MappingSpec spec;
  spec.source = require_string(doc, "source", "mapping");
  spec.record_type = require_string(doc, "record_type", "mapping");
  if (!is_absolute_iri(spec.record_type)) {
    throw ValidationError("mapping.record_type: not an absolute IRI: " + spec.record_type);
  }

  auto id = doc.find("id");
  if (id == doc.end() || !id->is_object()) throw ValidationError("mapping: missing id rule");
  spec.id.ns = require_string(*id, "namespace", "mapping.id");
  if (!is_absolute_iri(spec.id.ns)) {
    throw ValidationError("mapping.id.namespace: not an absolute IRI: " + spec.id.ns);
  }
  auto keys = id->find("keys");
  if (keys == id->end() || !keys->is_array() || keys->empty()) {
    throw ValidationError("mapping.id: keys must be a non-empty array");
  }
  for (const Json& k : *keys) {
    if (!k.is_string() || k.get<std::string>().empty()) {
      throw ValidationError("mapping.id: keys must be non-empty strings");
    }
    spec.id.key_paths.push_back(k.get<std::string>());
  }

  auto props = doc.find("properties");
  if (props == doc.end() || !props->is_array()) {
    throw ValidationError("mapping: missing properties array");
  }
  for (std::size_t i = 0; i < props->size(); ++i) {
    const Json& p = (*props)[i];
    std::string where = "mapping.properties[" + std::to_string(i) + "]";
    if (!p.is_object()) throw ValidationError(where + ": expected an object");
    PropertyRule rule;
    rule.path = require_string(p, "path", where);
    rule.predicate = require_string(p, "predicate", where);
    if (!is_absolute_iri(rule.predicate)) {
      throw ValidationError(where + ".predicate: not an absolute IRI: " + rule.predicate);
    }
    rule.kind = parse_kind(require_string(p, "kind", where), where);
    if (rule.kind == PropertyKind::kEntityRef) {
      rule.ref_namespace = require_string(p, "namespace", where);
      if (!is_absolute_iri(rule.ref_namespace)) {
        throw ValidationError(where + ".namespace: not an absolute IRI: " + rule.ref_namespace);
      }
      rule.ref_key_path = require_string(p, "key_path", where);
    }
    if (p.contains("required")) {
      if (!p["required"].is_boolean()) throw ValidationError(where + ".required: expected boolean");
      rule.required = p["required"].get<bool>();
    }
    spec.properties.push_back(std::move(rule));
  }

  if (auto n = doc.find("normalizers"); n != doc.end()) {
    if (!n->is_object()) throw ValidationError("mapping.normalizers: expected an object");
    for (const auto& [path, names] : n->items()) {
      spec.normalizers[path] = parse_rules(names, path);
    }
  }
  if (auto y = doc.find("year"); y != doc.end()) {
    if (!y->is_string()) throw ValidationError("mapping.year: expected a path string");
    spec.year_path = y->get<std::string>();
  }
  return spec;
}

std::string scalar_text(const Json& value, const std::string& path) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  if (value.is_number_unsigned()) return std::to_string(value.get<std::uint64_t>());
  if (value.is_number_float()) return format_decimal(value.get<double>());
  throw NormalizationError(path, "expected a scalar value");
}

std::string normalize(std::string_view value, const NormalizeRules& rules,
                      const std::string& path) {
  std::string out = collapse_whitespace(trim(value));
  if (rules.lowercase) out = to_lower_ascii(out);
  if (rules.date != NormalizeRules::DateOrder::kNone) out = coerce_date(out, rules.date, path);
  return out;
}

std::vector<Json> resolve_path(const Json& root, std::string_view path) {
  std::vector<std::string> keys;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= path.size(); ++i) {
    if (i == path.size() || path[i] == '.') {
      keys.emplace_back(path.substr(start, i - start));
      start = i + 1;
    }
  }
  std::vector<Json> out;
  resolve_into(root, keys, 0, out);
  return out;
}

namespace {

std::string key_value(const Json& record, const std::string& key_path,
                      const std::string& rules_path, const MappingSpec& spec) {
  std::vector<Json> values = resolve_path(record, key_path);
  if (values.empty()) throw ResolutionError(rules_path, "missing key field");
  if (values.size() > 1) throw ResolutionError(rules_path, "key field is not a single scalar");
  std::string v = normalize(scalar_text(values[0], rules_path), spec.rules_for(rules_path),
                            rules_path);
  if (v.empty()) throw ResolutionError(rules_path, "empty key field");
  return v;
}

}  // namespace

std::string mint_iri(const Json& record, const IdRule& rule, const MappingSpec& spec) {
  std::string out = rule.ns;
  for (std::size_t i = 0; i < rule.key_paths.size(); ++i) {
    if (i > 0) out += '/';
    out += percent_encode(key_value(record, rule.key_paths[i], rule.key_paths[i], spec));
  }
  return out;
}

MappedRecord record_to_triples(const SourceRecord& record, const MappingSpec& spec) {
  const Json& data = record.data;
  MappedRecord out{Term::iri(mint_iri(data, spec.id, spec)), {}, {}, std::nullopt};
  const Term& subject = out.subject;
  out.triples.push_back({subject, iri(vocab::kRdfType), Term::iri(spec.record_type)});

  for (const PropertyRule& rule : spec.properties) {
    std::vector<Json> values = resolve_path(data, rule.path);
    if (values.empty() && rule.required) {
      throw ResolutionError(rule.path, "required path did not resolve");
    }
    Term predicate = Term::iri(rule.predicate);
    const NormalizeRules& rules = spec.rules_for(rule.path);
    for (const Json& v : values) {
      switch (rule.kind) {
        case PropertyKind::kLiteral:
          out.triples.push_back({subject, predicate,
                                 lit(normalize(scalar_text(v, rule.path), rules, rule.path))});
          break;
        case PropertyKind::kDate: {
          NormalizeRules date_rules = rules;
          if (date_rules.date == NormalizeRules::DateOrder::kNone) {
            date_rules.date = NormalizeRules::DateOrder::kYmd;
          }
          out.triples.push_back(
              {subject, predicate,
               Term::typed_literal(normalize(scalar_text(v, rule.path), date_rules, rule.path),
                                   std::string(vocab::kXsdDate))});
          break;
        }
        case PropertyKind::kEntityRef: {
          std::string rules_path = rule.path + "." + rule.ref_key_path;
          std::string key = key_value(v, rule.ref_key_path, rules_path, spec);
          out.triples.push_back(
              {subject, predicate, Term::iri(rule.ref_namespace + percent_encode(key))});
          break;
        }
        case PropertyKind::kTextPayload: {
          std::string text = normalize(scalar_text(v, rule.path), rules, rule.path);
          out.triples.push_back({subject, predicate, lit(text)});
          out.texts.push_back({rule.predicate, std::move(text)});
          break;
        }
      }
    }
  }

  if (!spec.year_path.empty()) {
    std::vector<Json> years = resolve_path(data, spec.year_path);
    if (!years.empty()) {
      std::string text = trim(scalar_text(years[0], spec.year_path));
      int y = 0;
      if (text.size() < 4 || !parse_int(std::string_view(text).substr(0, 4), y)) {
        throw NormalizationError(spec.year_path, "cannot read a year from \"" + text + "\"");
      }
      out.year = y;
    }
  }
  return out;
}

Fingerprint fingerprint(std::string_view iri, std::string_view text, std::uint64_t version) {
  return Fingerprint{std::string(iri), stable_hash128(text).hex(), version};
}

bool needs_reextraction(std::string_view iri, std::string_view text,
                        const std::optional<Fingerprint>& prior) {
  if (!prior) return true;
  return prior->digest != fingerprint(iri, text, 0).digest;
}

std::string write_ledger(const std::vector<Fingerprint>& entries) {
  std::vector<Fingerprint> sorted = entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const Fingerprint& a, const Fingerprint& b) { return a.iri < b.iri; });
  std::string out;
  for (const Fingerprint& f : sorted) {
    Json line = {{"iri", f.iri}, {"digest", f.digest}, {"version", f.version}};
    out += line.dump() + "\n";
  }
  return out;
}

std::map<std::string, Fingerprint> read_ledger(std::string_view jsonl) {
  std::map<std::string, Fingerprint> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t nl = jsonl.find('\n', pos);
    std::string_view line = jsonl.substr(pos, nl == std::string_view::npos ? jsonl.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? jsonl.size() : nl + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("iri") || !j["iri"].is_string() ||
        !j.contains("digest") || !j["digest"].is_string() || !j.contains("version") ||
        !j["version"].is_number_unsigned()) {
      throw ParseError(line_no, "malformed fingerprint ledger entry");
    }
    Fingerprint f{j["iri"].get<std::string>(), j["digest"].get<std::string>(),
                  j["version"].get<std::uint64_t>()};
    out[f.iri] = f;
  }
  return out;
}

std::vector<SourceRecord> fetch_records(const SourceLocation& location,
                                        const std::string& base_dir) {
  const std::string stamp = now_iso8601();
  if (!location.path.empty()) {
    std::filesystem::path p(location.path);
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    Json doc = Json::parse(read_file(p.string()), nullptr, false);
    if (doc.is_discarded()) throw ValidationError("source " + p.string() + ": invalid JSON");
    if (doc.is_object() && doc.contains("items")) doc = doc["items"];
    if (!doc.is_array()) throw ValidationError("source " + p.string() + ": expected a JSON array");
    return wrap(doc, location, stamp);
  }
  if (location.url.empty()) throw ValidationError("source " + location.mapping + ": no path or url");

  // scheme://host[:port]/path[?query]
  const std::string& url = location.url;
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http") {
    throw ValidationError("source url must be http://: " + url);
  }
  std::size_t path_start = url.find('/', scheme_end + 3);
  std::string origin = url.substr(0, path_start);
  std::string target = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(5);
  client.set_read_timeout(30);
  std::vector<SourceRecord> out;
  std::optional<std::string> cursor;
  for (int page = 0; page < 100000; ++page) {
    std::string request = target;
    if (cursor) {
      request += (request.find('?') == std::string::npos ? '?' : '&');
      request += location.cursor_param + "=" + percent_encode(*cursor);
    }
    auto res = client.Get(request);
    if (!res) throw Error("source " + url + ": request failed (" + httplib::to_string(res.error()) + ")");
    if (res->status != 200) {
      throw Error("source " + url + ": HTTP " + std::to_string(res->status));
    }
    Json doc = Json::parse(res->body, nullptr, false);
    if (doc.is_discarded()) throw ValidationError("source " + url + ": invalid JSON");
    if (doc.is_array()) {
      auto page_records = wrap(doc, location, stamp);
      out.insert(out.end(), page_records.begin(), page_records.end());
      return out;
    }
    if (!doc.is_object() || !doc.contains("items") || !doc["items"].is_array()) {
      throw ValidationError("source " + url + ": expected an array or {\"items\": [...]}");
    }
    auto page_records = wrap(doc["items"], location, stamp);
    out.insert(out.end(), page_records.begin(), page_records.end());
    auto next = doc.find("next");
    if (next == doc.end() || next->is_null()) return out;
    if (!next->is_string()) throw ValidationError("source " + url + ": \"next\" must be a string");
    cursor = next->get<std::string>();
  }
  throw Error("source " + url + ": pagination did not terminate");
}

}  // namespace kgforge::ingest
