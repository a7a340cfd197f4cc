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

#include "kgforge/term.hpp"

#include "kgforge/common.hpp"
#include "kgforge/ntriples.hpp"

namespace kgforge {

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_language_tag(std::string_view tag) {
  if (tag.empty()) return false;
  std::size_t i = 0;
  std::size_t run = 0;
  while (i < tag.size() && is_alpha(tag[i])) {
    ++i;
    ++run;
  }
  if (run == 0) return false;
  while (i < tag.size()) {
    if (tag[i] != '-') return false;
    ++i;
    run = 0;
    while (i < tag.size() && (is_alpha(tag[i]) || is_digit(tag[i]))) {
      ++i;
      ++run;
    }
    if (run == 0) return false;
  }
  return true;
}

bool is_statement_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (!(is_alpha(c) || is_digit(c) || c == '-' || c == '_' || c == '.')) return false;
  }
  return true;
}

}  // namespace

bool is_absolute_iri(std::string_view text) {
  if (text.empty() || !is_alpha(text[0])) return false;
  std::size_t i = 1;
  while (i < text.size() && (is_alpha(text[i]) || is_digit(text[i]) ||
                             text[i] == '+' || text[i] == '-' || text[i] == '.')) {
    ++i;
  }
  if (i >= text.size() || text[i] != ':') return false;
  for (unsigned char c : text) {
    if (c <= 0x20) return false;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return false;
      default:
        break;
    }
  }
  return true;
}

Term Term::iri(std::string value) {
  if (!is_absolute_iri(value)) {
    throw ValidationError("not an absolute IRI: '" + value + "'");
  }
  if (value.size() > kStatementNamespace.size() &&
      std::string_view(value).substr(0, kStatementNamespace.size()) ==
          kStatementNamespace) {
    return statement(value.substr(kStatementNamespace.size()));
  }
  return Term(Iri{std::move(value)});
}

Term Term::literal(std::string lexical) {
  return Term(Literal{std::move(lexical), std::nullopt, std::nullopt});
}

Term Term::typed_literal(std::string lexical, std::string datatype) {
  if (!is_absolute_iri(datatype)) {
    throw ValidationError("datatype is not an absolute IRI: '" + datatype + "'");
  }
  return Term(Literal{std::move(lexical), std::move(datatype), std::nullopt});
}

Term Term::lang_literal(std::string lexical, std::string language) {
  if (!is_language_tag(language)) {
    throw ValidationError("malformed language tag: '" + language + "'");
  }
  return Term(Literal{std::move(lexical), std::nullopt, std::move(language)});
}

Term Term::statement(std::string id) {
  if (!is_statement_id(id)) {
    throw ValidationError("malformed statement id: '" + id + "'");
  }
  return Term(StatementNode{std::move(id)});
}

const std::string& Term::value() const {
  switch (kind()) {
    case Kind::kIri:
      return std::get<Iri>(value_).value;
    case Kind::kLiteral:
      return std::get<Literal>(value_).lexical;
    case Kind::kStatement:
      break;
  }
  return std::get<StatementNode>(value_).id;
}

std::string Term::iri_text() const {
  switch (kind()) {
    case Kind::kIri:
      return std::get<Iri>(value_).value;
    case Kind::kStatement:
      return std::string(kStatementNamespace) + std::get<StatementNode>(value_).id;
    case Kind::kLiteral:
      break;
  }
  return {};
}

std::string Term::canonical() const {
  if (kind() != Kind::kLiteral) return "<" + ntriples::escape_iri(iri_text()) + ">";
  const Literal& lit = std::get<Literal>(value_);
  std::string out = "\"" + ntriples::escape_literal(lit.lexical) + "\"";
  if (lit.language) {
    out += "@" + *lit.language;
  } else if (lit.datatype) {
    out += "^^<" + ntriples::escape_iri(*lit.datatype) + ">";
  }
  return out;
}

std::string Triple::canonical() const {
  return subject.canonical() + " " + predicate.canonical() + " " +
         object.canonical() + " .";
}

}  // namespace kgforge
