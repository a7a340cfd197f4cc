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

#ifndef KGFORGE_TERM_HPP_
#define KGFORGE_TERM_HPP_

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace kgforge {

// Reified statements are addressable IRIs under this prefix. The N-Triples
// reader maps any IRI with this prefix back to a StatementNode.
inline constexpr std::string_view kStatementNamespace = "urn:kgforge:stmt:";

struct Iri {
  std::string value;
  friend auto operator<=>(const Iri&, const Iri&) = default;
};

struct Literal {
  std::string lexical;
  std::optional<std::string> datatype;
  std::optional<std::string> language;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct StatementNode {
  std::string id;
  friend auto operator<=>(const StatementNode&, const StatementNode&) = default;
};

// True when text starts with an RFC 3986 scheme followed by ':' and contains
// no characters that N-Triples forbids inside IRIREF.
bool is_absolute_iri(std::string_view text);

// A graph node or edge label. Construction goes through the named factories,
// which validate their inputs.
class Term {
 public:
  enum class Kind { kIri, kLiteral, kStatement };

  static Term iri(std::string value);
  static Term literal(std::string lexical);
  static Term typed_literal(std::string lexical, std::string datatype);
  static Term lang_literal(std::string lexical, std::string language);
  static Term statement(std::string id);

  Kind kind() const { return static_cast<Kind>(value_.index()); }
  bool is_iri() const { return kind() == Kind::kIri; }
  bool is_literal() const { return kind() == Kind::kLiteral; }
  bool is_statement() const { return kind() == Kind::kStatement; }

  // IRI text, literal lexical form, or statement id.
  const std::string& value() const;
  const Literal& as_literal() const { return std::get<Literal>(value_); }

  // IRI text for IRIs and statement nodes (statement nodes expand to their
  // full IRI); empty for literals.
  std::string iri_text() const;

  // N-Triples encoding of the term. Used for canonical export and as the
  // deterministic ordering key everywhere in the library.
  std::string canonical() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term& a, const Term& b) {
    return a.canonical() <=> b.canonical();
  }

 private:
  explicit Term(std::variant<Iri, Literal, StatementNode> v) : value_(std::move(v)) {}
  std::variant<Iri, Literal, StatementNode> value_;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  // Canonical line without the trailing newline.
  std::string canonical() const;
};

}  // namespace kgforge

template <>
struct std::hash<kgforge::Term> {
  std::size_t operator()(const kgforge::Term& t) const noexcept {
    return std::hash<std::string>()(t.canonical());
  }
};

#endif  // KGFORGE_TERM_HPP_
