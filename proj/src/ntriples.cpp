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

#include "kgforge/ntriples.hpp"

#include <cctype>
#include <cstdint>

#include "kgforge/common.hpp"

namespace kgforge::ntriples {

namespace {

void append_uchar(std::string& out, unsigned char c) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  out += "\\u00";
  out.push_back(kHex[c >> 4]);
  out.push_back(kHex[c & 0xf]);
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Cursor over one line of input.
class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no)
      : line_(line), line_no_(line_no) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_no_, what + " (column " + std::to_string(pos_ + 1) + ")");
  }

  void skip_ws() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }

  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return at_end() ? '\0' : line_[pos_]; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::uint32_t read_hex(int digits) {
    std::uint32_t v = 0;
    for (int i = 0; i < digits; ++i) {
      char c = peek();
      int d = -1;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      if (d < 0) fail("malformed unicode escape");
      v = v * 16 + static_cast<std::uint32_t>(d);
      ++pos_;
    }
    if (v > 0x10FFFF || (v >= 0xD800 && v <= 0xDFFF)) fail("invalid code point");
    return v;
  }

  std::string read_iri_text() {
    expect('<');
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = line_[pos_++];
      if (c == '>') break;
      if (c == '\\') {
        char kind = peek();
        ++pos_;
        if (kind == 'u') append_utf8(out, read_hex(4));
        else if (kind == 'U') append_utf8(out, read_hex(8));
        else fail("bad escape in IRI");
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  Term read_iri() {
    std::size_t start = pos_;
    std::string text = read_iri_text();
    if (!is_absolute_iri(text)) {
      pos_ = start;
      fail("malformed IRI <" + text + ">");
    }
    try {
      return Term::iri(std::move(text));
    } catch (const ValidationError& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  Term read_literal() {
    expect('"');
    std::string lexical;
    while (true) {
      if (at_end()) fail("unterminated literal");
      char c = line_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        lexical.push_back(c);
        continue;
      }
      char e = peek();
      ++pos_;
      switch (e) {
        case 't': lexical.push_back('\t'); break;
        case 'b': lexical.push_back('\b'); break;
        case 'n': lexical.push_back('\n'); break;
        case 'r': lexical.push_back('\r'); break;
        case 'f': lexical.push_back('\f'); break;
        case '"': lexical.push_back('"'); break;
        case '\'': lexical.push_back('\''); break;
        case '\\': lexical.push_back('\\'); break;
        case 'u': append_utf8(lexical, read_hex(4)); break;
        case 'U': append_utf8(lexical, read_hex(8)); break;
        default: fail("bad escape in literal");
      }
    }
    if (peek() == '@') {
      ++pos_;
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) ++pos_;
      try {
        return Term::lang_literal(std::move(lexical), std::string(line_.substr(start, pos_ - start)));
      } catch (const ValidationError& err) {
        fail(err.what());
      }
    }
    if (peek() == '^') {
      ++pos_;
      expect('^');
      Term dt = read_iri();
      if (!dt.is_iri()) fail("datatype must be an IRI");
      return Term::typed_literal(std::move(lexical), dt.value());
    }
    return Term::literal(std::move(lexical));
  }

  Term read_subject() {
    if (peek() == '_') fail("blank nodes are not supported");
    if (peek() == '"') fail("literal in subject position");
    if (peek() != '<') fail("expected IRI subject");
    return read_iri();
  }

  Term read_object() {
    if (peek() == '_') fail("blank nodes are not supported");
    if (peek() == '"') return read_literal();
    if (peek() != '<') fail("expected IRI or literal object");
    return read_iri();
  }

  Triple read_triple() {
    skip_ws();
    Term s = read_subject();
    skip_ws();
    if (peek() != '<') fail("expected IRI predicate");
    Term p = read_iri();
    if (!p.is_iri()) fail("predicate must be an IRI");
    skip_ws();
    Term o = read_object();
    skip_ws();
    expect('.');
    skip_ws();
    if (!at_end() && peek() != '#') fail("trailing characters after '.'");
    return Triple{std::move(s), std::move(p), std::move(o)};
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

bool is_blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') continue;
    return c == '#';
  }
  return true;
}

}  // namespace

std::string escape_literal(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size());
  for (unsigned char c : lexical) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\f': out += "\\f"; break;
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      default:
        if (c < 0x20 || c == 0x7F) append_uchar(out, c);
        else out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

std::string escape_iri(std::string_view iri) {
  std::string out;
  out.reserve(iri.size());
  for (unsigned char c : iri) {
    bool forbidden = c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
                     c == '}' || c == '|' || c == '^' || c == '`' || c == '\\';
    if (forbidden) append_uchar(out, c);
    else out.push_back(static_cast<char>(c));
  }
  return out;
}

std::vector<Triple> parse(std::string_view document) {
  std::vector<Triple> triples;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < document.size()) {
    std::size_t nl = document.find('\n', pos);
    std::string_view line = document.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? document.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (is_blank_or_comment(line)) continue;
    triples.push_back(LineParser(line, line_no).read_triple());
  }
  return triples;
}

Term parse_term(std::string_view text) {
  LineParser p(text, 1);
  p.skip_ws();
  Term t = p.read_object();
  p.skip_ws();
  if (!p.at_end()) p.fail("trailing characters after term");
  return t;
}

}  // namespace kgforge::ntriples
