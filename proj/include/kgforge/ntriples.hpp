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

#ifndef KGFORGE_NTRIPLES_HPP_
#define KGFORGE_NTRIPLES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "kgforge/term.hpp"

namespace kgforge::ntriples {

// Escapes per the N-Triples canonical form: ECHAR for tab, backspace,
// newline, carriage return, form feed, quote and backslash inside literals,
// UCHAR for the remaining control characters. IRIs get UCHAR for characters
// outside the IRIREF production.
std::string escape_literal(std::string_view lexical);
std::string escape_iri(std::string_view iri);

// Parses the subset used for canonical exchange: absolute IRIs, plain, typed
// and language-tagged literals; '#' comment lines and blank lines are
// skipped. Blank nodes are rejected. Errors carry the 1-based line number.
std::vector<Triple> parse(std::string_view document);

// Parses a single term in N-Triples syntax, e.g. "<urn:x>" or "\"a\"@en".
Term parse_term(std::string_view text);

}  // namespace kgforge::ntriples

#endif  // KGFORGE_NTRIPLES_HPP_
