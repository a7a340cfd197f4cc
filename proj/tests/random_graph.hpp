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

#ifndef KGFORGE_TESTS_RANDOM_GRAPH_HPP_
#define KGFORGE_TESTS_RANDOM_GRAPH_HPP_

#include <random>
#include <string>

#include "kgforge/graph_store.hpp"

namespace kgforge::testing {

// Random store with awkward lexical content: quotes, backslashes, control
// characters, non-ASCII text, language tags, datatypes and statement nodes.
inline GraphSnapshot random_graph(std::mt19937_64& rng, std::size_t n_triples,
                                  std::uint64_t version = 1) {
  static const char* kPieces[] = {"a",  "b\"q", "c\\d", "tab\there", "nl\nx",
                                  "\x01", "é",   "日本", " sp ",   "",
                                  "z",  "#h",  "<>",   "\r"};
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  auto resource = [&]() -> Term {
    std::size_t k = pick(10);
    if (k == 0) return Term::statement("s" + std::to_string(pick(8)));
    return Term::iri("urn:x:r" + std::to_string(pick(40)));
  };
  auto object = [&]() -> Term {
    switch (pick(5)) {
      case 0: {
        std::string s;
        for (std::size_t i = 0, n = pick(4); i < n; ++i) s += kPieces[pick(14)];
        return Term::literal(s);
      }
      case 1:
        return Term::typed_literal(std::to_string(pick(100)),
                                   "http://www.w3.org/2001/XMLSchema#integer");
      case 2:
        return Term::lang_literal(kPieces[pick(9)], pick(2) ? "en" : "en-GB");
      default:
        return resource();
    }
  };
  GraphBuilder builder;
  while (builder.size() < n_triples) {
    builder.insert(resource(), Term::iri("urn:x:p" + std::to_string(pick(6))),
                   object());
  }
  return builder.publish(version);
}

}  // namespace kgforge::testing

#endif  // KGFORGE_TESTS_RANDOM_GRAPH_HPP_
