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

#ifndef KGFORGE_GRAPH_STORE_HPP_
#define KGFORGE_GRAPH_STORE_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgforge/term.hpp"

namespace kgforge {

class GraphSnapshot;

// Single-writer build phase of the triple store. A builder accumulates a set
// of triples and publishes immutable snapshots; it can be seeded from an
// existing snapshot to build a successor.
class GraphBuilder {
 public:
  GraphBuilder() = default;
  explicit GraphBuilder(const GraphSnapshot& base);

  // Returns true iff the triple was not already present. Throws
  // StructuralError for a literal subject or a non-IRI predicate.
  bool insert(const Triple& t);
  bool insert(Term s, Term p, Term o) {
    return insert(Triple{std::move(s), std::move(p), std::move(o)});
  }
  bool contains(const Triple& t) const;

  std::size_t size() const { return triples_.size(); }

  GraphSnapshot publish(std::uint64_t version) const;

 private:
  std::uint32_t intern(const Term& t);

  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<Term> terms_;
  std::set<std::array<std::uint32_t, 3>> triples_;
};

// Published, immutable graph. Copies share the underlying data, so passing a
// snapshot by value is cheap and safe across threads.
//
// Terms are numbered in canonical-text order, which makes every index
// enumerate triples in canonical (s, p, o) order and gives objects()/subjects()
// their deterministic ordering for free.
class GraphSnapshot {
 public:
  GraphSnapshot();

  std::uint64_t version() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  // Number of entries in each ordering; all three equal size().
  std::array<std::size_t, 3> index_sizes() const;

  // Triples agreeing with every bound position, in index order.
  std::vector<Triple> match(const std::optional<Term>& s = std::nullopt,
                            const std::optional<Term>& p = std::nullopt,
                            const std::optional<Term>& o = std::nullopt) const;

  bool contains(const Triple& t) const;

  std::vector<Term> objects(const Term& s, const Term& p) const;
  std::vector<Term> subjects(const Term& p, const Term& o) const;

  // First object (canonical order) or nullopt.
  std::optional<Term> object(const Term& s, const Term& p) const;

  // All triples in canonical order.
  std::vector<Triple> triples() const { return match(); }

  // N-Triples document, one line per triple, lines sorted bytewise,
  // trailing newline. Empty store gives the empty string.
  std::string export_canonical() const;

  friend bool operator==(const GraphSnapshot& a, const GraphSnapshot& b);

 private:
  friend class GraphBuilder;
  struct Data;
  using IdTriple = std::array<std::uint32_t, 3>;

  explicit GraphSnapshot(std::shared_ptr<const Data> data);
  std::optional<std::uint32_t> lookup(const Term& t) const;
  template <typename Fn>
  void scan(std::optional<std::uint32_t> s, std::optional<std::uint32_t> p,
            std::optional<std::uint32_t> o, Fn&& fn) const;

  std::shared_ptr<const Data> data_;
};

// Parses an N-Triples document (see ntriples::parse) into a snapshot.
// Duplicate lines collapse.
GraphSnapshot import_canonical(std::string_view document, std::uint64_t version = 1);

// Convenience constructors used throughout the library and tests.
inline Term iri(std::string_view value) { return Term::iri(std::string(value)); }
inline Term lit(std::string_view value) { return Term::literal(std::string(value)); }

}  // namespace kgforge

#endif  // KGFORGE_GRAPH_STORE_HPP_
