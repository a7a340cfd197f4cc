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

#include "kgforge/graph_store.hpp"

#include <algorithm>
#include <numeric>

#include "kgforge/common.hpp"
#include "kgforge/ntriples.hpp"

namespace kgforge {

struct GraphSnapshot::Data {
  std::uint64_t version = 0;
  std::vector<Term> terms;              // sorted by canonical text
  std::vector<std::string> canonical;   // canonical[i] == terms[i].canonical()
  std::unordered_map<std::string, std::uint32_t> lookup;
  std::vector<IdTriple> spo;
  std::vector<IdTriple> pos;  // stored as (p, o, s)
  std::vector<IdTriple> osp;  // stored as (o, s, p)
};

// ---------------------------------------------------------------------------
// GraphBuilder

GraphBuilder::GraphBuilder(const GraphSnapshot& base) {
  for (const Triple& t : base.triples()) insert(t);
}

std::uint32_t GraphBuilder::intern(const Term& t) {
  std::string key = t.canonical();
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(terms_.size());
  terms_.push_back(t);
  ids_.emplace(std::move(key), id);
  return id;
}

bool GraphBuilder::insert(const Triple& t) {
  if (t.subject.is_literal()) {
    throw StructuralError("literal in subject position: " + t.subject.canonical());
  }
  if (!t.predicate.is_iri()) {
    throw StructuralError("predicate must be an IRI: " + t.predicate.canonical());
  }
  std::array<std::uint32_t, 3> key{intern(t.subject), intern(t.predicate),
                                   intern(t.object)};
  return triples_.insert(key).second;
}

bool GraphBuilder::contains(const Triple& t) const {
  auto find = [&](const Term& term) -> std::optional<std::uint32_t> {
    auto it = ids_.find(term.canonical());
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  };
  auto s = find(t.subject), p = find(t.predicate), o = find(t.object);
  return s && p && o && triples_.count({*s, *p, *o}) > 0;
}

GraphSnapshot GraphBuilder::publish(std::uint64_t version) const {
  auto data = std::make_shared<GraphSnapshot::Data>();
  data->version = version;

  // Only terms that still occur in some triple survive publication.
  std::vector<bool> used(terms_.size(), false);
  for (const auto& t : triples_) {
    for (std::uint32_t id : t) used[id] = true;
  }
  std::vector<std::uint32_t> order;
  std::vector<std::string> canon(terms_.size());
  for (std::uint32_t i = 0; i < terms_.size(); ++i) {
    if (!used[i]) continue;
    order.push_back(i);
    canon[i] = terms_[i].canonical();
  }
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return canon[a] < canon[b]; });

  std::vector<std::uint32_t> remap(terms_.size(), 0);
  data->terms.reserve(order.size());
  data->canonical.reserve(order.size());
  for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
    remap[order[rank]] = rank;
    data->terms.push_back(terms_[order[rank]]);
    data->canonical.push_back(canon[order[rank]]);
    data->lookup.emplace(canon[order[rank]], rank);
  }

  data->spo.reserve(triples_.size());
  for (const auto& t : triples_) {
    data->spo.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
  }
  data->pos.reserve(data->spo.size());
  data->osp.reserve(data->spo.size());
  for (const auto& t : data->spo) {
    data->pos.push_back({t[1], t[2], t[0]});
    data->osp.push_back({t[2], t[0], t[1]});
  }
  std::sort(data->spo.begin(), data->spo.end());
  std::sort(data->pos.begin(), data->pos.end());
  std::sort(data->osp.begin(), data->osp.end());
  return GraphSnapshot(std::move(data));
}

// ---------------------------------------------------------------------------
// GraphSnapshot

GraphSnapshot::GraphSnapshot() : data_(std::make_shared<const Data>()) {}

GraphSnapshot::GraphSnapshot(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

std::uint64_t GraphSnapshot::version() const { return data_->version; }
std::size_t GraphSnapshot::size() const { return data_->spo.size(); }

std::array<std::size_t, 3> GraphSnapshot::index_sizes() const {
  return {data_->spo.size(), data_->pos.size(), data_->osp.size()};
}

std::optional<std::uint32_t> GraphSnapshot::lookup(const Term& t) const {
  auto it = data_->lookup.find(t.canonical());
  if (it == data_->lookup.end()) return std::nullopt;
  return it->second;
}

namespace {

// Range of entries in a sorted index whose first `n` columns equal `prefix`.
template <typename Index>
auto prefix_range(const Index& index, const std::array<std::uint32_t, 3>& prefix,
                  int n) {
  auto lower = std::lower_bound(
      index.begin(), index.end(), prefix, [n](const auto& e, const auto& key) {
        for (int i = 0; i < n; ++i) {
          if (e[i] != key[i]) return e[i] < key[i];
        }
        return false;
      });
  auto upper = std::upper_bound(
      lower, index.end(), prefix, [n](const auto& key, const auto& e) {
        for (int i = 0; i < n; ++i) {
          if (key[i] != e[i]) return key[i] < e[i];
        }
        return false;
      });
  return std::make_pair(lower, upper);
}

}  // namespace

template <typename Fn>
void GraphSnapshot::scan(std::optional<std::uint32_t> s,
                         std::optional<std::uint32_t> p,
                         std::optional<std::uint32_t> o, Fn&& fn) const {
  const Data& d = *data_;
  if (s && p) {
    auto [b, e] = prefix_range(d.spo, {*s, *p, o.value_or(0)}, o ? 3 : 2);
    for (auto it = b; it != e; ++it) fn((*it)[0], (*it)[1], (*it)[2]);
  } else if (s && o) {
    auto [b, e] = prefix_range(d.osp, {*o, *s, 0}, 2);
    for (auto it = b; it != e; ++it) fn((*it)[1], (*it)[2], (*it)[0]);
  } else if (s) {
    auto [b, e] = prefix_range(d.spo, {*s, 0, 0}, 1);
    for (auto it = b; it != e; ++it) fn((*it)[0], (*it)[1], (*it)[2]);
  } else if (p) {
    auto [b, e] = prefix_range(d.pos, {*p, o.value_or(0), 0}, o ? 2 : 1);
    for (auto it = b; it != e; ++it) fn((*it)[2], (*it)[0], (*it)[1]);
  } else if (o) {
    auto [b, e] = prefix_range(d.osp, {*o, 0, 0}, 1);
    for (auto it = b; it != e; ++it) fn((*it)[1], (*it)[2], (*it)[0]);
  } else {
    for (const auto& t : d.spo) fn(t[0], t[1], t[2]);
  }
}

std::vector<Triple> GraphSnapshot::match(const std::optional<Term>& s,
                                         const std::optional<Term>& p,
                                         const std::optional<Term>& o) const {
  std::optional<std::uint32_t> sid, pid, oid;
  if (s && !(sid = lookup(*s))) return {};
  if (p && !(pid = lookup(*p))) return {};
  if (o && !(oid = lookup(*o))) return {};
  std::vector<Triple> out;
  const auto& terms = data_->terms;
  scan(sid, pid, oid, [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    out.push_back(Triple{terms[a], terms[b], terms[c]});
  });
  return out;
}

bool GraphSnapshot::contains(const Triple& t) const {
  auto s = lookup(t.subject), p = lookup(t.predicate), o = lookup(t.object);
  if (!s || !p || !o) return false;
  return std::binary_search(data_->spo.begin(), data_->spo.end(),
                            IdTriple{*s, *p, *o});
}

std::vector<Term> GraphSnapshot::objects(const Term& s, const Term& p) const {
  auto sid = lookup(s), pid = lookup(p);
  if (!sid || !pid) return {};
  std::vector<Term> out;
  scan(sid, pid, std::nullopt, [&](std::uint32_t, std::uint32_t, std::uint32_t c) {
    out.push_back(data_->terms[c]);
  });
  return out;
}

std::vector<Term> GraphSnapshot::subjects(const Term& p, const Term& o) const {
  auto pid = lookup(p), oid = lookup(o);
  if (!pid || !oid) return {};
  std::vector<Term> out;
  scan(std::nullopt, pid, oid, [&](std::uint32_t a, std::uint32_t, std::uint32_t) {
    out.push_back(data_->terms[a]);
  });
  return out;
}

std::optional<Term> GraphSnapshot::object(const Term& s, const Term& p) const {
  auto sid = lookup(s), pid = lookup(p);
  if (!sid || !pid) return std::nullopt;
  auto [b, e] = prefix_range(data_->spo, {*sid, *pid, 0}, 2);
  if (b == e) return std::nullopt;
  return data_->terms[(*b)[2]];
}

std::string GraphSnapshot::export_canonical() const {
  const Data& d = *data_;
  std::vector<std::string> lines;
  lines.reserve(d.spo.size());
  for (const auto& t : d.spo) {
    lines.push_back(d.canonical[t[0]] + " " + d.canonical[t[1]] + " " +
                    d.canonical[t[2]] + " .\n");
  }
  std::sort(lines.begin(), lines.end());
  std::size_t total = 0;
  for (const auto& l : lines) total += l.size();
  std::string out;
  out.reserve(total);
  for (const auto& l : lines) out += l;
  return out;
}

bool operator==(const GraphSnapshot& a, const GraphSnapshot& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->canonical == b.data_->canonical && a.data_->spo == b.data_->spo;
}

GraphSnapshot import_canonical(std::string_view document, std::uint64_t version) {
  GraphBuilder builder;
  for (const Triple& t : ntriples::parse(document)) builder.insert(t);
  return builder.publish(version);
}

}  // namespace kgforge
