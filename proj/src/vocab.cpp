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

#include "kgforge/vocab.hpp"

#include "kgforge/common.hpp"

namespace kgforge::vocab {

namespace {

std::string strip(std::string_view iri, std::string_view ns) {
  if (iri.size() <= ns.size() || iri.substr(0, ns.size()) != ns) return {};
  return percent_decode(iri.substr(ns.size()));
}

}  // namespace

std::string entity_iri(std::string_view id) {
  return std::string(kEntityNs) + percent_encode(id);
}

std::string relation_iri(std::string_view id) {
  return std::string(kRelationNs) + percent_encode(id);
}

std::string document_iri(std::string_view doc_id) {
  return std::string(kDocumentNs) + percent_encode(doc_id);
}

std::string entity_id(std::string_view iri) { return strip(iri, kEntityNs); }
std::string relation_id(std::string_view iri) { return strip(iri, kRelationNs); }
std::string document_id(std::string_view iri) { return strip(iri, kDocumentNs); }

}  // namespace kgforge::vocab
