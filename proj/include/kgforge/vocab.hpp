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

#ifndef KGFORGE_VOCAB_HPP_
#define KGFORGE_VOCAB_HPP_

#include <string>
#include <string_view>

// IRIs shared between the modules that write the graph (ingest, extraction,
// background import) and the ones that read it (recommender, analytics).
namespace kgforge::vocab {

inline constexpr std::string_view kRdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfStatement =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#Statement";
inline constexpr std::string_view kRdfSubject =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#subject";
inline constexpr std::string_view kRdfPredicate =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#predicate";
inline constexpr std::string_view kRdfObject =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#object";
inline constexpr std::string_view kRdfsLabel =
    "http://www.w3.org/2000/01/rdf-schema#label";

inline constexpr std::string_view kXsdDecimal =
    "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kXsdInteger =
    "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kXsdDate =
    "http://www.w3.org/2001/XMLSchema#date";

// Linked entities, types and relations live in the Wikidata namespaces.
inline constexpr std::string_view kEntityNs = "http://www.wikidata.org/entity/";
inline constexpr std::string_view kRelationNs =
    "http://www.wikidata.org/prop/direct/";
inline constexpr std::string_view kSubclassOf = "P279";
inline constexpr std::string_view kInstanceOf = "P31";

// Repo-internal vocabulary.
inline constexpr std::string_view kVocabNs = "urn:kgforge:vocab#";
inline constexpr std::string_view kSubjectMention = "urn:kgforge:vocab#subjectMention";
inline constexpr std::string_view kObjectMention = "urn:kgforge:vocab#objectMention";
inline constexpr std::string_view kSubjectType = "urn:kgforge:vocab#subjectType";
inline constexpr std::string_view kObjectType = "urn:kgforge:vocab#objectType";
inline constexpr std::string_view kEvidenceSentence =
    "urn:kgforge:vocab#evidenceSentence";
inline constexpr std::string_view kEvidenceDocument =
    "urn:kgforge:vocab#evidenceDocument";
inline constexpr std::string_view kEvidenceOffset = "urn:kgforge:vocab#evidenceOffset";
inline constexpr std::string_view kConfidence = "urn:kgforge:vocab#confidence";
inline constexpr std::string_view kHasStatement = "urn:kgforge:vocab#hasStatement";
inline constexpr std::string_view kDocument = "urn:kgforge:vocab#Document";
inline constexpr std::string_view kOwner = "urn:kgforge:vocab#owner";
inline constexpr std::string_view kText = "urn:kgforge:vocab#text";
inline constexpr std::string_view kYear = "urn:kgforge:vocab#year";
inline constexpr std::string_view kTextPayloadProperty =
    "urn:kgforge:vocab#TextPayloadProperty";

inline constexpr std::string_view kDocumentNs = "urn:kgforge:doc:";

std::string entity_iri(std::string_view id);
std::string relation_iri(std::string_view id);
std::string document_iri(std::string_view doc_id);

// Inverse of the three functions above; empty when the IRI is not in the
// corresponding namespace.
std::string entity_id(std::string_view iri);
std::string relation_id(std::string_view iri);
std::string document_id(std::string_view iri);

}  // namespace kgforge::vocab

#endif  // KGFORGE_VOCAB_HPP_
