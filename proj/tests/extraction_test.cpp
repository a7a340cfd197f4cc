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

#include "kgforge/extraction.hpp"

#include <gtest/gtest.h>

#include "kgforge/common.hpp"
#include "kgforge/graph_store.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge::extraction {
namespace {

const std::string kFixtures = KGFORGE_FIXTURES;

GazetteerEntry entry(std::vector<std::string> forms, std::string id, std::string label,
                     std::string type_id, std::string type_label) {
  return {std::move(forms), std::move(id), std::move(label), std::move(type_id),
          std::move(type_label)};
}

Gazetteer small_gazetteer() {
  return Gazetteer({
      entry({"Semantic Web"}, "Q54837", "Semantic Web", "Q11862829", "academic discipline"),
      entry({"Semantic Web services"}, "Q1311326", "Semantic Web Services", "Q11862829",
            "academic discipline"),
      entry({"inference", "reasoning"}, "Q408386", "inference", "Q3249551", "process"),
  });
}

RelationRule uses_rule() {
  return {"P2283", "uses", "Q11862829", "Q3249551", {"uses"}, Direction::kSubjectFirst, 0.9};
}

Sentence sentence(std::string text) { return {"d1", 0, std::move(text)}; }

Gazetteer fixture_gazetteer() {
  return parse_gazetteer(Json::parse(read_file(kFixtures + "/gazetteer.json")));
}

std::vector<RelationRule> fixture_rules() {
  return parse_rules(Json::parse(read_file(kFixtures + "/rules.json")));
}

TEST(SplitSentencesTest, AbbreviationSuppressesBreak) {
  SplitOptions opts;
  opts.abbreviations = {"A."};
  auto s = split_sentences({"d", "", "A. B", std::nullopt}, opts);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].text, "A. B");
}

TEST(SplitSentencesTest, OffsetsAreByteOffsets) {
  auto s = split_sentences({"d", "", "First. Second sentence.", std::nullopt});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].offset, 0u);
  EXPECT_EQ(s[1].offset, 7u);
  EXPECT_EQ(s[1].text, "Second sentence.");
}

TEST(SplitSentencesTest, EmptyText) {
  EXPECT_TRUE(split_sentences({"d", "", "", std::nullopt}).empty());
  EXPECT_TRUE(split_sentences({"d", "", "   ", std::nullopt}).empty());
}

TEST(SplitSentencesTest, LowercaseContinuationDoesNotSplit) {
  auto s = split_sentences({"d", "", "Version 2.0 is out. it continues.", std::nullopt});
  EXPECT_EQ(s.size(), 1u);
}

TEST(FindMentionsTest, LongestMatchWins) {
  auto m = find_mentions(sentence("Semantic Web services"), small_gazetteer());
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].entry.id, "Q1311326");
}

TEST(FindMentionsTest, CaseInsensitive) {
  auto m = find_mentions(sentence("the semantic web"), small_gazetteer());
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].start, 4u);
  EXPECT_EQ(m[0].surface, "semantic web");
  EXPECT_EQ(m[0].entry.label, "Semantic Web");
}

TEST(FindMentionsTest, TwoEntriesInOffsetOrder) {
  auto m = find_mentions(sentence("Reasoning helps the Semantic Web."), small_gazetteer());
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].entry.id, "Q408386");
  EXPECT_EQ(m[1].entry.id, "Q54837");
  EXPECT_LT(m[0].start, m[1].start);
}

TEST(FindMentionsTest, RespectsWordBoundaries) {
  EXPECT_TRUE(find_mentions(sentence("Semantic Webbing inferences"), small_gazetteer()).empty());
}

TEST(ApplyRulesTest, PaperExampleFact) {
  Sentence s = sentence("Semantic Web uses inference.");
  auto facts = apply_rules(s, find_mentions(s, small_gazetteer()), {uses_rule()});
  ASSERT_EQ(facts.size(), 1u);
  const ExtractedFact& f = facts[0];
  EXPECT_EQ(f.subject.label, "Semantic Web");
  EXPECT_EQ(f.subject.type_label, "academic discipline");
  EXPECT_EQ(f.relation.label, "uses");
  EXPECT_EQ(f.object.label, "inference");
  EXPECT_EQ(f.object.type_label, "process");
  EXPECT_DOUBLE_EQ(f.confidence, 0.9);
}

TEST(ApplyRulesTest, SingleMentionNoFacts) {
  Sentence s = sentence("Semantic Web is big.");
  EXPECT_TRUE(apply_rules(s, find_mentions(s, small_gazetteer()), {uses_rule()}).empty());
}

TEST(ApplyRulesTest, TwoRulesSamePairGiveTwoRelations) {
  RelationRule studies{"P2578", "studies", "Q11862829", "Q3249551", {"uses"},
                       Direction::kSubjectFirst, 0.5};
  Sentence s = sentence("Semantic Web uses inference.");
  auto facts = apply_rules(s, find_mentions(s, small_gazetteer()), {uses_rule(), studies});
  ASSERT_EQ(facts.size(), 2u);
  EXPECT_NE(facts[0].relation.id, facts[1].relation.id);
}

TEST(ApplyRulesTest, DuplicatesKeepMaxConfidence) {
  RelationRule weak = uses_rule();
  weak.confidence = 0.3;
  weak.trigger = {"inference"};
  Sentence s = sentence("Semantic Web uses inference.");
  auto facts = apply_rules(s, find_mentions(s, small_gazetteer()), {weak, uses_rule()});
  ASSERT_EQ(facts.size(), 1u);
  EXPECT_DOUBLE_EQ(facts[0].confidence, 0.9);
}

TEST(ApplyRulesTest, DirectionIsEnforced) {
  Sentence s = sentence("Inference is what the Semantic Web uses.");
  auto mentions = find_mentions(s, small_gazetteer());
  EXPECT_TRUE(apply_rules(s, mentions, {uses_rule()}).empty());
  RelationRule either = uses_rule();
  either.direction = Direction::kEither;
  EXPECT_EQ(apply_rules(s, mentions, {either}).size(), 1u);
  either.direction = Direction::kObjectFirst;
  EXPECT_EQ(apply_rules(s, mentions, {either}).size(), 1u);
}

TEST(ApplyRulesTest, TriggerWindowIncludesOneFlankToken) {
  Sentence s = sentence("Semantic Web and inference uses");
  EXPECT_EQ(apply_rules(s, find_mentions(s, small_gazetteer()), {uses_rule()}).size(), 1u);
  Sentence far = sentence("Semantic Web and inference and then uses");
  EXPECT_TRUE(apply_rules(far, find_mentions(far, small_gazetteer()), {uses_rule()}).empty());
}

TEST(ParseResourcesTest, FixturesLoad) {
  EXPECT_EQ(fixture_gazetteer().entries().size(), 30u);
  EXPECT_EQ(fixture_rules().size(), 11u);
}

TEST(ParseResourcesTest, RejectsBadRules) {
  EXPECT_THROW(parse_rules(Json::parse(R"([{"relation": {"id": "P1", "label": "x"},
      "subject_type": "Q1", "object_type": "Q2", "trigger": "", "confidence": 0.5}])")),
               ValidationError);
  EXPECT_THROW(parse_gazetteer(Json::parse(R"([{"id": "Q1", "label": "a", "surface_forms": [],
      "type": {"id": "Q2", "label": "t"}}])")),
               ValidationError);
}

TEST(FactJsonlTest, OneValidLine) {
  Sentence s = sentence("Semantic Web uses inference.");
  auto facts = apply_rules(s, find_mentions(s, small_gazetteer()), {uses_rule()});
  auto back = import_external_facts(write_facts_jsonl(facts));
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], facts[0]);
}

TEST(FactJsonlTest, MissingObjectTypeCitesLine) {
  Sentence s = sentence("Semantic Web uses inference.");
  auto facts = apply_rules(s, find_mentions(s, small_gazetteer()), {uses_rule()});
  std::string good = write_facts_jsonl(facts);
  Json bad = fact_to_json(facts[0]);
  bad["object"].erase("type");
  try {
    import_external_facts(good + good + bad.dump() + "\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(FactJsonlTest, ConfidenceOutOfRange) {
  Sentence s = sentence("Semantic Web uses inference.");
  Json j = fact_to_json(apply_rules(s, find_mentions(s, small_gazetteer()), {uses_rule()})[0]);
  j["confidence"] = 0;
  EXPECT_THROW(import_external_facts(j.dump()), ParseError);
  j["confidence"] = 1.5;
  EXPECT_THROW(import_external_facts(j.dump()), ParseError);
}

TEST(FactJsonlTest, TenLineRoundTrip) {
  const std::string text =
      "The Semantic Web uses inference over ontologies. OWL is based on RDF. "
      "Linked Data is part of Open Data. Machine Learning applies PageRank and BM25. "
      "Ontology matching is a kind of data integration. SKOS is used by Wikidata. "
      "Ontology uses SPARQL. Linked Data is based on RDF and SKOS.";
  auto facts = extract_document({"doc", "", text, std::nullopt}, fixture_gazetteer(),
                                fixture_rules());
  ASSERT_EQ(facts.size(), 10u);
  EXPECT_EQ(import_external_facts(write_facts_jsonl(facts)), facts);
}

TEST(ReifyTest, StatementCarriesTypeAndEvidence) {
  Sentence s = sentence("Semantic Web uses inference.");
  ExtractedFact f = apply_rules(s, find_mentions(s, small_gazetteer()), {uses_rule()})[0];
  GraphBuilder b;
  for (const auto& t : reify(f, "urn:res:paper/1")) b.insert(t);
  GraphSnapshot g = b.publish(1);
  Term stmt = Term::statement(statement_id(f));
  EXPECT_TRUE(g.contains({stmt, iri(vocab::kRdfType), iri(vocab::kRdfStatement)}));
  EXPECT_EQ(g.objects(stmt, iri(vocab::kSubjectType)),
            std::vector<Term>{iri(vocab::entity_iri("Q11862829"))});
  EXPECT_EQ(g.objects(stmt, iri(vocab::kEvidenceSentence)),
            std::vector<Term>{lit("Semantic Web uses inference.")});
  EXPECT_EQ(g.objects(stmt, iri(vocab::kConfidence)),
            std::vector<Term>{Term::typed_literal("0.9", std::string(vocab::kXsdDecimal))});
  EXPECT_EQ(g.objects(stmt, iri(vocab::kRdfPredicate)),
            std::vector<Term>{iri(vocab::relation_iri("P2283"))});
  EXPECT_TRUE(g.contains({iri("urn:res:paper/1"), iri(vocab::kHasStatement), stmt}));
}

TEST(ReifyTest, ConfidenceLiteral) {
  Sentence s = sentence("Semantic Web uses inference.");
  ExtractedFact f = apply_rules(s, find_mentions(s, small_gazetteer()), {uses_rule()})[0];
  f.confidence = 0.8;
  Triple expected{Term::statement(statement_id(f)), iri(vocab::kConfidence),
                  Term::typed_literal("0.8", std::string(vocab::kXsdDecimal))};
  auto triples = reify(f);
  EXPECT_NE(std::find(triples.begin(), triples.end(), expected), triples.end());
}

TEST(ReifyTest, IdempotentAndProducerAgnostic) {
  auto facts = extract_document(
      {"doc", "", "Linked Data is part of Open Data. OWL is based on RDF.", std::nullopt},
      fixture_gazetteer(), fixture_rules());
  ASSERT_EQ(facts.size(), 2u);
  auto imported = import_external_facts(write_facts_jsonl(facts));
  GraphBuilder b;
  for (const auto& f : facts) {
    for (const auto& t : reify(f, "urn:o")) b.insert(t);
  }
  std::size_t n = b.size();
  for (const auto& f : imported) {
    EXPECT_EQ(statement_id(f), statement_id(facts[&f - imported.data()]));
    for (const auto& t : reify(f, "urn:o")) EXPECT_FALSE(b.insert(t));
  }
  EXPECT_EQ(b.size(), n);
}

TEST(ReifyTest, StatementIdDependsOnOffset) {
  Sentence s = sentence("Semantic Web uses inference.");
  ExtractedFact f = apply_rules(s, find_mentions(s, small_gazetteer()), {uses_rule()})[0];
  ExtractedFact g = f;
  g.offset = 40;
  EXPECT_NE(statement_id(f), statement_id(g));
  EXPECT_EQ(statement_id(f).size(), 32u);
}

// Evidence sentences located at their offsets contain both mention strings,
// and mentions never overlap, on every bundled source document.
TEST(ExtractionPropertyTest, EvidenceAndSpansOnFixtures) {
  Gazetteer g = fixture_gazetteer();
  auto rules = fixture_rules();
  std::size_t docs = 0, facts_seen = 0;
  for (const char* name : {"papers", "projects", "datasets", "achievements"}) {
    Json records = Json::parse(read_file(kFixtures + "/sources/" + name + ".json"));
    for (const Json& r : records) {
      for (const char* key : {"abstract", "description", "summary"}) {
        if (!r.contains(key)) continue;
        Document d{"d" + std::to_string(docs++), "", r[key].get<std::string>(), std::nullopt};
        for (const auto& s : split_sentences(d)) {
          auto mentions = find_mentions(s, g);
          for (std::size_t i = 1; i < mentions.size(); ++i) {
            EXPECT_LE(mentions[i - 1].end, mentions[i].start);
          }
        }
        for (const auto& f : extract_document(d, g, rules)) {
          ++facts_seen;
          ASSERT_EQ(d.text.compare(f.offset, f.sentence.size(), f.sentence), 0);
          EXPECT_NE(f.sentence.find(f.subject.mention), std::string::npos);
          EXPECT_NE(f.sentence.find(f.object.mention), std::string::npos);
        }
      }
    }
  }
  EXPECT_EQ(docs, 20u);
  EXPECT_GT(facts_seen, 0u);
}

}  // namespace
}  // namespace kgforge::extraction
