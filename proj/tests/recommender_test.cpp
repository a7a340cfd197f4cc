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

#include "kgforge/recommender.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kgforge/common.hpp"
#include "kgforge/extraction.hpp"
#include "kgforge/graph_store.hpp"
#include "kgforge/vocab.hpp"

namespace kgforge::recommender {
namespace {

const std::string kPaper = "http://schema.org/ScholarlyArticle";
const std::string kAuthor = "http://schema.org/author";

FeatureKey bow(std::string s) { return {FeatureGroup::kBow, std::move(s)}; }
FeatureKey ent(std::string s) { return {FeatureGroup::kEntity, std::move(s)}; }

// Dense oracle: weight = count * (ln((1+n)/(1+df)) + 1), cosine by definition.
struct DenseOracle {
  std::map<FeatureKey, double> idf;
  std::map<std::string, std::map<FeatureKey, double>> rows;

  explicit DenseOracle(const std::map<std::string, FeatureCounts>& counts) {
    const double n = double(counts.size());
    std::map<FeatureKey, int> df;
    for (const auto& [e, c] : counts) {
      for (const auto& [f, k] : c) {
        if (k > 0) ++df[f];
      }
    }
    for (const auto& [f, d] : df) idf[f] = std::log((1.0 + n) / (1.0 + d)) + 1.0;
    for (const auto& [e, c] : counts) {
      for (const auto& [f, k] : c) {
        if (k > 0) rows[e][f] = double(k) * idf[f];
      }
    }
  }

  double cosine(const std::string& a, const std::string& b) const {
    double d = 0, na = 0, nb = 0;
    const auto& ra = rows.count(a) ? rows.at(a) : std::map<FeatureKey, double>{};
    const auto& rb = rows.count(b) ? rows.at(b) : std::map<FeatureKey, double>{};
    for (const auto& [f, w] : ra) {
      na += w * w;
      if (auto it = rb.find(f); it != rb.end()) d += w * it->second;
    }
    for (const auto& [f, w] : rb) nb += w * w;
    return na == 0 || nb == 0 ? 0.0 : d / std::sqrt(na * nb);
  }
};

TEST(FeaturizeTest, PaperExampleFact) {
  extraction::ExtractedFact f;
  f.subject = {"Semantic Web", "Semantic Web", "Q54837", "Q11862829", "academic discipline"};
  f.relation = {"P2283", "uses"};
  f.object = {"inference", "inference", "Q408386", "Q3249551", "process"};
  f.doc_id = "d";
  f.sentence = "Semantic Web uses inference.";
  f.confidence = 0.9;
  GraphBuilder b;
  for (const auto& t : extraction::reify(f, "urn:res:e")) b.insert(t);
  FeatureCounts c = featurize(iri("urn:res:e"), b.publish(1), {});
  FeatureCounts expected = {{ent("Semantic Web:academic discipline"), 1},
                            {ent("inference:process"), 1},
                            {{FeatureGroup::kFrame, "academic discipline,uses,process"}, 1}};
  EXPECT_EQ(c, expected);
}

TEST(FeaturizeTest, EntityWithNothingHasEmptyCounts) {
  GraphBuilder b;
  b.insert(iri("urn:res:e"), iri(vocab::kRdfsLabel), lit("E"));
  EXPECT_TRUE(featurize(iri("urn:res:e"), b.publish(1), {}).empty());
  EXPECT_THROW(featurize(iri("urn:res:absent"), b.publish(1), {}), NotFoundError);
}

TEST(FeaturizeTest, StructFeaturesSkipVocabAndText) {
  GraphBuilder b;
  const Term e = iri("urn:res:e");
  b.insert(e, iri("http://schema.org/keywords"), lit("kg"));
  b.insert(e, iri("http://schema.org/abstract"), lit("long text"));
  b.insert(iri("http://schema.org/abstract"), iri(vocab::kRdfType),
           iri(vocab::kTextPayloadProperty));
  b.insert(e, iri(vocab::kYear), lit("2020"));
  FeatureCounts c = featurize(e, b.publish(1), {});
  FeatureCounts expected = {{{FeatureGroup::kStruct, "http://schema.org/keywords=kg"}, 1}};
  EXPECT_EQ(c, expected);
}

// A person without text borrows the bow counts of both authored papers.
TEST(FeaturizeTest, PersonAggregatesAuthoredPapers) {
  GraphBuilder b;
  const Term person = iri("urn:res:person/p");
  b.insert(person, iri(vocab::kRdfType), iri("http://schema.org/Person"));
  const std::vector<std::pair<std::string, std::string>> papers = {
      {"urn:res:paper/1", "graph graph search"}, {"urn:res:paper/2", "graph ranking"}};
  for (const auto& [p, text] : papers) {
    b.insert(iri(p), iri(kAuthor), person);
    extraction::Document d{p, p, text, std::nullopt};
    for (const auto& t : extraction::document_triples(d)) b.insert(t);
  }
  GraphSnapshot g = b.publish(1);
  FeatureConfig cfg;
  FeatureCounts c = featurize(person, g, cfg);
  FeatureCounts sum;
  for (const auto& [p, text] : papers) {
    for (const auto& [f, k] : featurize(iri(p), g, cfg)) {
      if (f.group == FeatureGroup::kBow) sum[f] += k;
    }
  }
  FeatureCounts person_bow;
  for (const auto& [f, k] : c) {
    if (f.group == FeatureGroup::kBow) person_bow[f] = k;
  }
  EXPECT_EQ(person_bow, sum);
  EXPECT_EQ(person_bow.at(bow("graph")), 3u);
}

TEST(FeaturizeTest, StopwordsAndShortTokensDropped) {
  GraphBuilder b;
  extraction::Document d{"urn:res:x", "urn:res:x", "The KG is a graph", std::nullopt};
  for (const auto& t : extraction::document_triples(d)) b.insert(t);
  b.insert(iri("urn:res:x"), iri(vocab::kRdfsLabel), lit("x"));
  FeatureConfig cfg;
  cfg.stopwords = {"the", "is"};
  cfg.min_token_length = 2;
  FeatureCounts c = featurize(iri("urn:res:x"), b.publish(1), cfg);
  FeatureCounts expected = {{bow("kg"), 1}, {bow("graph"), 1}};
  EXPECT_EQ(c, expected);
}

TEST(TfIdfTest, ThreeEntityHandCorpus) {
  std::map<std::string, FeatureCounts> counts = {
      {"urn:e:1", {{bow("graph"), 2}, {bow("web"), 1}, {ent("RDF:technical standard"), 1}}},
      {"urn:e:2", {{bow("graph"), 1}, {bow("ranking"), 3}}},
      {"urn:e:3", {{bow("web"), 4}, {ent("RDF:technical standard"), 2}, {bow("graph"), 1}}},
  };
  VsmModel m = fit_counts(counts);
  DenseOracle oracle(counts);
  EXPECT_EQ(m.n(), 3u);
  EXPECT_EQ(m.m(), 4u);
  for (const auto& [e, row] : oracle.rows) {
    const SparseVector* v = m.row(e);
    ASSERT_NE(v, nullptr);
    EXPECT_EQ(v->size(), row.size());
    for (const auto& [f, w] : row) {
      EXPECT_NEAR(v->weight(*m.index_of(f)), w, 1e-9) << e << " " << f.name;
    }
  }
  EXPECT_NEAR(m.idf()[*m.index_of(bow("ranking"))], std::log(2.0) + 1.0, 1e-12);
  EXPECT_NEAR(m.idf()[*m.index_of(bow("graph"))], 1.0, 1e-12);
}

TEST(TfIdfTest, SingleEntityIdfIsOne) {
  VsmModel m = fit_counts({{"urn:e:1", {{bow("a"), 1}, {bow("b"), 5}}}});
  for (double v : m.idf()) EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_DOUBLE_EQ(smoothed_idf(1, 1), 1.0);
  EXPECT_NEAR(smoothed_idf(3, 1), 1.6931, 1e-4);
}

TEST(TfIdfTest, IdenticalEntitiesIdenticalRows) {
  FeatureCounts c = {{bow("a"), 2}, {ent("X:t"), 1}};
  VsmModel m = fit_counts({{"urn:e:1", c}, {"urn:e:2", c}, {"urn:e:3", {{bow("z"), 1}}}});
  EXPECT_EQ(*m.row("urn:e:1"), *m.row("urn:e:2"));
}

TEST(TfIdfTest, GroupWeightsScaleWeights) {
  std::map<std::string, FeatureCounts> counts = {{"urn:e:1", {{bow("a"), 1}, {ent("X:t"), 1}}}};
  VsmModel m = fit_counts(counts, {{FeatureGroup::kEntity, 2.5}});
  EXPECT_DOUBLE_EQ(m.row("urn:e:1")->weight(*m.index_of(ent("X:t"))), 2.5);
  EXPECT_DOUBLE_EQ(m.row("urn:e:1")->weight(*m.index_of(bow("a"))), 1.0);
  EXPECT_THROW(fit_counts(counts, {{FeatureGroup::kBow, -1.0}}), ValidationError);
}

TEST(SparseVectorTest, NormalizesEntries) {
  SparseVector v({{3, 1.0}, {1, 2.0}, {3, 0.5}, {2, 0.0}});
  std::vector<std::pair<std::uint32_t, double>> expected = {{1, 2.0}, {3, 1.5}};
  EXPECT_EQ(v.entries(), expected);
  EXPECT_THROW(SparseVector({{0, std::nan("")}}), ValidationError);
}

TEST(CosineTest, Examples) {
  SparseVector x({{0, 3.0}, {4, 1.5}});
  EXPECT_NEAR(cosine(x, x), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(cosine(SparseVector({{0, 1.0}}), SparseVector({{1, 1.0}})), 0.0);
  EXPECT_NEAR(cosine(SparseVector({{0, 1.0}, {1, 1.0}}), SparseVector({{0, 1.0}})),
              1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_DOUBLE_EQ(cosine(SparseVector(), x), 0.0);
}

// Graph with typed candidates and authorship edges for recommend().
GraphSnapshot typed_graph(const std::vector<std::string>& papers, const std::string& user,
                          const std::vector<std::string>& authored) {
  GraphBuilder b;
  for (const auto& p : papers) b.insert(iri(p), iri(vocab::kRdfType), iri(kPaper));
  b.insert(iri(user), iri(vocab::kRdfType), iri("http://schema.org/Person"));
  for (const auto& p : authored) b.insert(iri(p), iri(kAuthor), iri(user));
  return b.publish(1);
}

RecommendOptions options(std::size_t k = 10) {
  RecommendOptions o;
  o.k = k;
  o.authorship_predicates = {kAuthor};
  return o;
}

TEST(RecommendTest, IdenticalItemRanksFirst) {
  std::map<std::string, FeatureCounts> counts = {
      {"urn:u", {{bow("a"), 1}, {bow("b"), 2}}},
      {"urn:p1", {{bow("a"), 1}, {bow("c"), 2}}},
      {"urn:p2", {{bow("a"), 1}, {bow("b"), 2}}},
  };
  auto recs = recommend(fit_counts(counts), typed_graph({"urn:p1", "urn:p2"}, "urn:u", {}),
                        "urn:u", kPaper, options());
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].item, "urn:p2");
  EXPECT_NEAR(recs[0].score, 1.0, 1e-12);
  EXPECT_EQ(recs[0].rank, 1);
  EXPECT_EQ(recs[1].rank, 2);
  EXPECT_EQ(recs[0].item_type, kPaper);
}

TEST(RecommendTest, AuthoredEverythingGivesEmptyList) {
  std::map<std::string, FeatureCounts> counts = {
      {"urn:u", {{bow("a"), 1}}}, {"urn:p1", {{bow("a"), 1}}}, {"urn:p2", {{bow("a"), 2}}}};
  GraphSnapshot g = typed_graph({"urn:p1", "urn:p2"}, "urn:u", {"urn:p1", "urn:p2"});
  EXPECT_TRUE(recommend(fit_counts(counts), g, "urn:u", kPaper, options()).empty());
  RecommendOptions keep = options();
  keep.exclude_connected = false;
  EXPECT_EQ(recommend(fit_counts(counts), g, "urn:u", kPaper, keep).size(), 2u);
}

TEST(RecommendTest, FiveEntityOrderingMatchesBruteForce) {
  std::map<std::string, FeatureCounts> counts = {
      {"urn:u", {{bow("graph"), 3}, {bow("web"), 1}, {ent("RDF:standard"), 2}}},
      {"urn:p1", {{bow("graph"), 1}, {bow("ranking"), 2}}},
      {"urn:p2", {{bow("web"), 2}, {ent("RDF:standard"), 1}}},
      {"urn:p3", {{bow("graph"), 2}, {bow("web"), 1}, {ent("OWL:standard"), 1}}},
      {"urn:p4", {{bow("ranking"), 1}, {ent("OWL:standard"), 3}}},
  };
  DenseOracle oracle(counts);
  std::vector<std::string> papers = {"urn:p1", "urn:p2", "urn:p3", "urn:p4"};
  std::vector<std::pair<double, std::string>> expected;
  for (const auto& p : papers) expected.push_back({-oracle.cosine("urn:u", p), p});
  std::sort(expected.begin(), expected.end());
  auto recs = recommend(fit_counts(counts), typed_graph(papers, "urn:u", {}), "urn:u", kPaper,
                        options());
  ASSERT_EQ(recs.size(), expected.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(recs[i].item, expected[i].second);
    EXPECT_NEAR(recs[i].score, -expected[i].first, 1e-12);
  }
  EXPECT_EQ(recommend(fit_counts(counts), typed_graph(papers, "urn:u", {}), "urn:u", kPaper,
                      options(2)).size(), 2u);
}

TEST(RecommendTest, TiesBreakByIri) {
  std::map<std::string, FeatureCounts> counts = {
      {"urn:u", {{bow("a"), 1}}}, {"urn:pb", {{bow("a"), 1}}}, {"urn:pa", {{bow("a"), 1}}}};
  auto recs = recommend(fit_counts(counts), typed_graph({"urn:pa", "urn:pb"}, "urn:u", {}),
                        "urn:u", kPaper, options());
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].item, "urn:pa");
}

TEST(RecommendTest, Errors) {
  std::map<std::string, FeatureCounts> counts = {{"urn:u", {{bow("a"), 1}}}};
  GraphSnapshot g = typed_graph({}, "urn:u", {});
  EXPECT_THROW(recommend(VsmModel(), g, "urn:u", kPaper, options()), ValidationError);
  EXPECT_THROW(recommend(fit_counts(counts), g, "urn:u", kPaper, options(0)), ValidationError);
  EXPECT_THROW(recommend(fit_counts(counts), g, "urn:nobody", kPaper, options()), NotFoundError);
  EXPECT_THROW(fit({}, g, {}), ValidationError);
}

TEST(ExplainTest, SingleSharedFeature) {
  VsmModel m = fit_counts({{"urn:u", {{bow("a"), 1}}}, {"urn:p", {{bow("a"), 1}}}});
  Explanation e = explain(m, "urn:u", "urn:p");
  ASSERT_EQ(e.contributions.size(), 1u);
  EXPECT_NEAR(e.contributions[0].weight, 1.0, 1e-12);
  EXPECT_NEAR(e.score, 1.0, 1e-12);
  EXPECT_THROW(explain(m, "urn:u", "urn:none"), NotFoundError);
}

TEST(ExplainTest, TopContributionAndGrouping) {
  std::map<std::string, FeatureCounts> counts = {
      {"urn:u", {{bow("graph"), 3}, {ent("RDF:technical standard"), 2},
                 {ent("Linked Data:academic discipline"), 1}, {bow("web"), 1}}},
      {"urn:p", {{bow("graph"), 1}, {ent("RDF:technical standard"), 4},
                 {ent("Linked Data:academic discipline"), 1}, {bow("x"), 1}}},
      {"urn:q", {{bow("graph"), 1}, {bow("web"), 1}}},
  };
  VsmModel m = fit_counts(counts);
  Explanation e = explain(m, "urn:u", "urn:p", 1);
  const SparseVector& u = *m.row("urn:u");
  const SparseVector& v = *m.row("urn:p");
  double best = 0;
  FeatureKey best_key;
  double sum = 0;
  for (std::uint32_t i = 0; i < m.m(); ++i) {
    double c = u.weight(i) * v.weight(i);
    if (c > best) best = c, best_key = m.vocabulary()[i];
  }
  for (const auto& c : e.contributions) sum += c.weight;
  EXPECT_EQ(e.contributions[0].feature, best_key);
  EXPECT_NEAR(sum, e.score, 1e-12);
  EXPECT_NEAR(e.score, DenseOracle(counts).cosine("urn:u", "urn:p"), 1e-12);
  EXPECT_EQ(e.top.at(FeatureGroup::kEntity).size(), 1u);
  ASSERT_EQ(e.grouped.size(), 2u);
  EXPECT_EQ(e.grouped[0].type_label, "technical standard");
  EXPECT_EQ(e.grouped[0].entities[0].first, "RDF");
  EXPECT_EQ(e.grouped[1].type_label, "academic discipline");
  EXPECT_GE(e.grouped[0].total, e.grouped[1].total);
}

SparseVector random_vector(std::mt19937_64& rng, std::uint32_t dims) {
  std::vector<std::pair<std::uint32_t, double>> e;
  std::uniform_int_distribution<std::uint32_t> idx(0, dims - 1);
  std::uniform_real_distribution<double> w(0.01, 5.0);
  for (int i = 0, n = 1 + int(rng() % 8); i < n; ++i) e.push_back({idx(rng), w(rng)});
  return SparseVector(std::move(e));
}

TEST(RecommenderPropertyTest, CosineAndScaling) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    SparseVector x = random_vector(rng, 20), y = random_vector(rng, 20);
    EXPECT_NEAR(cosine(x, x), 1.0, 1e-9);
    std::vector<std::pair<std::uint32_t, double>> scaled;
    for (auto [i, w] : x.entries()) scaled.push_back({i, w * 7.5});
    EXPECT_NEAR(cosine(SparseVector(scaled), y), cosine(x, y), 1e-12);
    double c = cosine(x, y);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0 + 1e-12);
  }
}

TEST(ModelDumpTest, RoundTripIsByteStable) {
  std::map<std::string, FeatureCounts> counts = {
      {"urn:e:1", {{bow("graph"), 2}, {ent("RDF:technical standard"), 1}}},
      {"urn:e:2", {{bow("graph"), 1}, {{FeatureGroup::kFrame, "a,b,c"}, 3}}},
  };
  VsmModel m = fit_counts(counts, {{FeatureGroup::kFrame, 0.5}});
  std::string bytes = m.dump();
  VsmModel back = VsmModel::load(bytes);
  EXPECT_EQ(back.dump(), bytes);
  EXPECT_EQ(*back.row("urn:e:2"), *m.row("urn:e:2"));
  EXPECT_DOUBLE_EQ(back.group_weight(FeatureGroup::kFrame), 0.5);
  EXPECT_THROW(VsmModel::load("{}"), ValidationError);
  EXPECT_THROW(VsmModel::load("not json"), ValidationError);
}

}  // namespace
}  // namespace kgforge::recommender
