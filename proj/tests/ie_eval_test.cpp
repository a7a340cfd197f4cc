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

#include "kgforge/ie_eval.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "kgforge/common.hpp"

namespace kgforge::ie_eval {
namespace {

using Json = nlohmann::json;

const std::string kFixtures = KGFORGE_FIXTURES;

GoldCorpus fixture_gold() { return parse_gold(read_file(kFixtures + "/ie/gold.jsonl")); }

Predictions fixture_predictions(const GoldCorpus& gold) {
  auto g = extraction::parse_gazetteer(Json::parse(read_file(kFixtures + "/gazetteer.json")));
  auto r = extraction::parse_rules(Json::parse(read_file(kFixtures + "/rules.json")));
  return predict(gold, g, r);
}

Predictions perfect(const GoldCorpus& gold) {
  Predictions p;
  for (const auto& d : gold) p[d.doc_id] = {d.mentions, d.facts};
  return p;
}

Metric metric_from_name(const std::string& name) {
  for (Metric m : kAllMetrics) {
    if (metric_name(m) == name) return m;
  }
  throw std::invalid_argument(name);
}

TEST(IeScoreTest, FixtureMatchesHandCountedTable) {
  GoldCorpus gold = fixture_gold();
  ASSERT_EQ(gold.size(), 10u);
  MetricReport r = score(gold, fixture_predictions(gold));
  Json expected = Json::parse(read_file(kFixtures + "/ie/expected_counts.json"))["counts"];
  ASSERT_EQ(expected.size(), 5u);
  for (const auto& [name, c] : expected.items()) {
    const Counts& got = r[metric_from_name(name)];
    Counts want{c["tp"].get<std::size_t>(), c["fp"].get<std::size_t>(), c["fn"].get<std::size_t>()};
    EXPECT_EQ(got, want) << name;
    double p = double(want.tp) / double(want.tp + want.fp);
    double rc = double(want.tp) / double(want.tp + want.fn);
    EXPECT_NEAR(got.precision(), p, 1e-9) << name;
    EXPECT_NEAR(got.recall(), rc, 1e-9) << name;
    EXPECT_NEAR(got.f1(), 2 * p * rc / (p + rc), 1e-9) << name;
  }
}

TEST(IeScoreTest, PerfectPredictionsScoreOne) {
  GoldCorpus gold = fixture_gold();
  MetricReport r = score(gold, perfect(gold));
  for (Metric m : kAllMetrics) {
    EXPECT_DOUBLE_EQ(r[m].precision(), 1.0);
    EXPECT_DOUBLE_EQ(r[m].recall(), 1.0);
    EXPECT_DOUBLE_EQ(r[m].f1(), 1.0);
  }
}

TEST(IeScoreTest, HalfCorrectFacts) {
  GoldDocument d{"d", "x", {}, {{"A", "t", "r", "B", "t"}, {"C", "t", "r", "D", "t"}}};
  Predictions p;
  p["d"].facts = {{"a", "T", "R", "b", "T"}, {"C", "t", "r", "X", "t"}};
  MetricReport r = score({d}, p);
  EXPECT_DOUBLE_EQ(r[Metric::kREL].precision(), 0.5);
  EXPECT_DOUBLE_EQ(r[Metric::kREL].recall(), 0.5);
  EXPECT_DOUBLE_EQ(r[Metric::kREL].f1(), 0.5);
}

TEST(IeScoreTest, LabelsCompareCaseAndWhitespaceInsensitively) {
  GoldDocument d{"d", "Semantic Web", {{0, 12, "Semantic Web", "academic discipline"}}, {}};
  Predictions p;
  p["d"].mentions = {{0, 12, "semantic  web", "Academic Discipline"}};
  MetricReport r = score({d}, p);
  EXPECT_EQ(r[Metric::kEL].tp, 1u);
  EXPECT_EQ(r[Metric::kTYPE].tp, 1u);
}

TEST(IeScoreTest, RelTpNeverExceedsRnTp) {
  GoldCorpus gold = fixture_gold();
  for (const Predictions& p : {fixture_predictions(gold), perfect(gold), Predictions{}}) {
    MetricReport r = score(gold, p);
    EXPECT_LE(r[Metric::kREL].tp, r[Metric::kRN].tp);
    EXPECT_LE(r[Metric::kTYPE].tp, r[Metric::kMD].tp);
    EXPECT_LE(r[Metric::kEL].tp, r[Metric::kMD].tp);
  }
}

TEST(IeScoreTest, DocumentOrderDoesNotMatter) {
  GoldCorpus gold = fixture_gold();
  Predictions p = fixture_predictions(gold);
  MetricReport base = score(gold, p);
  std::mt19937 rng(3);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(gold.begin(), gold.end(), rng);
    MetricReport again = score(gold, p);
    for (Metric m : kAllMetrics) EXPECT_EQ(again[m], base[m]);
  }
}

TEST(IeScoreTest, DuplicatePredictionsCollapse) {
  GoldCorpus gold = fixture_gold();
  Predictions p = fixture_predictions(gold);
  MetricReport base = score(gold, p);
  for (auto& [id, doc] : p) {
    auto m = doc.mentions;
    doc.mentions.insert(doc.mentions.end(), m.begin(), m.end());
    auto f = doc.facts;
    doc.facts.insert(doc.facts.end(), f.begin(), f.end());
  }
  MetricReport dup = score(gold, p);
  for (Metric m : kAllMetrics) EXPECT_EQ(dup[m], base[m]);
}

TEST(IeScoreTest, UnknownDocumentIsAnError) {
  Predictions p;
  p["nope"] = {};
  EXPECT_THROW(score(fixture_gold(), p), NotFoundError);
}

TEST(IeScoreTest, EmptyPredictionsGiveZeros) {
  GoldCorpus gold = fixture_gold();
  MetricReport r = score(gold, {});
  for (Metric m : kAllMetrics) {
    EXPECT_EQ(r[m].tp, 0u);
    EXPECT_DOUBLE_EQ(r[m].f1(), 0.0);
  }
  std::string row = render_report(r);
  EXPECT_NE(row.find("0.00"), std::string::npos);
  EXPECT_EQ(row.find("nan"), std::string::npos);
}

TEST(IeReportTest, AllOnesRowIsHundred) {
  GoldCorpus gold = fixture_gold();
  std::string table = render_report(score(gold, perfect(gold)));
  std::size_t hundreds = 0;
  for (std::size_t pos = 0; (pos = table.find("100.00", pos)) != std::string::npos; ++pos) ++hundreds;
  EXPECT_EQ(hundreds, 7u);
  for (const char* col : {"MD-F1", "TYPE-F1", "EL-F1", "RN-F1", "REL-P", "REL-R", "REL-F1"}) {
    EXPECT_NE(table.find(col), std::string::npos) << col;
  }
}

TEST(IeReportTest, TwoDecimalPercentages) {
  MetricReport r;
  for (Metric m : kAllMetrics) r.counts[m] = {2, 1, 1};
  std::string table = render_report(r);
  EXPECT_NE(table.find("66.67"), std::string::npos);
  Json j = report_to_json(r);
  EXPECT_EQ(j["REL"]["tp"], 2);
  EXPECT_NEAR(j["REL"]["f1"].get<double>(), 2.0 / 3.0, 1e-12);
}

TEST(ParseGoldTest, ErrorsCiteLine) {
  std::string good = R"({"doc_id": "a", "text": "xy", "mentions": [], "facts": []})";
  try {
    parse_gold(good + "\n" + R"({"doc_id": "b", "text": "xy", "mentions": [{"start": 1, "end": 9, "label": "l", "type": "t"}], "facts": []})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_gold(good + "\n" + good), ParseError);
}

}  // namespace
}  // namespace kgforge::ie_eval
