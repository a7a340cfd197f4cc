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

#ifndef KGFORGE_IE_EVAL_HPP_
#define KGFORGE_IE_EVAL_HPP_

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kgforge/extraction.hpp"

namespace kgforge::ie_eval {

struct GoldMention {
  std::size_t start = 0;  // byte span within the document text
  std::size_t end = 0;
  std::string label;       // canonical entity label
  std::string type_label;
};

struct GoldFact {
  std::string subject_label;
  std::string subject_type;
  std::string relation;
  std::string object_label;
  std::string object_type;
};

struct GoldDocument {
  std::string doc_id;
  std::string text;
  std::vector<GoldMention> mentions;
  std::vector<GoldFact> facts;
};

using GoldCorpus = std::vector<GoldDocument>;

// Predicted annotations for one document. Mentions use document-level spans.
struct PredictedDocument {
  std::vector<GoldMention> mentions;
  std::vector<GoldFact> facts;
};

using Predictions = std::map<std::string, PredictedDocument>;

enum class Metric { kMD, kTYPE, kEL, kRN, kREL };
inline constexpr std::array<Metric, 5> kAllMetrics = {Metric::kMD, Metric::kTYPE, Metric::kEL,
                                                      Metric::kRN, Metric::kREL};
std::string_view metric_name(Metric m);

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  double precision() const;
  double recall() const;
  // 2PR/(P+R), or 0 when P+R == 0.
  double f1() const;
  friend bool operator==(const Counts&, const Counts&) = default;
};

struct MetricReport {
  std::map<Metric, Counts> counts;
  const Counts& operator[](Metric m) const { return counts.at(m); }
};

// Gold corpus JSONL: one document per line,
//   {"doc_id", "text",
//    "mentions": [{"start", "end", "label", "type"}],
//    "facts": [{"subject": {"label", "type": {"label"}},
//               "relation": {"label"}, "object": {...}}]}
// Fact objects may carry the full fact JSONL fields; only labels are read.
GoldCorpus parse_gold(std::string_view jsonl);

// Micro-averaged scoring. Labels compare case-insensitively after whitespace
// collapse. Identical predictions are collapsed first; each gold item then
// matches at most one prediction, greedily in document order.
// Throws NotFoundError for a predicted doc id absent from gold.
MetricReport score(const GoldCorpus& gold, const Predictions& predicted);

// Runs the rule extractor over every gold document and packages the result
// as predictions (mention spans shifted to document offsets).
Predictions predict(const GoldCorpus& gold, const extraction::Gazetteer& gazetteer,
                    const std::vector<extraction::RelationRule>& rules,
                    const extraction::SplitOptions& options = {});

PredictedDocument predictions_from_facts(const std::vector<extraction::ExtractedFact>& facts);

// Columns MD-F1 TYPE-F1 EL-F1 RN-F1 REL-P REL-R REL-F1, in percentage points
// with two decimals.
std::string render_report(const MetricReport& r, std::string_view row_label = "kgforge");

nlohmann::json report_to_json(const MetricReport& r);

}  // namespace kgforge::ie_eval

#endif  // KGFORGE_IE_EVAL_HPP_
