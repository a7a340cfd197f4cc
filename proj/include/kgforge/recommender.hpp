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

#ifndef KGFORGE_RECOMMENDER_HPP_
#define KGFORGE_RECOMMENDER_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kgforge/graph_store.hpp"

namespace kgforge::recommender {

enum class FeatureGroup { kBow = 0, kStruct = 1, kEntity = 2, kFrame = 3 };
inline constexpr std::array<FeatureGroup, 4> kAllGroups = {
    FeatureGroup::kBow, FeatureGroup::kStruct, FeatureGroup::kEntity, FeatureGroup::kFrame};

std::string_view group_name(FeatureGroup g);
FeatureGroup parse_group(std::string_view name);

struct FeatureKey {
  FeatureGroup group = FeatureGroup::kBow;
  std::string name;
  friend auto operator<=>(const FeatureKey&, const FeatureKey&) = default;
};

using FeatureCounts = std::map<FeatureKey, std::uint64_t>;

// Index/weight pairs with strictly ascending indexes and no zero weights.
class SparseVector {
 public:
  SparseVector() = default;
  // Sorts by index, sums duplicate indexes, drops zeros. Throws
  // ValidationError on a non-finite weight.
  explicit SparseVector(std::vector<std::pair<std::uint32_t, double>> entries);

  const std::vector<std::pair<std::uint32_t, double>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  double norm() const;
  double weight(std::uint32_t index) const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<std::pair<std::uint32_t, double>> entries_;
};

double dot(const SparseVector& u, const SparseVector& v);

// u.v / (|u| |v|); 0 when either vector is empty.
double cosine(const SparseVector& u, const SparseVector& v);

struct FeatureConfig {
  std::set<std::string> stopwords;
  std::size_t min_token_length = 2;
  // Entities of these rdf:types with no text of their own borrow bow, entity
  // and frame features from entities reachable over hop_predicates.
  std::set<std::string> person_types = {"http://schema.org/Person"};
  std::set<std::string> hop_predicates = {"http://schema.org/author",
                                          "http://schema.org/member"};
  int hop_depth = 2;
  std::map<FeatureGroup, double> group_weights;  // missing groups weigh 1.0
};

// Raw feature counts for one entity. Throws NotFoundError when the entity
// does not occur as a subject in the graph.
FeatureCounts featurize(const Term& entity, const GraphSnapshot& kg, const FeatureConfig& config);

class VsmModel {
 public:
  VsmModel() = default;

  const std::vector<FeatureKey>& vocabulary() const { return vocabulary_; }
  const std::vector<double>& idf() const { return idf_; }
  const std::map<std::string, SparseVector>& rows() const { return rows_; }
  double group_weight(FeatureGroup g) const;
  std::size_t n() const { return rows_.size(); }
  std::size_t m() const { return vocabulary_.size(); }
  bool fitted() const { return fitted_; }

  const SparseVector* row(std::string_view entity) const;
  std::optional<std::uint32_t> index_of(const FeatureKey& key) const;

  // {"vocab": [[group, name], ...], "idf": [...], "group_weights": {...},
  //  "rows": {iri: [[index, weight], ...]}}. Byte-stable.
  std::string dump() const;
  static VsmModel load(std::string_view json);

  friend VsmModel fit_counts(const std::map<std::string, FeatureCounts>& counts,
                             const std::map<FeatureGroup, double>& group_weights);

 private:
  std::vector<FeatureKey> vocabulary_;
  std::map<FeatureKey, std::uint32_t> index_;
  std::vector<double> idf_;
  std::array<double, 4> group_weights_ = {1.0, 1.0, 1.0, 1.0};
  std::map<std::string, SparseVector> rows_;
  bool fitted_ = false;
};

// Smoothed inverse document frequency: ln((1 + n) / (1 + df)) + 1.
double smoothed_idf(std::size_t n, std::size_t df);

// weight(e, f) = count(e, f) * idf(f) * group_weight(group(f)).
VsmModel fit_counts(const std::map<std::string, FeatureCounts>& counts,
                    const std::map<FeatureGroup, double>& group_weights = {});

// Featurizes every entity and fits. Throws ValidationError on an empty list.
VsmModel fit(const std::vector<Term>& entities, const GraphSnapshot& kg,
             const FeatureConfig& config);

struct Recommendation {
  std::string item;
  std::string item_type;
  double score = 0.0;
  int rank = 0;
};

struct RecommendOptions {
  std::size_t k = 10;
  bool exclude_connected = true;
  // Edges (either direction) over these predicates between the user and a
  // candidate remove the candidate.
  std::set<std::string> authorship_predicates = {"http://schema.org/author",
                                                 "http://schema.org/member"};
};

// Nearest neighbours of the user's row among rows typed target_type,
// ranked by cosine descending with ties broken by IRI ascending. The user is
// never its own candidate. Throws ValidationError for an unfitted model or
// k < 1, NotFoundError for a user without a row.
std::vector<Recommendation> recommend(const VsmModel& model, const GraphSnapshot& kg,
                                      std::string_view user, std::string_view target_type,
                                      const RecommendOptions& options);

struct Contribution {
  FeatureKey feature;
  double weight = 0.0;
};

struct EntityGroup {
  std::string type_label;
  std::vector<std::pair<std::string, double>> entities;  // (label, weight)
  double total = 0.0;
};

struct Explanation {
  double score = 0.0;
  // Every nonzero contribution u_f v_f / (|u| |v|), largest first; these sum
  // to score.
  std::vector<Contribution> contributions;
  // Top-m per feature group, largest first.
  std::map<FeatureGroup, std::vector<Contribution>> top;
  // Entity-group contributions split on the last ':' into (label, type),
  // grouped by type; groups ordered by total weight.
  std::vector<EntityGroup> grouped;
};

// Throws NotFoundError when either row is missing.
Explanation explain(const VsmModel& model, std::string_view user, std::string_view item,
                    std::size_t top_m = 5);

nlohmann::json recommendation_to_json(const Recommendation& r);
nlohmann::json explanation_to_json(const Explanation& e);

}  // namespace kgforge::recommender

#endif  // KGFORGE_RECOMMENDER_HPP_
