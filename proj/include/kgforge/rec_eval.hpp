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

#ifndef KGFORGE_REC_EVAL_HPP_
#define KGFORGE_REC_EVAL_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace kgforge::rec_eval {

enum class Grade { kNone, kLow, kMedium, kHigh };
enum class Criterion { kLow, kMedium, kHigh };

Grade parse_grade(std::string_view s);  // NONE/LOW/MEDIUM/HIGH, also N/L/M/H
Criterion parse_criterion(std::string_view s);
std::string_view criterion_name(Criterion c);

// LOW accepts {L,M,H}, MEDIUM {M,H}, HIGH {H}.
bool is_relevant(Grade g, Criterion c);

struct Judgment {
  std::string user;
  std::string item;
  std::string category;
  int rank = 0;
  Grade grade = Grade::kNone;
};

// Fraction of relevant items among the first k; shorter lists count the
// missing positions as non-relevant. Throws ValidationError for k < 1.
double precision_at_k(const std::vector<bool>& rels, int k);

// Mean of P@i over the relevant positions i, divided by the number of
// relevant items in the judged list; 0 when there are none.
double average_precision(const std::vector<bool>& rels);

struct CategoryScores {
  double map = 0.0;
  double precision_at_k = 0.0;
  int k = 0;
  std::size_t users = 0;
};

struct EvalReport {
  Criterion criterion = Criterion::kLow;
  std::map<std::string, CategoryScores> categories;
};

// Default cutoffs: papers 10, projects 10, achievements 5.
std::map<std::string, int> default_cutoffs();

// Binarizes each user's ranked list per category under the criterion, then
// averages AP and P@K over users. Throws ValidationError for a duplicate
// (user, item) judgment or non-contiguous ranks.
EvalReport evaluate(const std::vector<Judgment>& judgments, Criterion criterion,
                    const std::map<std::string, int>& cutoffs = default_cutoffs());

// CSV with header "user,item,category,rank,grade".
std::vector<Judgment> parse_judgments_csv(std::string_view csv);

// Rows LOW/MEDIUM/HIGH, a MAP and P@K column pair per category.
std::string render_table(const std::vector<EvalReport>& reports);
nlohmann::json reports_to_json(const std::vector<EvalReport>& reports);

}  // namespace kgforge::rec_eval

#endif  // KGFORGE_REC_EVAL_HPP_
