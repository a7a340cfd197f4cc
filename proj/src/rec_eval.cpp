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

#include "kgforge/rec_eval.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>

#include "kgforge/common.hpp"

namespace kgforge::rec_eval {

Grade parse_grade(std::string_view s) {
  std::string g = to_lower_ascii(trim(s));
  if (g == "none" || g == "n") return Grade::kNone;
  if (g == "low" || g == "l") return Grade::kLow;
  if (g == "medium" || g == "med" || g == "m") return Grade::kMedium;
  if (g == "high" || g == "h") return Grade::kHigh;
  throw ValidationError("unknown grade \"" + std::string(s) + "\"");
}

Criterion parse_criterion(std::string_view s) {
  std::string c = to_lower_ascii(trim(s));
  if (c == "low") return Criterion::kLow;
  if (c == "medium") return Criterion::kMedium;
  if (c == "high") return Criterion::kHigh;
  throw UsageError("unknown criterion \"" + std::string(s) + "\" (LOW, MEDIUM, HIGH)");
}

std::string_view criterion_name(Criterion c) {
  switch (c) {
    case Criterion::kLow: return "LOW";
    case Criterion::kMedium: return "MEDIUM";
    case Criterion::kHigh: return "HIGH";
  }
  return "?";
}

bool is_relevant(Grade g, Criterion c) {
  switch (c) {
    case Criterion::kLow: return g != Grade::kNone;
    case Criterion::kMedium: return g == Grade::kMedium || g == Grade::kHigh;
    case Criterion::kHigh: return g == Grade::kHigh;
  }
  return false;
}

double precision_at_k(const std::vector<bool>& rels, int k) {
  if (k < 1) throw ValidationError("K must be at least 1");
  std::size_t limit = std::min(rels.size(), static_cast<std::size_t>(k));
  std::size_t hits = std::count(rels.begin(), rels.begin() + static_cast<long>(limit), true);
  return static_cast<double>(hits) / k;
}

double average_precision(const std::vector<bool>& rels) {
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    if (!rels[i]) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return hits == 0 ? 0.0 : sum / static_cast<double>(hits);
}

std::map<std::string, int> default_cutoffs() {
  return {{"papers", 10}, {"projects", 10}, {"achievements", 5}};
}

EvalReport evaluate(const std::vector<Judgment>& judgments, Criterion criterion,
                    const std::map<std::string, int>& cutoffs) {
  // category -> user -> judgments
  std::map<std::string, std::map<std::string, std::vector<const Judgment*>>> lists;
  std::set<std::pair<std::string, std::string>> seen;
  for (const Judgment& j : judgments) {
    if (!seen.emplace(j.user, j.item).second) {
      throw ValidationError("duplicate judgment for (" + j.user + ", " + j.item + ")");
    }
    lists[j.category][j.user].push_back(&j);
  }

  EvalReport report;
  report.criterion = criterion;
  for (auto& [category, users] : lists) {
    int k = 0;
    if (auto it = cutoffs.find(category); it != cutoffs.end()) {
      k = it->second;
    } else {
      for (const auto& [_, list] : users) k = std::max(k, static_cast<int>(list.size()));
    }
    CategoryScores scores;
    scores.k = k;
    scores.users = users.size();
    for (auto& [user, list] : users) {
      std::sort(list.begin(), list.end(),
                [](const Judgment* a, const Judgment* b) { return a->rank < b->rank; });
      std::vector<bool> rels;
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i]->rank != static_cast<int>(i) + 1) {
          throw ValidationError("ranks for user " + user + " in " + category +
                                " are not contiguous from 1");
        }
        rels.push_back(is_relevant(list[i]->grade, criterion));
      }
      scores.map += average_precision(rels);
      scores.precision_at_k += precision_at_k(rels, k);
    }
    scores.map /= static_cast<double>(users.size());
    scores.precision_at_k /= static_cast<double>(users.size());
    report.categories[category] = scores;
  }
  return report;
}

std::vector<Judgment> parse_judgments_csv(std::string_view csv) {
  std::vector<Judgment> out;
  std::size_t line_no = 0, pos = 0;
  bool header_seen = false;
  while (pos < csv.size()) {
    std::size_t nl = csv.find('\n', pos);
    std::string_view line = csv.substr(pos, nl == std::string_view::npos ? csv.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? csv.size() : nl + 1;
    ++line_no;
    std::string row = trim(line);
    if (row.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= row.size(); ++i) {
      if (i == row.size() || row[i] == ',') {
        cells.push_back(trim(std::string_view(row).substr(start, i - start)));
        start = i + 1;
      }
    }
    if (!header_seen) {
      if (cells != std::vector<std::string>{"user", "item", "category", "rank", "grade"}) {
        throw ParseError(line_no, "expected header user,item,category,rank,grade");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 5) throw ParseError(line_no, "expected 5 columns");
    Judgment j;
    j.user = cells[0];
    j.item = cells[1];
    j.category = cells[2];
    auto [ptr, ec] = std::from_chars(cells[3].data(), cells[3].data() + cells[3].size(), j.rank);
    if (ec != std::errc() || ptr != cells[3].data() + cells[3].size() || j.rank < 1) {
      throw ParseError(line_no, "rank must be a positive integer");
    }
    try {
      j.grade = parse_grade(cells[4]);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
    if (j.user.empty() || j.item.empty() || j.category.empty()) {
      throw ParseError(line_no, "empty user, item or category");
    }
    out.push_back(std::move(j));
  }
  return out;
}

namespace {

std::vector<std::string> category_order(const std::vector<EvalReport>& reports) {
  std::set<std::string> all;
  for (const auto& r : reports) {
    for (const auto& [c, _] : r.categories) all.insert(c);
  }
  std::vector<std::string> out;
  for (const char* known : {"papers", "projects", "achievements"}) {
    if (all.erase(known)) out.push_back(known);
  }
  out.insert(out.end(), all.begin(), all.end());
  return out;
}

}  // namespace

std::string render_table(const std::vector<EvalReport>& reports) {
  const auto categories = category_order(reports);
  char buf[64];
  std::string head1 = "Criteria", head2 = "        ";
  for (const auto& c : categories) {
    std::snprintf(buf, sizeof buf, " | %-13s", c.c_str());
    head1 += buf;
    int k = 0;
    for (const auto& r : reports) {
      if (auto it = r.categories.find(c); it != r.categories.end()) k = it->second.k;
    }
    std::snprintf(buf, sizeof buf, " | %4s %8s", "MAP", ("P@" + std::to_string(k)).c_str());
    head2 += buf;
  }
  std::string out = head1 + "\n" + head2 + "\n";
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "%-8s", std::string(criterion_name(r.criterion)).c_str());
    std::string row = buf;
    for (const auto& c : categories) {
      auto it = r.categories.find(c);
      if (it == r.categories.end()) {
        std::snprintf(buf, sizeof buf, " | %4s %8s", "-", "-");
      } else {
        std::snprintf(buf, sizeof buf, " | %4.2f %8.2f", it->second.map, it->second.precision_at_k);
      }
      row += buf;
    }
    out += row + "\n";
  }
  return out;
}

nlohmann::json reports_to_json(const std::vector<EvalReport>& reports) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& r : reports) {
    nlohmann::json cats = nlohmann::json::object();
    for (const auto& [c, s] : r.categories) {
      cats[c] = {{"map", s.map}, {"precision_at_k", s.precision_at_k}, {"k", s.k},
                 {"users", s.users}};
    }
    out[std::string(criterion_name(r.criterion))] = cats;
  }
  return out;
}

}  // namespace kgforge::rec_eval
