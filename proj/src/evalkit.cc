// Copyright 2026 The reqsmell Authors.
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

#include "reqsmell/evalkit.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

namespace reqsmell::eval {
namespace {

std::string ReadAll(const std::filesystem::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Calls `parse` on each JSON value of an array file or a JSON-lines file,
// tagging shape errors with the line (or element) number.
template <typename T, typename Parse>
std::vector<T> LoadJsonRecords(const std::filesystem::path &file,
                               Parse parse) {
  std::string text = ReadAll(file);
  std::vector<T> out;
  std::string_view trimmed = Trim(text);
  auto rethrow = [&](const std::string &what, int line) {
    throw Error(ErrorCode::kJsonShapeError, file.string() + ": " + what, line);
  };
  if (!trimmed.empty() && trimmed.front() == '[') {
    nlohmann::json array;
    try {
      array = nlohmann::json::parse(trimmed);
    } catch (const nlohmann::json::exception &e) {
      rethrow(e.what(), 1);
    }
    int element = 0;
    for (const auto &j : array) {
      ++element;
      try {
        out.push_back(parse(j));
      } catch (const Error &e) {
        rethrow(e.what(), element);
      }
    }
    return out;
  }
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &e) {
      rethrow(e.what(), line_no);
    }
    try {
      out.push_back(parse(j));
    } catch (const Error &e) {
      rethrow(e.what(), line_no);
    }
  }
  return out;
}

std::optional<double> Ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string Rate(const std::optional<double> &v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v);
  return buf;
}

std::string Label(SmellKind kind, const SmellGroups &groups) {
  auto it = groups.find(kind);
  return it == groups.end() ? std::string(smells::SmellName(kind))
                            : it->second;
}

// Row labels in smell order, groups at the position of their first member.
std::vector<std::string> LabelOrder(const SmellGroups &groups) {
  std::vector<std::string> labels;
  for (SmellKind k : smells::kAllSmells) {
    std::string l = Label(k, groups);
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) {
      labels.push_back(l);
    }
  }
  return labels;
}

bool SameItem(const Finding &f, const GoldSpan &g) {
  return f.artifact_id == g.artifact_id && f.item_id == g.item_id &&
         f.smell == g.smell;
}

}  // namespace

std::optional<Verdict> ParseVerdict(std::string_view s) {
  if (s == "tp" || s == "true_positive") return Verdict::kTruePositive;
  if (s == "fp" || s == "false_positive") return Verdict::kFalsePositive;
  return std::nullopt;
}

std::string_view VerdictName(Verdict v) {
  return v == Verdict::kTruePositive ? "tp" : "fp";
}

GoldSpan GoldSpanFromJson(const nlohmann::json &j) {
  Finding f = smells::FindingFromJson(j);
  GoldSpan g;
  g.artifact_id = f.artifact_id;
  g.item_id = f.item_id;
  g.smell = f.smell;
  g.char_range = f.char_range;
  g.finding_id = f.finding_id;
  if (j.contains("verdict") && !j["verdict"].is_null()) {
    if (!j["verdict"].is_string()) {
      throw Error(ErrorCode::kJsonShapeError, "verdict must be a string");
    }
    g.verdict = ParseVerdict(j["verdict"].get<std::string>());
    if (!g.verdict) {
      throw Error(ErrorCode::kJsonShapeError,
                  "verdict must be tp or fp, got " +
                      j["verdict"].get<std::string>());
    }
  }
  if (j.contains("rater_id")) {
    if (!j["rater_id"].is_string()) {
      throw Error(ErrorCode::kJsonShapeError, "rater_id must be a string");
    }
    g.rater_id = j["rater_id"].get<std::string>();
  }
  return g;
}

nlohmann::json ToJson(const GoldSpan &g) {
  nlohmann::json j;
  j["finding_id"] = g.finding_id;
  j["smell"] = smells::SmellName(g.smell);
  j["artifact_id"] = g.artifact_id;
  j["item_id"] = g.item_id;
  j["char_range"] = {g.char_range.begin, g.char_range.end};
  if (g.verdict) j["verdict"] = VerdictName(*g.verdict);
  j["rater_id"] = g.rater_id;
  return j;
}

std::vector<GoldSpan> LoadGold(const std::filesystem::path &file) {
  return LoadJsonRecords<GoldSpan>(file, GoldSpanFromJson);
}

std::vector<Finding> LoadFindings(const std::filesystem::path &file) {
  return LoadJsonRecords<Finding>(file, smells::FindingFromJson);
}

MatchResult MatchFindings(std::span<const Finding> findings,
                          std::span<const GoldSpan> gold, MatchPolicy policy) {
  std::vector<std::size_t> gold_order(gold.size());
  std::iota(gold_order.begin(), gold_order.end(), 0);
  std::stable_sort(gold_order.begin(), gold_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::tie(gold[a].artifact_id, gold[a].item_id,
                                     gold[a].char_range) <
                            std::tie(gold[b].artifact_id, gold[b].item_id,
                                     gold[b].char_range);
                   });
  std::vector<bool> used(findings.size(), false);
  std::vector<bool> gold_matched(gold.size(), false);
  MatchResult result;
  for (std::size_t gi : gold_order) {
    const GoldSpan &g = gold[gi];
    std::optional<std::size_t> best;
    for (std::size_t fi = 0; fi < findings.size(); ++fi) {
      if (used[fi] || !SameItem(findings[fi], g)) continue;
      const CharRange &r = findings[fi].char_range;
      bool ok = policy == MatchPolicy::kExactSpan ? r == g.char_range
                                                  : r.Intersects(g.char_range);
      if (ok && (!best || r < findings[*best].char_range)) best = fi;
    }
    if (best) {
      used[*best] = true;
      gold_matched[gi] = true;
      result.matched.emplace_back(*best, gi);
    }
  }
  std::sort(result.matched.begin(), result.matched.end());
  for (std::size_t fi = 0; fi < findings.size(); ++fi) {
    if (!used[fi]) result.unmatched_findings.push_back(fi);
  }
  for (std::size_t gi = 0; gi < gold.size(); ++gi) {
    if (!gold_matched[gi]) result.unmatched_gold.push_back(gi);
  }
  return result;
}

const EvalRow *EvalReport::Find(std::string_view label) const {
  for (const auto &r : rows) {
    if (r.label == label) return &r;
  }
  return nullptr;
}

EvalReport PrecisionTable(
    const std::vector<std::pair<std::string, PrecisionCounts>> &rows) {
  EvalReport report;
  std::size_t inspected = 0, accepted = 0;
  double sum = 0;
  int with_data = 0;
  for (const auto &[label, c] : rows) {
    if (c.accepted > c.inspected) {
      throw Error(ErrorCode::kInvalidCounts,
                  label + ": accepted exceeds inspected");
    }
    EvalRow row;
    row.label = label;
    row.precision_counts = c;
    row.precision = Ratio(c.accepted, c.inspected);
    if (row.precision) {
      sum += *row.precision;
      ++with_data;
    }
    inspected += c.inspected;
    accepted += c.accepted;
    report.rows.push_back(std::move(row));
  }
  if (with_data > 0) report.average_precision = sum / with_data;
  report.overall_precision = Ratio(accepted, inspected);
  return report;
}

EvalReport RecallTable(
    const std::vector<std::pair<std::string, RecallCounts>> &rows) {
  EvalReport report;
  std::size_t total = 0, detected = 0;
  double sum = 0;
  int with_data = 0;
  for (const auto &[label, c] : rows) {
    if (c.detected > c.gold_total) {
      throw Error(ErrorCode::kInvalidCounts,
                  label + ": detected exceeds gold total");
    }
    EvalRow row;
    row.label = label;
    row.recall_counts = c;
    row.recall = Ratio(c.detected, c.gold_total);
    if (row.recall) {
      sum += *row.recall;
      ++with_data;
    }
    total += c.gold_total;
    detected += c.detected;
    report.rows.push_back(std::move(row));
  }
  if (with_data > 0) report.average_recall = sum / with_data;
  report.overall_recall = Ratio(detected, total);
  return report;
}

SmellGroups AmbiguityGroups() {
  const std::string label = "Ambiguity-related";
  return {{SmellKind::kSubjectiveLanguage, label},
          {SmellKind::kAmbiguousAdverbsAdjectives, label},
          {SmellKind::kLoopholes, label},
          {SmellKind::kNonVerifiableTerms, label}};
}

void MergeRecall(EvalReport &report, const EvalReport &recall) {
  for (const auto &r : recall.rows) {
    auto it = std::find_if(report.rows.begin(), report.rows.end(),
                           [&](const EvalRow &x) { return x.label == r.label; });
    if (it == report.rows.end()) {
      report.rows.push_back(r);
    } else {
      it->recall_counts = r.recall_counts;
      it->recall = r.recall;
    }
  }
  report.average_recall = recall.average_recall;
  report.overall_recall = recall.overall_recall;
}

EvalReport Evaluate(std::span<const Finding> predictions,
                    std::span<const GoldSpan> gold,
                    const EvalOptions &options) {
  std::optional<std::string> rater = options.rater;
  if (!rater) {
    for (const auto &g : gold) {
      if (g.verdict && (!rater || g.rater_id < *rater)) rater = g.rater_id;
    }
  }
  std::map<std::string, PrecisionCounts> precision;
  std::vector<GoldSpan> presence;
  for (const auto &g : gold) {
    if (g.verdict) {
      if (rater && g.rater_id != *rater) continue;
      auto &c = precision[Label(g.smell, options.groups)];
      ++c.inspected;
      if (*g.verdict == Verdict::kTruePositive) ++c.accepted;
    } else {
      presence.push_back(g);
    }
  }
  std::map<std::string, RecallCounts> recall;
  if (!presence.empty()) {
    MatchResult m = MatchFindings(predictions, presence, options.policy);
    for (const auto &g : presence) {
      ++recall[Label(g.smell, options.groups)].gold_total;
    }
    for (const auto &[fi, gi] : m.matched) {
      ++recall[Label(presence[gi].smell, options.groups)].detected;
    }
  }
  std::vector<std::pair<std::string, PrecisionCounts>> p_rows;
  std::vector<std::pair<std::string, RecallCounts>> r_rows;
  for (const auto &label : LabelOrder(options.groups)) {
    if (auto it = precision.find(label); it != precision.end()) {
      p_rows.emplace_back(label, it->second);
    }
    if (auto it = recall.find(label); it != recall.end()) {
      r_rows.emplace_back(label, it->second);
    }
  }
  EvalReport report = PrecisionTable(p_rows);
  if (!r_rows.empty()) MergeRecall(report, RecallTable(r_rows));
  return report;
}

nlohmann::json ToJson(const EvalReport &report) {
  auto opt = [](const std::optional<double> &v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &r : report.rows) {
    nlohmann::json j;
    j["label"] = r.label;
    if (r.precision_counts) {
      j["inspected"] = r.precision_counts->inspected;
      j["accepted"] = r.precision_counts->accepted;
      j["rejected"] = r.precision_counts->inspected - r.precision_counts->accepted;
      j["precision"] = opt(r.precision);
    }
    if (r.recall_counts) {
      j["gold_total"] = r.recall_counts->gold_total;
      j["detected"] = r.recall_counts->detected;
      j["recall"] = opt(r.recall);
    }
    rows.push_back(j);
  }
  return {{"rows", rows},
          {"average_precision", opt(report.average_precision)},
          {"overall_precision", opt(report.overall_precision)},
          {"average_recall", opt(report.average_recall)},
          {"overall_recall", opt(report.overall_recall)}};
}

std::string FormatTable(const EvalReport &report) {
  std::vector<std::array<std::string, 7>> lines;
  lines.push_back({"Smell", "Inspected", "Accepted", "Precision", "Gold",
                   "Detected", "Recall"});
  auto count = [](const auto &opt, auto member) -> std::string {
    return opt ? std::to_string((*opt).*member) : "-";
  };
  for (const auto &r : report.rows) {
    lines.push_back({r.label,
                     count(r.precision_counts, &PrecisionCounts::inspected),
                     count(r.precision_counts, &PrecisionCounts::accepted),
                     Rate(r.precision),
                     count(r.recall_counts, &RecallCounts::gold_total),
                     count(r.recall_counts, &RecallCounts::detected),
                     Rate(r.recall)});
  }
  lines.push_back({"Average", "", "", Rate(report.average_precision), "", "",
                   Rate(report.average_recall)});
  lines.push_back({"Overall", "", "", Rate(report.overall_precision), "", "",
                   Rate(report.overall_recall)});
  std::array<std::size_t, 7> width{};
  for (const auto &l : lines) {
    for (int c = 0; c < 7; ++c) width[c] = std::max(width[c], l[c].size());
  }
  std::string out;
  for (const auto &l : lines) {
    std::string row;
    for (int c = 0; c < 7; ++c) {
      if (c == 0) {
        row += l[c] + std::string(width[c] - l[c].size(), ' ');
      } else {
        row += "  " + std::string(width[c] - l[c].size(), ' ') + l[c];
      }
    }
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out += row + "\n";
  }
  return out;
}

double PercentFpAgreement(const std::set<std::string> &fp_a,
                          const std::set<std::string> &fp_b) {
  if (fp_a.empty() && fp_b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto &id : fp_a) common += fp_b.count(id);
  std::size_t united = fp_a.size() + fp_b.size() - common;
  return static_cast<double>(common) / static_cast<double>(united);
}

std::optional<AgreementReport> RaterAgreement(std::span<const GoldSpan> gold) {
  std::map<std::string, std::map<std::string, Verdict>> by_rater;
  for (const auto &g : gold) {
    if (!g.verdict) continue;
    std::string id = g.finding_id.empty()
                         ? smells::MakeFindingId(g.artifact_id, g.item_id,
                                                 g.smell, g.char_range)
                         : g.finding_id;
    by_rater[g.rater_id][id] = *g.verdict;
  }
  if (by_rater.size() < 2) return std::nullopt;
  auto it = by_rater.begin();
  const auto &[name_a, a] = *it++;
  const auto &[name_b, b] = *it;
  std::vector<Verdict> la, lb;
  std::set<std::string> fp_a, fp_b;
  for (const auto &[id, v] : a) {
    auto other = b.find(id);
    if (other == b.end()) continue;
    la.push_back(v);
    lb.push_back(other->second);
    if (v == Verdict::kFalsePositive) fp_a.insert(id);
    if (other->second == Verdict::kFalsePositive) fp_b.insert(id);
  }
  if (la.empty()) return std::nullopt;
  AgreementReport r;
  r.rater_a = name_a;
  r.rater_b = name_b;
  r.common_findings = la.size();
  r.kappa = CohenKappa(la, lb);
  r.fp_agreement = PercentFpAgreement(fp_a, fp_b);
  return r;
}

nlohmann::json ToJson(const AgreementReport &r) {
  return {{"rater_a", r.rater_a},
          {"rater_b", r.rater_b},
          {"common_findings", r.common_findings},
          {"kappa", r.kappa},
          {"fp_agreement", r.fp_agreement}};
}

std::vector<Finding> SampleFindings(std::span<const Finding> findings,
                                    std::size_t per_artifact,
                                    std::uint64_t seed) {
  std::map<std::string, std::vector<std::size_t>> by_artifact;
  for (std::size_t i = 0; i < findings.size(); ++i) {
    by_artifact[findings[i].artifact_id].push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> chosen;
  for (auto &[artifact, indices] : by_artifact) {
    std::size_t take = std::min(per_artifact, indices.size());
    for (std::size_t k = 0; k < take; ++k) {
      std::size_t j = k + static_cast<std::size_t>(rng() % (indices.size() - k));
      std::swap(indices[k], indices[j]);
      chosen.push_back(indices[k]);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<Finding> out;
  for (std::size_t i : chosen) out.push_back(findings[i]);
  return out;
}

}  // namespace reqsmell::eval
