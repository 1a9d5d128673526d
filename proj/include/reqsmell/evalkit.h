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

// Evaluation against gold annotations: span matching, precision and recall
// tables, and agreement between raters.

#ifndef REQSMELL_EVALKIT_H_
#define REQSMELL_EVALKIT_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "reqsmell/common.h"
#include "reqsmell/smells.h"

namespace reqsmell::eval {

using smells::Finding;
using smells::SmellKind;

enum class Verdict { kTruePositive, kFalsePositive };

// "tp" / "fp"; also accepts "true_positive" / "false_positive".
std::optional<Verdict> ParseVerdict(std::string_view s);
std::string_view VerdictName(Verdict v);

struct GoldSpan {
  std::string artifact_id;
  std::string item_id;
  SmellKind smell = SmellKind::kSubjectiveLanguage;
  CharRange char_range;
  // Set in precision files (classified tool findings); absent in recall
  // files, where every span is a true smell.
  std::optional<Verdict> verdict;
  std::string rater_id;
  std::string finding_id;
};

// Finding JSON plus "verdict" and "rater_id". Throws Error{kJsonShapeError}.
GoldSpan GoldSpanFromJson(const nlohmann::json &j);
nlohmann::json ToJson(const GoldSpan &g);

// JSON array or one object per line. Errors carry the line number (or the
// 1-based array element for arrays).
std::vector<GoldSpan> LoadGold(const std::filesystem::path &file);
std::vector<Finding> LoadFindings(const std::filesystem::path &file);

enum class MatchPolicy { kExactSpan, kOverlap };

struct MatchResult {
  // (finding index, gold index)
  std::vector<std::pair<std::size_t, std::size_t>> matched;
  std::vector<std::size_t> unmatched_findings;
  std::vector<std::size_t> unmatched_gold;
};

// Same artifact, item and smell required. ExactSpan needs equal ranges,
// Overlap intersecting ones. Gold spans are visited in position order and
// each takes the leftmost free finding.
MatchResult MatchFindings(std::span<const Finding> findings,
                          std::span<const GoldSpan> gold, MatchPolicy policy);

struct PrecisionCounts {
  std::size_t inspected = 0;
  std::size_t accepted = 0;
};

struct RecallCounts {
  std::size_t gold_total = 0;
  std::size_t detected = 0;
};

struct EvalRow {
  std::string label;
  std::optional<PrecisionCounts> precision_counts;
  std::optional<double> precision;
  std::optional<RecallCounts> recall_counts;
  std::optional<double> recall;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::optional<double> average_precision;
  std::optional<double> overall_precision;
  std::optional<double> average_recall;
  std::optional<double> overall_recall;

  const EvalRow *Find(std::string_view label) const;
};

// Rows in the given order. Rows with no data (inspected == 0 or
// gold_total == 0) have no rate and are left out of Average. Overall pools
// all counts. Throws Error{kInvalidCounts} when accepted > inspected or
// detected > gold_total.
EvalReport PrecisionTable(
    const std::vector<std::pair<std::string, PrecisionCounts>> &rows);
EvalReport RecallTable(
    const std::vector<std::pair<std::string, RecallCounts>> &rows);

// Row label per smell; smells not in the map keep their own name.
using SmellGroups = std::map<SmellKind, std::string>;

// The four dictionary smells as one "Ambiguity-related" row.
SmellGroups AmbiguityGroups();

// Adds recall rows and figures of `recall` to `report`, matching rows by
// label.
void MergeRecall(EvalReport &report, const EvalReport &recall);

struct EvalOptions {
  MatchPolicy policy = MatchPolicy::kExactSpan;
  SmellGroups groups;
  // Rater whose verdicts feed the precision table; default is the
  // lexicographically first rater with verdicts.
  std::optional<std::string> rater;
};

// Precision from gold spans with a verdict, recall from presence-only spans
// matched against `predictions`.
EvalReport Evaluate(std::span<const Finding> predictions,
                    std::span<const GoldSpan> gold, const EvalOptions &options);

nlohmann::json ToJson(const EvalReport &report);
// Aligned text table with inspected/accepted/precision and
// gold/detected/recall columns; rates to 2 decimals.
std::string FormatTable(const EvalReport &report);

// Cohen's kappa of two raters over the same items. Returns 1 when both
// raters use one and the same label throughout.
// Throws Error{kEmptyInput} for empty input, Error{kInvalidArgument} for
// different lengths.
template <typename Label>
double CohenKappa(std::span<const Label> a, std::span<const Label> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "label lists differ in length");
  }
  if (a.empty()) throw Error(ErrorCode::kEmptyInput, "no labels");
  const double n = static_cast<double>(a.size());
  std::map<Label, std::pair<double, double>> marginals;
  double agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) agree += 1;
    marginals[a[i]].first += 1;
    marginals[b[i]].second += 1;
  }
  const double p_o = agree / n;
  double p_e = 0;
  for (const auto &[label, counts] : marginals) {
    p_e += (counts.first / n) * (counts.second / n);
  }
  if (p_e >= 1.0) return 1.0;
  return (p_o - p_e) / (1.0 - p_e);
}

template <typename Label>
double CohenKappa(const std::vector<Label> &a, const std::vector<Label> &b) {
  return CohenKappa(std::span<const Label>(a), std::span<const Label>(b));
}

// Jaccard index of the two false-positive sets; 1 when both are empty.
double PercentFpAgreement(const std::set<std::string> &fp_a,
                          const std::set<std::string> &fp_b);

struct AgreementReport {
  std::string rater_a;
  std::string rater_b;
  std::size_t common_findings = 0;
  double kappa = 0;
  double fp_agreement = 0;
};

// Agreement of the first two raters with verdicts, over findings both
// classified (joined by finding_id). nullopt with fewer than two raters or
// no common finding.
std::optional<AgreementReport> RaterAgreement(std::span<const GoldSpan> gold);

nlohmann::json ToJson(const AgreementReport &report);

// Up to `per_artifact` findings per artifact, drawn with a seeded generator;
// result keeps the input order.
std::vector<Finding> SampleFindings(std::span<const Finding> findings,
                                    std::size_t per_artifact,
                                    std::uint64_t seed);

}  // namespace reqsmell::eval

#endif  // REQSMELL_EVALKIT_H_
