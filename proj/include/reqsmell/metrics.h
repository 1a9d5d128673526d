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

// Densities (findings per 1000 words), user-story part breakdowns and
// folder treemaps.

#ifndef REQSMELL_METRICS_H_
#define REQSMELL_METRICS_H_

#include <array>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "reqsmell/ingest.h"
#include "reqsmell/nlp.h"
#include "reqsmell/smells.h"

namespace reqsmell {
struct ItemResult;
}  // namespace reqsmell

namespace reqsmell::metrics {

using smells::SmellKind;

// A word is a token with at least one ASCII letter or digit, or any
// non-ASCII byte.
bool IsWord(std::string_view token);
std::size_t CountWords(std::string_view text);
std::size_t CountWords(const std::vector<nlp::AnnotatedToken> &tokens);

// findings / words * 1000; 0 when words == 0.
double ComputeDensity(std::size_t findings, std::size_t words);

// Half-up rounding to `decimals` places, tolerant of binary representation
// error (23.75 -> 23.8).
double RoundHalfUp(double value, int decimals);

struct ArtifactMetrics {
  std::string artifact_id;
  std::vector<std::string> folder_path;
  std::size_t word_count = 0;
  std::size_t findings_total = 0;
  std::map<SmellKind, std::size_t> per_smell;
  double density_total = 0;
  std::map<SmellKind, double> per_smell_density;

  // Fills totals and densities from word_count and per_smell.
  void Finalize();
};

// Decides whether a finding counts. The default counts unsuppressed findings.
using FindingFilter = std::function<bool(const smells::Finding &)>;

FindingFilter DefaultFilter(bool include_suppressed);

// One entry per artifact, in first-seen order. Documents without items are
// included with zero words.
std::vector<ArtifactMetrics> ComputeArtifactMetrics(
    const std::vector<ingest::SourceDocument> &documents,
    const std::vector<ItemResult> &items, const FindingFilter &counts);

// Sum over artifacts, named "Sum".
ArtifactMetrics SumMetrics(const std::vector<ArtifactMetrics> &artifacts);

enum class StoryPart { kRole, kFeature, kReason, kUnassigned };

std::string_view StoryPartName(StoryPart part);

// Part whose span contains byte `pos` of the story text.
StoryPart PartOf(std::size_t pos, const ingest::UserStoryParts &parts);

struct StoryPartMetrics {
  StoryPart part = StoryPart::kRole;
  std::size_t word_count = 0;
  std::size_t findings = 0;
  double density = 0;
};

struct StoryPartReport {
  std::array<StoryPartMetrics, 3> parts;
  // Findings of items that are not conformant stories.
  std::size_t unassigned_findings = 0;

  // From raw (words, findings) totals per part.
  static StoryPartReport FromCounts(
      std::array<std::pair<std::size_t, std::size_t>, 3> words_and_findings,
      std::size_t unassigned_findings = 0);
};

StoryPartReport ComputeStoryPartMetrics(const std::vector<ItemResult> &items,
                                        const FindingFilter &counts);

struct TreemapNode {
  std::string name;
  // Folder path of the node joined by '/'; artifact id for leaves.
  std::string path;
  std::vector<TreemapNode> children;
  std::size_t word_count = 0;
  std::size_t findings = 0;
  std::map<SmellKind, std::size_t> per_smell;
  double density = 0;

  bool is_leaf() const { return children.empty(); }
};

// Folder hierarchy with artifacts as leaves; children sorted by name. Chains
// of single children below the root are collapsed into the root, so one
// artifact yields a root that is that leaf.
TreemapNode BuildTreemap(const std::vector<ArtifactMetrics> &artifacts);

// Same tree with `findings` and `density` restricted to one smell.
TreemapNode TreemapForSmell(const TreemapNode &root, SmellKind smell);

nlohmann::json ToJson(const ArtifactMetrics &m);
ArtifactMetrics ArtifactMetricsFromJson(const nlohmann::json &j);
nlohmann::json ToJson(const TreemapNode &node);
nlohmann::json ToJson(const StoryPartReport &report);

// One row per artifact plus a "Sum" row: words, all smells (count, per 1000
// words), then each smell (count, per 1000 words). Densities to 1 decimal.
std::string MetricsCsv(const std::vector<ArtifactMetrics> &artifacts);

// Column order of the per-smell blocks in reports.
const std::array<SmellKind, 8> &ReportSmellOrder();

}  // namespace reqsmell::metrics

#endif  // REQSMELL_METRICS_H_
