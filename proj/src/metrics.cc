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

#include "reqsmell/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "reqsmell/pipeline.h"

namespace reqsmell::metrics {
namespace {

std::vector<std::string> SplitPath(std::string_view id) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= id.size()) {
    std::size_t slash = id.find('/', start);
    if (slash == std::string_view::npos) slash = id.size();
    if (slash > start) parts.emplace_back(id.substr(start, slash - start));
    start = slash + 1;
  }
  return parts;
}

std::string Fixed1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", RoundHalfUp(v, 1));
  return buf;
}

std::string CsvField(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void Recompute(TreemapNode &node) {
  if (node.is_leaf()) {
    node.density = ComputeDensity(node.findings, node.word_count);
    return;
  }
  node.word_count = 0;
  node.findings = 0;
  node.per_smell.clear();
  for (auto &child : node.children) {
    Recompute(child);
    node.word_count += child.word_count;
    node.findings += child.findings;
    for (const auto &[k, v] : child.per_smell) node.per_smell[k] += v;
  }
  node.density = ComputeDensity(node.findings, node.word_count);
}

void SortChildren(TreemapNode &node) {
  std::sort(node.children.begin(), node.children.end(),
            [](const TreemapNode &a, const TreemapNode &b) {
              return a.name < b.name;
            });
  for (auto &c : node.children) SortChildren(c);
}

nlohmann::json SmellCounts(const std::map<SmellKind, std::size_t> &m) {
  nlohmann::json j = nlohmann::json::object();
  for (SmellKind k : smells::kAllSmells) {
    auto it = m.find(k);
    j[std::string(smells::SmellName(k))] = it == m.end() ? 0 : it->second;
  }
  return j;
}

}  // namespace

bool IsWord(std::string_view token) {
  for (unsigned char c : token) {
    if (std::isalnum(c) || c >= 0x80) return true;
  }
  return false;
}

std::size_t CountWords(std::string_view text) {
  std::size_t n = 0;
  for (const auto &t : nlp::Tokenize(text)) n += IsWord(t.surface) ? 1 : 0;
  return n;
}

std::size_t CountWords(const std::vector<nlp::AnnotatedToken> &tokens) {
  std::size_t n = 0;
  for (const auto &t : tokens) n += IsWord(t.surface) ? 1 : 0;
  return n;
}

double ComputeDensity(std::size_t findings, std::size_t words) {
  if (words == 0) return 0.0;
  return static_cast<double>(findings) / static_cast<double>(words) * 1000.0;
}

double RoundHalfUp(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double x = value * scale;
  return std::floor(x + 0.5 + 1e-9 * std::max(1.0, std::fabs(x))) / scale;
}

void ArtifactMetrics::Finalize() {
  findings_total = 0;
  per_smell_density.clear();
  for (SmellKind k : smells::kAllSmells) {
    std::size_t c = per_smell[k];
    findings_total += c;
    per_smell_density[k] = ComputeDensity(c, word_count);
  }
  density_total = ComputeDensity(findings_total, word_count);
}

FindingFilter DefaultFilter(bool include_suppressed) {
  return [include_suppressed](const smells::Finding &f) {
    return include_suppressed || !f.suppressed();
  };
}

std::vector<ArtifactMetrics> ComputeArtifactMetrics(
    const std::vector<ingest::SourceDocument> &documents,
    const std::vector<ItemResult> &items, const FindingFilter &counts) {
  std::vector<ArtifactMetrics> out;
  std::map<std::string, std::size_t> index;
  auto slot = [&](const std::string &id) -> ArtifactMetrics & {
    auto [it, inserted] = index.emplace(id, out.size());
    if (inserted) {
      ArtifactMetrics m;
      m.artifact_id = id;
      m.folder_path = SplitPath(id);
      if (!m.folder_path.empty()) m.folder_path.pop_back();
      out.push_back(std::move(m));
    }
    return out[it->second];
  };
  for (const auto &doc : documents) {
    if (doc.format != ingest::Format::kJsonLines) slot(doc.artifact_id);
  }
  for (const auto &r : items) {
    ArtifactMetrics &m = slot(r.item.artifact_id);
    m.word_count += r.word_count;
    for (const auto &f : r.findings) {
      if (counts(f)) ++m.per_smell[f.smell];
    }
  }
  for (auto &m : out) m.Finalize();
  return out;
}

ArtifactMetrics SumMetrics(const std::vector<ArtifactMetrics> &artifacts) {
  ArtifactMetrics sum;
  sum.artifact_id = "Sum";
  for (const auto &a : artifacts) {
    sum.word_count += a.word_count;
    for (const auto &[k, v] : a.per_smell) sum.per_smell[k] += v;
  }
  sum.Finalize();
  return sum;
}

std::string_view StoryPartName(StoryPart part) {
  switch (part) {
    case StoryPart::kRole: return "Role";
    case StoryPart::kFeature: return "Feature";
    case StoryPart::kReason: return "Reason";
    case StoryPart::kUnassigned: return "Unassigned";
  }
  return "Unassigned";
}

StoryPart PartOf(std::size_t pos, const ingest::UserStoryParts &parts) {
  if (!parts.conformant) return StoryPart::kUnassigned;
  if (parts.role && parts.role->Contains(pos)) return StoryPart::kRole;
  if (parts.feature && parts.feature->Contains(pos)) return StoryPart::kFeature;
  if (parts.reason && parts.reason->Contains(pos)) return StoryPart::kReason;
  return StoryPart::kUnassigned;
}

StoryPartReport StoryPartReport::FromCounts(
    std::array<std::pair<std::size_t, std::size_t>, 3> words_and_findings,
    std::size_t unassigned_findings) {
  StoryPartReport r;
  for (int i = 0; i < 3; ++i) {
    auto &p = r.parts[i];
    p.part = static_cast<StoryPart>(i);
    p.word_count = words_and_findings[i].first;
    p.findings = words_and_findings[i].second;
    p.density = ComputeDensity(p.findings, p.word_count);
  }
  r.unassigned_findings = unassigned_findings;
  return r;
}

StoryPartReport ComputeStoryPartMetrics(const std::vector<ItemResult> &items,
                                        const FindingFilter &counts) {
  std::array<std::pair<std::size_t, std::size_t>, 3> totals{};
  std::size_t unassigned = 0;
  for (const auto &r : items) {
    for (int i = 0; i < 3; ++i) totals[i].first += r.story_part_words[i];
    for (const auto &f : r.findings) {
      if (!counts(f)) continue;
      StoryPart part = r.story ? PartOf(f.char_range.begin, *r.story)
                               : StoryPart::kUnassigned;
      if (part == StoryPart::kUnassigned) {
        ++unassigned;
      } else {
        ++totals[static_cast<int>(part)].second;
      }
    }
  }
  return StoryPartReport::FromCounts(totals, unassigned);
}

TreemapNode BuildTreemap(const std::vector<ArtifactMetrics> &artifacts) {
  TreemapNode root;
  for (const auto &a : artifacts) {
    TreemapNode *node = &root;
    std::string path;
    for (const auto &folder : a.folder_path) {
      path += path.empty() ? folder : "/" + folder;
      auto it = std::find_if(node->children.begin(), node->children.end(),
                             [&](const TreemapNode &c) {
                               return c.name == folder && !c.is_leaf();
                             });
      if (it == node->children.end()) {
        TreemapNode folder_node;
        folder_node.name = folder;
        folder_node.path = path;
        node->children.push_back(std::move(folder_node));
        node = &node->children.back();
      } else {
        node = &*it;
      }
    }
    TreemapNode leaf;
    std::vector<std::string> parts = SplitPath(a.artifact_id);
    leaf.name = parts.empty() ? a.artifact_id : parts.back();
    leaf.path = a.artifact_id;
    leaf.word_count = a.word_count;
    leaf.findings = a.findings_total;
    leaf.per_smell = a.per_smell;
    node->children.push_back(std::move(leaf));
  }
  SortChildren(root);
  while (root.children.size() == 1) {
    TreemapNode only = std::move(root.children.front());
    root = std::move(only);
  }
  Recompute(root);
  return root;
}

TreemapNode TreemapForSmell(const TreemapNode &root, SmellKind smell) {
  TreemapNode copy;
  copy.name = root.name;
  copy.path = root.path;
  copy.word_count = root.word_count;
  auto it = root.per_smell.find(smell);
  copy.findings = it == root.per_smell.end() ? 0 : it->second;
  if (copy.findings > 0) copy.per_smell[smell] = copy.findings;
  copy.density = ComputeDensity(copy.findings, copy.word_count);
  for (const auto &c : root.children) {
    copy.children.push_back(TreemapForSmell(c, smell));
  }
  return copy;
}

nlohmann::json ToJson(const ArtifactMetrics &m) {
  nlohmann::json j;
  j["artifact_id"] = m.artifact_id;
  j["folder_path"] = m.folder_path;
  j["word_count"] = m.word_count;
  j["findings_total"] = m.findings_total;
  j["density_total"] = m.density_total;
  j["per_smell"] = SmellCounts(m.per_smell);
  nlohmann::json d = nlohmann::json::object();
  for (SmellKind k : smells::kAllSmells) {
    auto it = m.per_smell_density.find(k);
    d[std::string(smells::SmellName(k))] =
        it == m.per_smell_density.end() ? 0.0 : it->second;
  }
  j["per_smell_density"] = d;
  return j;
}

ArtifactMetrics ArtifactMetricsFromJson(const nlohmann::json &j) {
  try {
    ArtifactMetrics m;
    m.artifact_id = j.at("artifact_id").get<std::string>();
    m.folder_path = j.value("folder_path", std::vector<std::string>{});
    m.word_count = j.at("word_count").get<std::size_t>();
    for (const auto &[name, count] : j.at("per_smell").items()) {
      auto kind = smells::ParseSmell(name);
      if (!kind) {
        throw Error(ErrorCode::kJsonShapeError, "unknown smell " + name);
      }
      m.per_smell[*kind] = count.get<std::size_t>();
    }
    m.Finalize();
    return m;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kJsonShapeError,
                std::string("artifact metrics: ") + e.what());
  }
}

nlohmann::json ToJson(const TreemapNode &node) {
  nlohmann::json j;
  j["name"] = node.name;
  j["path"] = node.path;
  j["word_count"] = node.word_count;
  j["findings"] = node.findings;
  j["density"] = node.density;
  j["per_smell"] = SmellCounts(node.per_smell);
  j["children"] = nlohmann::json::array();
  for (const auto &c : node.children) j["children"].push_back(ToJson(c));
  return j;
}

nlohmann::json ToJson(const StoryPartReport &report) {
  nlohmann::json j;
  nlohmann::json parts = nlohmann::json::array();
  for (const auto &p : report.parts) {
    parts.push_back({{"part", StoryPartName(p.part)},
                     {"word_count", p.word_count},
                     {"findings", p.findings},
                     {"density", p.density}});
  }
  j["parts"] = parts;
  j["unassigned_findings"] = report.unassigned_findings;
  return j;
}

const std::array<SmellKind, 8> &ReportSmellOrder() {
  static const std::array<SmellKind, 8> order = {
      SmellKind::kSubjectiveLanguage, SmellKind::kLoopholes,
      SmellKind::kVaguePronouns,      SmellKind::kSuperlatives,
      SmellKind::kNegativeStatements, SmellKind::kComparatives,
      SmellKind::kNonVerifiableTerms, SmellKind::kAmbiguousAdverbsAdjectives,
  };
  return order;
}

std::string MetricsCsv(const std::vector<ArtifactMetrics> &artifacts) {
  std::ostringstream out;
  out << "artifact,words,all_smells,all_smells_per_1000";
  for (SmellKind k : ReportSmellOrder()) {
    out << ',' << smells::SmellName(k) << ',' << smells::SmellName(k)
        << "_per_1000";
  }
  out << '\n';
  auto row = [&out](const ArtifactMetrics &m) {
    out << CsvField(m.artifact_id) << ',' << m.word_count << ','
        << m.findings_total << ',' << Fixed1(m.density_total);
    for (SmellKind k : ReportSmellOrder()) {
      auto c = m.per_smell.find(k);
      auto d = m.per_smell_density.find(k);
      out << ',' << (c == m.per_smell.end() ? 0 : c->second) << ','
          << Fixed1(d == m.per_smell_density.end() ? 0.0 : d->second);
    }
    out << '\n';
  };
  for (const auto &a : artifacts) row(a);
  row(SumMetrics(artifacts));
  return out.str();
}

}  // namespace reqsmell::metrics
