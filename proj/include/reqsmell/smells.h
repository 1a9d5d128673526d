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

// The eight requirements smells: dictionaries, detectors and findings.

#ifndef REQSMELL_SMELLS_H_
#define REQSMELL_SMELLS_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "reqsmell/common.h"
#include "reqsmell/nlp.h"

namespace reqsmell::smells {

enum class SmellKind {
  kSubjectiveLanguage,
  kAmbiguousAdverbsAdjectives,
  kLoopholes,
  kNonVerifiableTerms,
  kSuperlatives,
  kComparatives,
  kNegativeStatements,
  kVaguePronouns,
};

inline constexpr std::array<SmellKind, 8> kAllSmells = {
    SmellKind::kSubjectiveLanguage, SmellKind::kAmbiguousAdverbsAdjectives,
    SmellKind::kLoopholes,          SmellKind::kNonVerifiableTerms,
    SmellKind::kSuperlatives,       SmellKind::kComparatives,
    SmellKind::kNegativeStatements, SmellKind::kVaguePronouns,
};

// "SubjectiveLanguage", "AmbiguousAdverbsAdjectives", ...; also the
// dictionary file stem.
std::string_view SmellName(SmellKind kind);
std::optional<SmellKind> ParseSmell(std::string_view name);

// Smells that need a <name>.dict file. NegativeStatements uses its dictionary
// as the negation word list.
bool UsesDictionary(SmellKind kind);

// Short explanation and improvement hint shown with each finding.
std::string_view SmellMessage(SmellKind kind);
std::string_view SmellHint(SmellKind kind);

enum class Suppression { kConditionHeuristic, kNumericComparisonHeuristic };

// "condition", "numeric_comparison".
std::string_view SuppressionName(Suppression s);
std::optional<Suppression> ParseSuppression(std::string_view name);

// Lemma sequences of one smell; lowercase, no duplicates.
class Dictionary {
 public:
  explicit Dictionary(SmellKind smell) : smell_(smell) {}

  // Lemmatizes `phrase` with `annotator` and adds it. Blank phrases are
  // ignored.
  void AddPhrase(std::string_view phrase, const nlp::Annotator &annotator);
  void AddLemmas(std::vector<std::string> lemmas);

  // One phrase per line, '#' comments. Throws Error{kIoError}.
  static Dictionary Load(const std::filesystem::path &file, SmellKind smell,
                         const nlp::Annotator &annotator);

  SmellKind smell() const { return smell_; }
  const std::set<std::vector<std::string>> &phrases() const {
    return phrases_;
  }
  std::size_t max_length() const { return max_length_; }
  bool Contains(const std::vector<std::string> &lemmas) const {
    return phrases_.count(lemmas) > 0;
  }

 private:
  SmellKind smell_;
  std::set<std::vector<std::string>> phrases_;
  std::size_t max_length_ = 0;
};

using DictionarySet = std::map<SmellKind, Dictionary>;

// Loads every <SmellName>.dict present in `dir` for dictionary smells.
// Throws Error{kIoError} when `dir` is not a directory.
DictionarySet LoadDictionaries(const std::filesystem::path &dir,
                               const nlp::Annotator &annotator);

struct Finding {
  std::string finding_id;
  SmellKind smell = SmellKind::kSubjectiveLanguage;
  std::string artifact_id;
  std::string item_id;
  // Inclusive token indices into the item's annotated tokens.
  std::size_t first_token = 0;
  std::size_t last_token = 0;
  // Byte range in the item text.
  CharRange char_range;
  std::string matched_text;
  std::string message;
  std::string improvement_hint;
  std::optional<Suppression> suppressed_by;

  bool suppressed() const { return suppressed_by.has_value(); }
  friend bool operator==(const Finding &, const Finding &) = default;
};

// Hex FNV-1a of artifact, item, smell name and "begin:end", joined by 0x1F.
std::string MakeFindingId(std::string_view artifact_id,
                          std::string_view item_id, SmellKind smell,
                          CharRange range);

struct DetectorConfig {
  std::set<SmellKind> enabled_smells{kAllSmells.begin(), kAllSmells.end()};
  bool enable_condition_suppression = false;
  bool enable_numeric_comparison_suppression = false;
  std::filesystem::path dictionary_dir;
};

// Item being analyzed. `text` is what the tokens were annotated from.
struct ItemContext {
  std::string_view artifact_id;
  std::string_view item_id;
  std::string_view text;
  // Conformant user story: first-person singular pronouns are not findings.
  bool user_story = false;
};

using Tokens = std::vector<nlp::AnnotatedToken>;

// Longest match first, left to right, never across sentences.
std::vector<Finding> DetectDictionarySmell(const Tokens &tokens,
                                           const Dictionary &dict,
                                           const ItemContext &item);

// `kind` must be kSuperlatives or kComparatives.
std::vector<Finding> DetectDegreeSmell(const Tokens &tokens, SmellKind kind,
                                       const DetectorConfig &config,
                                       const ItemContext &item);

// Negation-tagged tokens plus tokens whose lemma is in `negations`.
std::vector<Finding> DetectNegativeStatements(const Tokens &tokens,
                                              const Dictionary *negations,
                                              const DetectorConfig &config,
                                              const ItemContext &item);

std::vector<Finding> DetectVaguePronouns(const Tokens &tokens,
                                         const ItemContext &item);

// All enabled detectors, ordered by char_range then smell.
// Throws Error{kMissingDictionary} for an enabled dictionary smell without a
// dictionary, Error{kInvalidArgument} when no smell is enabled.
std::vector<Finding> Detect(const Tokens &tokens, const DetectorConfig &config,
                            const DictionarySet &dictionaries,
                            const ItemContext &item);

// Checks the MissingDictionary precondition without analyzing anything.
void CheckDictionaries(const DetectorConfig &config,
                       const DictionarySet &dictionaries);

nlohmann::json ToJson(const Finding &finding);
// Throws Error{kJsonShapeError}.
Finding FindingFromJson(const nlohmann::json &j);

}  // namespace reqsmell::smells

#endif  // REQSMELL_SMELLS_H_
