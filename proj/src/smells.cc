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

#include "reqsmell/smells.h"

#include <algorithm>
#include <fstream>

namespace reqsmell::smells {
namespace {

using nlp::AnnotatedToken;
using nlp::PosTag;

struct SmellInfo {
  SmellKind kind;
  std::string_view name;
  std::string_view message;
  std::string_view hint;
};

constexpr SmellInfo kSmellInfo[] = {
    {SmellKind::kSubjectiveLanguage, "SubjectiveLanguage",
     "Subjective wording: whether this holds depends on who reads it.",
     "State a measurable property or acceptance criterion instead."},
    {SmellKind::kAmbiguousAdverbsAdjectives, "AmbiguousAdverbsAdjectives",
     "Ambiguous adverb or adjective: readers may assume different values.",
     "Give the concrete value, range or tolerance that is meant."},
    {SmellKind::kLoopholes, "Loopholes",
     "Loophole: the requirement can be met without doing what it asks.",
     "Remove the escape clause or specify exactly when the exception "
     "applies."},
    {SmellKind::kNonVerifiableTerms, "NonVerifiableTerms",
     "Non-verifiable term: no test can decide whether this is fulfilled.",
     "Replace the term with a condition that can be checked."},
    {SmellKind::kSuperlatives, "Superlatives",
     "Superlative: the requirement asks for a best case that cannot be "
     "demonstrated.",
     "Name the target value and how it is measured."},
    {SmellKind::kComparatives, "Comparatives",
     "Comparative: the reference point of the comparison is missing.",
     "Say what it is compared against and by how much."},
    {SmellKind::kNegativeStatements, "NegativeStatements",
     "Negative statement: describes what the system does not do.",
     "Rephrase as the behavior the system shall show."},
    {SmellKind::kVaguePronouns, "VaguePronouns",
     "Vague pronoun: it is unclear what this refers to.",
     "Repeat the noun the pronoun stands for."},
};

const SmellInfo &Info(SmellKind kind) {
  return kSmellInfo[static_cast<int>(kind)];
}

bool IsFirstPersonSingular(std::string_view lemma) {
  return lemma == "i" || lemma == "me" || lemma == "my" || lemma == "mine" ||
         lemma == "myself";
}

bool IsConditionOpener(std::string_view lemma) {
  return lemma == "if" || lemma == "unless" || lemma == "when";
}

Finding MakeFinding(const Tokens &tokens, std::size_t first, std::size_t last,
                    SmellKind smell, const ItemContext &item) {
  Finding f;
  f.smell = smell;
  f.artifact_id = std::string(item.artifact_id);
  f.item_id = std::string(item.item_id);
  f.first_token = first;
  f.last_token = last;
  f.char_range = {tokens[first].char_range.begin, tokens[last].char_range.end};
  f.matched_text = std::string(f.char_range.Slice(item.text));
  f.message = std::string(Info(smell).message);
  f.improvement_hint = std::string(Info(smell).hint);
  f.finding_id = MakeFindingId(item.artifact_id, item.item_id, smell,
                               f.char_range);
  return f;
}

// Index of the next non-punctuation token in the same sentence.
std::optional<std::size_t> NextWord(const Tokens &tokens, std::size_t i) {
  for (std::size_t j = i + 1; j < tokens.size(); ++j) {
    if (tokens[j].sentence_index != tokens[i].sentence_index) break;
    if (tokens[j].pos != PosTag::kPunct) return j;
  }
  return std::nullopt;
}

bool ComparesAgainstNumber(const Tokens &tokens, std::size_t i) {
  for (std::size_t j = i + 1; j < tokens.size(); ++j) {
    if (tokens[j].sentence_index != tokens[i].sentence_index) break;
    if (tokens[j].lemma != "than") continue;
    auto next = NextWord(tokens, j);
    return next && tokens[*next].pos == PosTag::kNumber;
  }
  return false;
}

bool InsideCondition(const Tokens &tokens, std::size_t i) {
  for (std::size_t j = i; j-- > 0;) {
    if (tokens[j].sentence_index != tokens[i].sentence_index) break;
    const std::string &s = tokens[j].surface;
    if (s == "," || s == ";" || s == ":") return false;
    if (IsConditionOpener(tokens[j].lemma)) return true;
  }
  return false;
}

}  // namespace

std::string_view SmellName(SmellKind kind) { return Info(kind).name; }

std::optional<SmellKind> ParseSmell(std::string_view name) {
  for (const auto &info : kSmellInfo) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

bool UsesDictionary(SmellKind kind) {
  switch (kind) {
    case SmellKind::kSubjectiveLanguage:
    case SmellKind::kAmbiguousAdverbsAdjectives:
    case SmellKind::kLoopholes:
    case SmellKind::kNonVerifiableTerms:
    case SmellKind::kNegativeStatements:
      return true;
    default:
      return false;
  }
}

std::string_view SmellMessage(SmellKind kind) { return Info(kind).message; }
std::string_view SmellHint(SmellKind kind) { return Info(kind).hint; }

std::string_view SuppressionName(Suppression s) {
  return s == Suppression::kConditionHeuristic ? "condition"
                                               : "numeric_comparison";
}

std::optional<Suppression> ParseSuppression(std::string_view name) {
  if (name == "condition") return Suppression::kConditionHeuristic;
  if (name == "numeric_comparison") {
    return Suppression::kNumericComparisonHeuristic;
  }
  return std::nullopt;
}

void Dictionary::AddPhrase(std::string_view phrase,
                           const nlp::Annotator &annotator) {
  std::vector<std::string> lemmas;
  for (const auto &t : annotator.Annotate(phrase)) lemmas.push_back(t.lemma);
  AddLemmas(std::move(lemmas));
}

void Dictionary::AddLemmas(std::vector<std::string> lemmas) {
  if (lemmas.empty()) return;
  for (auto &l : lemmas) l = ToLower(l);
  max_length_ = std::max(max_length_, lemmas.size());
  phrases_.insert(std::move(lemmas));
}

Dictionary Dictionary::Load(const std::filesystem::path &file, SmellKind smell,
                            const nlp::Annotator &annotator) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + file.string());
  Dictionary dict(smell);
  std::string line;
  while (std::getline(in, line)) {
    std::string_view phrase = Trim(line);
    if (phrase.empty() || phrase.front() == '#') continue;
    dict.AddPhrase(phrase, annotator);
  }
  return dict;
}

DictionarySet LoadDictionaries(const std::filesystem::path &dir,
                               const nlp::Annotator &annotator) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIoError,
                "dictionary directory not found: " + dir.string());
  }
  DictionarySet set;
  for (SmellKind kind : kAllSmells) {
    if (!UsesDictionary(kind)) continue;
    auto file = dir / (std::string(SmellName(kind)) + ".dict");
    if (std::filesystem::exists(file)) {
      set.emplace(kind, Dictionary::Load(file, kind, annotator));
    }
  }
  return set;
}

std::string MakeFindingId(std::string_view artifact_id,
                          std::string_view item_id, SmellKind smell,
                          CharRange range) {
  std::string key;
  key.append(artifact_id).push_back('\x1f');
  key.append(item_id).push_back('\x1f');
  key.append(SmellName(smell)).push_back('\x1f');
  key += std::to_string(range.begin) + ":" + std::to_string(range.end);
  return Fnv1aHex(key);
}

std::vector<Finding> DetectDictionarySmell(const Tokens &tokens,
                                           const Dictionary &dict,
                                           const ItemContext &item) {
  std::vector<Finding> out;
  std::size_t i = 0;
  std::vector<std::string> window;
  while (i < tokens.size()) {
    std::size_t matched = 0;
    std::size_t limit = std::min(dict.max_length(), tokens.size() - i);
    for (std::size_t len = limit; len >= 1 && matched == 0; --len) {
      if (tokens[i + len - 1].sentence_index != tokens[i].sentence_index) {
        continue;
      }
      window.clear();
      for (std::size_t k = 0; k < len; ++k) window.push_back(tokens[i + k].lemma);
      if (dict.Contains(window)) matched = len;
    }
    if (matched > 0) {
      out.push_back(MakeFinding(tokens, i, i + matched - 1, dict.smell(), item));
      i += matched;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<Finding> DetectDegreeSmell(const Tokens &tokens, SmellKind kind,
                                       const DetectorConfig &config,
                                       const ItemContext &item) {
  if (kind != SmellKind::kSuperlatives && kind != SmellKind::kComparatives) {
    throw Error(ErrorCode::kInvalidArgument,
                "degree detector needs Superlatives or Comparatives");
  }
  const nlp::Degree wanted = kind == SmellKind::kSuperlatives
                                 ? nlp::Degree::kSuperlative
                                 : nlp::Degree::kComparative;
  std::vector<Finding> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].degree != wanted) continue;
    std::size_t first = tokens[i].periphrastic && i > 0 ? i - 1 : i;
    Finding f = MakeFinding(tokens, first, i, kind, item);
    if (kind == SmellKind::kComparatives &&
        config.enable_numeric_comparison_suppression &&
        ComparesAgainstNumber(tokens, i)) {
      f.suppressed_by = Suppression::kNumericComparisonHeuristic;
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Finding> DetectNegativeStatements(const Tokens &tokens,
                                              const Dictionary *negations,
                                              const DetectorConfig &config,
                                              const ItemContext &item) {
  std::vector<Finding> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    bool hit = tokens[i].pos == PosTag::kNegation ||
               (negations != nullptr && negations->Contains({tokens[i].lemma}));
    if (!hit) continue;
    Finding f = MakeFinding(tokens, i, i, SmellKind::kNegativeStatements, item);
    if (config.enable_condition_suppression && InsideCondition(tokens, i)) {
      f.suppressed_by = Suppression::kConditionHeuristic;
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Finding> DetectVaguePronouns(const Tokens &tokens,
                                         const ItemContext &item) {
  std::vector<Finding> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].pos != PosTag::kPronounSubstituting) continue;
    if (item.user_story && IsFirstPersonSingular(tokens[i].lemma)) continue;
    out.push_back(MakeFinding(tokens, i, i, SmellKind::kVaguePronouns, item));
  }
  return out;
}

void CheckDictionaries(const DetectorConfig &config,
                       const DictionarySet &dictionaries) {
  if (config.enabled_smells.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no smell is enabled");
  }
  for (SmellKind kind : config.enabled_smells) {
    if (UsesDictionary(kind) && dictionaries.count(kind) == 0) {
      throw Error(ErrorCode::kMissingDictionary,
                  "no dictionary for " + std::string(SmellName(kind)));
    }
  }
}

std::vector<Finding> Detect(const Tokens &tokens, const DetectorConfig &config,
                            const DictionarySet &dictionaries,
                            const ItemContext &item) {
  CheckDictionaries(config, dictionaries);
  std::vector<Finding> all;
  auto append = [&all](std::vector<Finding> &&more) {
    std::move(more.begin(), more.end(), std::back_inserter(all));
  };
  for (SmellKind kind : config.enabled_smells) {
    switch (kind) {
      case SmellKind::kSubjectiveLanguage:
      case SmellKind::kAmbiguousAdverbsAdjectives:
      case SmellKind::kLoopholes:
      case SmellKind::kNonVerifiableTerms:
        append(DetectDictionarySmell(tokens, dictionaries.at(kind), item));
        break;
      case SmellKind::kSuperlatives:
      case SmellKind::kComparatives:
        append(DetectDegreeSmell(tokens, kind, config, item));
        break;
      case SmellKind::kNegativeStatements:
        append(DetectNegativeStatements(tokens, &dictionaries.at(kind), config,
                                        item));
        break;
      case SmellKind::kVaguePronouns:
        append(DetectVaguePronouns(tokens, item));
        break;
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Finding &a, const Finding &b) {
                     if (a.char_range != b.char_range) {
                       return a.char_range < b.char_range;
                     }
                     return a.smell < b.smell;
                   });
  return all;
}

nlohmann::json ToJson(const Finding &f) {
  nlohmann::json j;
  j["finding_id"] = f.finding_id;
  j["smell"] = SmellName(f.smell);
  j["artifact_id"] = f.artifact_id;
  j["item_id"] = f.item_id;
  j["token_span"] = {f.first_token, f.last_token};
  j["char_range"] = {f.char_range.begin, f.char_range.end};
  j["matched_text"] = f.matched_text;
  j["message"] = f.message;
  j["improvement_hint"] = f.improvement_hint;
  if (f.suppressed_by) {
    j["suppressed_by"] = SuppressionName(*f.suppressed_by);
  } else {
    j["suppressed_by"] = nullptr;
  }
  return j;
}

Finding FindingFromJson(const nlohmann::json &j) {
  auto fail = [](const std::string &what) -> Finding {
    throw Error(ErrorCode::kJsonShapeError, "finding: " + what);
  };
  if (!j.is_object()) return fail("expected an object");
  Finding f;
  try {
    auto smell = ParseSmell(j.at("smell").get<std::string>());
    if (!smell) return fail("unknown smell");
    f.smell = *smell;
    f.artifact_id = j.at("artifact_id").get<std::string>();
    f.item_id = j.at("item_id").get<std::string>();
    const auto &range = j.at("char_range");
    if (!range.is_array() || range.size() != 2) return fail("bad char_range");
    f.char_range = {range[0].get<std::size_t>(), range[1].get<std::size_t>()};
    if (j.contains("token_span")) {
      const auto &span = j.at("token_span");
      if (!span.is_array() || span.size() != 2) return fail("bad token_span");
      f.first_token = span[0].get<std::size_t>();
      f.last_token = span[1].get<std::size_t>();
    }
    f.matched_text = j.value("matched_text", "");
    f.message = j.value("message", std::string(SmellMessage(f.smell)));
    f.improvement_hint =
        j.value("improvement_hint", std::string(SmellHint(f.smell)));
    if (j.contains("suppressed_by") && !j.at("suppressed_by").is_null()) {
      f.suppressed_by =
          ParseSuppression(j.at("suppressed_by").get<std::string>());
      if (!f.suppressed_by) return fail("unknown suppressed_by");
    }
    f.finding_id = j.value("finding_id", std::string());
    if (f.finding_id.empty()) {
      f.finding_id =
          MakeFindingId(f.artifact_id, f.item_id, f.smell, f.char_range);
    }
  } catch (const nlohmann::json::exception &e) {
    return fail(e.what());
  }
  return f;
}

}  // namespace reqsmell::smells
