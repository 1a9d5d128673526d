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

// Suffix helpers shared by the tagger and the lemmatizer.

#ifndef REQSMELL_MORPHOLOGY_INTERNAL_H_
#define REQSMELL_MORPHOLOGY_INTERNAL_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reqsmell/nlp.h"

namespace reqsmell::nlp::internal {

inline bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

inline bool IsConsonant(char c) {
  return c >= 'a' && c <= 'z' && !IsVowel(c);
}

inline bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// "bigg" -> true, "tall" -> true, "fast" -> false.
inline bool EndsWithDoubledConsonant(std::string_view s) {
  return s.size() >= 2 && s[s.size() - 1] == s[s.size() - 2] &&
         IsConsonant(s.back());
}

// Regular -er/-est form whose base is a gradable lexicon entry.
std::optional<std::pair<std::string, Degree>> DeflectRegular(
    std::string_view word, const Lexicon &lexicon);

// Plural and verb-inflection base candidates, most specific first.
std::vector<std::string> NounBaseCandidates(std::string_view word);
std::vector<std::string> VerbBaseCandidates(std::string_view word);
// "quickly" -> {"quick"}, "easily" -> {"easy"}, "simply" -> {"simple"}.
std::vector<std::string> AdverbBaseCandidates(std::string_view word);

}  // namespace reqsmell::nlp::internal

#endif  // REQSMELL_MORPHOLOGY_INTERNAL_H_
