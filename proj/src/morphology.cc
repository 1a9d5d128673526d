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

#include <array>

#include "morphology_internal.h"
#include "reqsmell/nlp.h"

namespace reqsmell::nlp {
namespace internal {

std::optional<std::pair<std::string, Degree>> DeflectRegular(
    std::string_view word, const Lexicon &lexicon) {
  if (lexicon.IsDegreeStopword(word)) return std::nullopt;
  constexpr std::array<std::pair<std::string_view, Degree>, 2> kSuffixes = {{
      {"est", Degree::kSuperlative},
      {"er", Degree::kComparative},
  }};
  for (const auto &[suffix, degree] : kSuffixes) {
    if (!EndsWith(word, suffix) || word.size() < suffix.size() + 2) continue;
    std::string stem(word.substr(0, word.size() - suffix.size()));
    std::vector<std::string> candidates;
    if (stem.back() == 'i' && stem.size() >= 2 &&
        IsConsonant(stem[stem.size() - 2])) {
      candidates.push_back(stem.substr(0, stem.size() - 1) + "y");
    }
    if (EndsWithDoubledConsonant(stem)) {
      candidates.push_back(stem.substr(0, stem.size() - 1));
    }
    candidates.push_back(stem + "e");
    candidates.push_back(stem);
    for (const auto &c : candidates) {
      if (lexicon.IsGradableBase(c)) return std::make_pair(c, degree);
    }
  }
  return std::nullopt;
}

std::vector<std::string> NounBaseCandidates(std::string_view w) {
  std::vector<std::string> out;
  if (w.size() < 3 || w.back() != 's') return out;
  std::string s(w);
  if (EndsWith(s, "ies") && s.size() > 4) {
    out.push_back(s.substr(0, s.size() - 3) + "y");
  }
  if (EndsWith(s, "ves") && s.size() > 4) {
    out.push_back(s.substr(0, s.size() - 3) + "f");
    out.push_back(s.substr(0, s.size() - 3) + "fe");
  }
  if (EndsWith(s, "es")) out.push_back(s.substr(0, s.size() - 2));
  if (!EndsWith(s, "ss")) out.push_back(s.substr(0, s.size() - 1));
  return out;
}

std::vector<std::string> VerbBaseCandidates(std::string_view w) {
  std::vector<std::string> out;
  std::string s(w);
  auto add_stem = [&](const std::string &stem) {
    if (stem.size() < 2) return;
    if (EndsWithDoubledConsonant(stem)) {
      out.push_back(stem.substr(0, stem.size() - 1));
    }
    out.push_back(stem);
    out.push_back(stem + "e");
  };
  if (EndsWith(s, "ing") && s.size() > 4) {
    add_stem(s.substr(0, s.size() - 3));
  } else if (EndsWith(s, "ied") && s.size() > 4) {
    out.push_back(s.substr(0, s.size() - 3) + "y");
  } else if (EndsWith(s, "ed") && s.size() > 3) {
    add_stem(s.substr(0, s.size() - 2));
  } else if (EndsWith(s, "ies") && s.size() > 4) {
    out.push_back(s.substr(0, s.size() - 3) + "y");
  } else if (EndsWith(s, "es") && s.size() > 3) {
    out.push_back(s.substr(0, s.size() - 2));
    out.push_back(s.substr(0, s.size() - 1));
  } else if (EndsWith(s, "s") && !EndsWith(s, "ss") && s.size() > 2) {
    out.push_back(s.substr(0, s.size() - 1));
  }
  return out;
}

std::vector<std::string> AdverbBaseCandidates(std::string_view w) {
  std::vector<std::string> out;
  if (!EndsWith(w, "ly") || w.size() < 5) return out;
  std::string stem(w.substr(0, w.size() - 2));
  if (stem.back() == 'i') out.push_back(stem.substr(0, stem.size() - 1) + "y");
  out.push_back(stem);
  out.push_back(stem + "e");
  if (EndsWith(stem, "l")) out.push_back(stem + "le");  // "simply"
  if (EndsWith(stem, "al")) out.push_back(stem.substr(0, stem.size() - 2));
  return out;
}

}  // namespace internal

namespace {

using internal::EndsWith;
using internal::EndsWithDoubledConsonant;
using internal::IsConsonant;
using internal::IsVowel;

bool IsPeriphrasticComparative(std::string_view w) {
  return w == "more" || w == "less";
}

bool IsPeriphrasticSuperlative(std::string_view w) {
  return w == "most" || w == "least";
}

// Fallback noun lemma when no candidate is a lexicon entry.
std::string NounFallback(const std::string &w) {
  if (w.size() < 4 || w.back() != 's') return w;
  if (EndsWith(w, "ss") || EndsWith(w, "us") || EndsWith(w, "is")) return w;
  if (EndsWith(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "sses") || EndsWith(w, "xes") || EndsWith(w, "ches") ||
      EndsWith(w, "shes") || EndsWith(w, "zzes") || EndsWith(w, "uses")) {
    return w.substr(0, w.size() - 2);
  }
  return w.substr(0, w.size() - 1);
}

// Short consonant-vowel-consonant stems usually drop a silent e ("mak" ->
// "make", "stor" -> "store").
bool WantsSilentE(const std::string &stem) {
  std::size_t n = stem.size();
  if (n < 2 || n > 4) return false;
  char last = stem[n - 1];
  if (!IsConsonant(last) || last == 'w' || last == 'x' || last == 'y') {
    return false;
  }
  if (!IsVowel(stem[n - 2])) return false;
  return n == 2 || IsConsonant(stem[n - 3]);
}

std::string VerbFallback(const std::string &w) {
  auto from_stem = [](std::string stem) {
    if (EndsWithDoubledConsonant(stem) && !EndsWith(stem, "ll") &&
        !EndsWith(stem, "ss") && !EndsWith(stem, "zz") &&
        !EndsWith(stem, "ff")) {
      stem.pop_back();
      return stem;
    }
    if (WantsSilentE(stem)) stem.push_back('e');
    return stem;
  };
  if (EndsWith(w, "ing") && w.size() > 5) return from_stem(w.substr(0, w.size() - 3));
  if (EndsWith(w, "ied") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "eed")) return w.substr(0, w.size() - 1);
  if (EndsWith(w, "ed") && w.size() > 4) return from_stem(w.substr(0, w.size() - 2));
  if (EndsWith(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "sses") || EndsWith(w, "ches") || EndsWith(w, "shes") ||
      EndsWith(w, "xes") || EndsWith(w, "oes")) {
    return w.substr(0, w.size() - 2);
  }
  if (EndsWith(w, "s") && !EndsWith(w, "ss") && !EndsWith(w, "us") &&
      !EndsWith(w, "is") && w.size() > 3) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

}  // namespace

std::string Lemmatize(std::string_view token, PosTag pos,
                      const Lexicon &lexicon) {
  std::string w = LookupKey(token);
  if (w.empty()) return w;
  switch (pos) {
    case PosTag::kPunct:
    case PosTag::kNumber:
    case PosTag::kOther:
      return w;
    default:
      break;
  }
  if (const LexEntry *e = lexicon.FindEntry(w)) return e->lemma;
  if (const IrregularDegree *irr = lexicon.FindIrregularDegree(w)) {
    if (pos == PosTag::kAdjective || pos == PosTag::kAdverb) return irr->lemma;
  }
  switch (pos) {
    case PosTag::kAdjective:
    case PosTag::kAdverb: {
      DegreeAnalysis d = AnalyzeDegree(w, pos, std::nullopt, lexicon);
      return d.degree == Degree::kNone ? w : d.base_lemma;
    }
    case PosTag::kNoun: {
      for (const auto &c : internal::NounBaseCandidates(w)) {
        if (lexicon.FindEntry(c) != nullptr) return c;
      }
      return NounFallback(w);
    }
    case PosTag::kVerb: {
      for (const auto &c : internal::VerbBaseCandidates(w)) {
        const LexEntry *e = lexicon.FindEntry(c);
        if (e != nullptr && e->pos == PosTag::kVerb) return e->lemma;
      }
      return VerbFallback(w);
    }
    default:
      return w;
  }
}

DegreeAnalysis AnalyzeDegree(std::string_view token, PosTag pos,
                             std::optional<std::string_view> prev_token,
                             const Lexicon &lexicon) {
  std::string w = LookupKey(token);
  DegreeAnalysis result;
  result.base_lemma = w;
  if (pos != PosTag::kAdjective && pos != PosTag::kAdverb) return result;

  if (const IrregularDegree *irr = lexicon.FindIrregularDegree(w)) {
    result.degree = irr->degree;
    result.base_lemma = irr->lemma;
    return result;
  }
  if (prev_token) {
    std::string prev = LookupKey(*prev_token);
    Degree d = IsPeriphrasticComparative(prev)   ? Degree::kComparative
               : IsPeriphrasticSuperlative(prev) ? Degree::kSuperlative
                                                 : Degree::kNone;
    if (d != Degree::kNone) {
      result.degree = d;
      result.periphrastic = true;
      if (const LexEntry *e = lexicon.FindEntry(w)) result.base_lemma = e->lemma;
      return result;
    }
  }
  if (lexicon.IsGradableBase(w)) return result;
  if (auto regular = internal::DeflectRegular(w, lexicon)) {
    result.base_lemma = regular->first;
    result.degree = regular->second;
  }
  return result;
}

std::string Inflect(std::string_view base, Degree degree) {
  std::string b(base);
  if (degree == Degree::kNone || b.empty()) return b;
  const bool comparative = degree == Degree::kComparative;
  const std::size_t n = b.size();
  if (b.back() == 'e') return b + (comparative ? "r" : "st");
  if (n >= 2 && b.back() == 'y' && IsConsonant(b[n - 2])) {
    return b.substr(0, n - 1) + (comparative ? "ier" : "iest");
  }
  // Double the final consonant of one-syllable consonant-vowel-consonant
  // words: big -> bigger.
  int vowel_groups = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (IsVowel(b[i]) && (i == 0 || !IsVowel(b[i - 1]))) ++vowel_groups;
  }
  char last = b.back();
  if (vowel_groups == 1 && n >= 3 && IsConsonant(last) && last != 'w' &&
      last != 'x' && last != 'y' && IsVowel(b[n - 2]) && IsConsonant(b[n - 3])) {
    b.push_back(last);
  }
  return b + (comparative ? "er" : "est");
}

}  // namespace reqsmell::nlp
