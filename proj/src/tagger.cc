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

#include <cctype>

#include "morphology_internal.h"
#include "reqsmell/nlp.h"

namespace reqsmell::nlp {
namespace {

bool IsAllPunct(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      if (!std::ispunct(c)) return false;
    } else {
      // General punctuation block, guillemets, middle dot.
      if (c == 0xE2 && i + 2 < s.size() &&
          static_cast<unsigned char>(s[i + 1]) == 0x80) {
        i += 2;
        continue;
      }
      if (c == 0xC2 && i + 1 < s.size()) {
        unsigned char d = static_cast<unsigned char>(s[i + 1]);
        if (d == 0xAB || d == 0xBB || d == 0xB7) {
          ++i;
          continue;
        }
      }
      return false;
    }
  }
  return !s.empty();
}

bool HasLetter(std::string_view s) {
  for (unsigned char c : s) {
    if (std::isalpha(c) || c >= 0x80) return true;
  }
  return false;
}

std::optional<PosTag> InflectionTag(const std::string &w,
                                    const Lexicon &lexicon) {
  if (auto deflected = internal::DeflectRegular(w, lexicon)) {
    return lexicon.FindEntry(deflected->first)->pos;
  }
  for (const auto &c : internal::NounBaseCandidates(w)) {
    const LexEntry *e = lexicon.FindEntry(c);
    if (e != nullptr && e->pos == PosTag::kNoun) return PosTag::kNoun;
  }
  for (const auto &c : internal::VerbBaseCandidates(w)) {
    const LexEntry *e = lexicon.FindEntry(c);
    if (e != nullptr && e->pos == PosTag::kVerb) return PosTag::kVerb;
  }
  for (const auto &c : internal::AdverbBaseCandidates(w)) {
    const LexEntry *e = lexicon.FindEntry(c);
    if (e != nullptr && e->pos == PosTag::kAdjective) return PosTag::kAdverb;
  }
  return std::nullopt;
}

struct BaseTag {
  PosTag tag;
  std::optional<PronounMode> pronoun;
};

BaseTag TagOne(const Token &token, const Lexicon &lexicon) {
  const std::string &s = token.surface;
  if (IsAllPunct(s)) return {PosTag::kPunct, std::nullopt};
  if (std::isdigit(static_cast<unsigned char>(s[0])) ||
      (s.size() > 1 && (s[0] == '+' || s[0] == '-') &&
       std::isdigit(static_cast<unsigned char>(s[1])))) {
    return {PosTag::kNumber, std::nullopt};
  }
  std::string key = LookupKey(s);
  if (auto mode = lexicon.FindPronoun(key)) {
    return {PosTag::kPronounSubstituting, mode};
  }
  if (lexicon.IsNegation(key)) return {PosTag::kNegation, std::nullopt};
  if (lexicon.IsDeterminer(key)) return {PosTag::kDeterminer, std::nullopt};
  if (lexicon.IsNumberWord(key)) return {PosTag::kNumber, std::nullopt};
  if (const LexEntry *e = lexicon.FindEntry(key)) return {e->pos, std::nullopt};
  if (const IrregularDegree *irr = lexicon.FindIrregularDegree(key)) {
    const LexEntry *base = lexicon.FindEntry(irr->lemma);
    PosTag tag = base != nullptr && base->pos == PosTag::kAdverb
                     ? PosTag::kAdverb
                     : PosTag::kAdjective;
    return {tag, std::nullopt};
  }
  if (auto tag = InflectionTag(key, lexicon)) return {*tag, std::nullopt};
  for (const SuffixRule &rule : lexicon.suffix_rules()) {
    if (key.size() >= rule.suffix.size() + 3 &&
        internal::EndsWith(key, rule.suffix)) {
      return {rule.pos, std::nullopt};
    }
  }
  return {HasLetter(s) ? PosTag::kNoun : PosTag::kOther, std::nullopt};
}

bool IsPronounTag(PosTag t) {
  return t == PosTag::kPronounSubstituting || t == PosTag::kPronounAttributive;
}

}  // namespace

std::vector<PosTag> TagTokens(std::span<const Token> sentence,
                              const Lexicon &lexicon) {
  const std::size_t n = sentence.size();
  std::vector<BaseTag> base;
  base.reserve(n);
  for (const Token &t : sentence) base.push_back(TagOne(t, lexicon));

  std::vector<PosTag> tags(n);
  for (std::size_t i = 0; i < n; ++i) tags[i] = base[i].tag;

  auto next_content = [&](std::size_t i) -> std::optional<std::size_t> {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (tags[j] != PosTag::kPunct) return j;
    }
    return std::nullopt;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (!base[i].pronoun) continue;
    PronounMode mode = *base[i].pronoun;
    if (mode == PronounMode::kSubstituting) continue;
    std::optional<std::size_t> next = next_content(i);

    if (mode == PronounMode::kComplementizer) {
      std::string prev = i > 0 ? LookupKey(sentence[i - 1].surface) : "";
      bool comma_follows = i + 1 < n && sentence[i + 1].surface == ",";
      bool clause_follows =
          next && (IsPronounTag(tags[*next]) ||
                   tags[*next] == PosTag::kDeterminer ||
                   tags[*next] == PosTag::kNegation);
      bool after_verb = i > 0 && tags[i - 1] == PosTag::kVerb && next &&
                        tags[*next] != PosTag::kVerb &&
                        tags[*next] != PosTag::kNoun &&
                        tags[*next] != PosTag::kAdjective;
      if (prev == "so" || prev == "such" || comma_follows || clause_follows ||
          after_verb) {
        tags[i] = PosTag::kConjunction;
        continue;
      }
    }

    std::optional<std::size_t> j = next;
    while (j && (tags[*j] == PosTag::kAdjective ||
                 tags[*j] == PosTag::kAdverb || tags[*j] == PosTag::kNumber)) {
      j = next_content(*j);
    }
    tags[i] = j && tags[*j] == PosTag::kNoun ? PosTag::kPronounAttributive
                                             : PosTag::kPronounSubstituting;
  }
  return tags;
}

std::vector<PosTag> RuleTagger::Tag(std::span<const Token> sentence) const {
  return TagTokens(sentence, lexicon_);
}

Annotator::Annotator(const Lexicon &lexicon, const Tagger *tagger)
    : lexicon_(lexicon),
      default_tagger_(lexicon),
      tagger_(tagger != nullptr ? tagger : &default_tagger_) {}

std::vector<AnnotatedToken> Annotator::Annotate(std::string_view text) const {
  std::vector<AnnotatedToken> out;
  std::vector<CharRange> sentences = SplitSentences(text);
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const CharRange &range = sentences[s];
    std::vector<Token> tokens = Tokenize(range.Slice(text));
    for (Token &t : tokens) {
      t.char_range.begin += range.begin;
      t.char_range.end += range.begin;
    }
    std::vector<PosTag> tags = tagger_->Tag(tokens);
    const std::size_t first = out.size();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      AnnotatedToken a;
      a.surface = std::move(tokens[i].surface);
      a.char_range = tokens[i].char_range;
      a.sentence_index = static_cast<int>(s);
      a.pos = tags[i];
      std::optional<std::string_view> prev;
      if (i > 0 && tags[i - 1] != PosTag::kPunct) {
        prev = out[first + i - 1].surface;
      }
      DegreeAnalysis d = AnalyzeDegree(a.surface, a.pos, prev, lexicon_);
      a.degree = d.degree;
      a.periphrastic = d.periphrastic;
      a.lemma = d.degree != Degree::kNone
                    ? d.base_lemma
                    : Lemmatize(a.surface, a.pos, lexicon_);
      if (d.periphrastic) {
        AnnotatedToken &aux = out[first + i - 1];
        aux.degree = Degree::kNone;
        aux.lemma = LookupKey(aux.surface);
      }
      if (a.lemma.empty()) a.lemma = LookupKey(a.surface);
      out.push_back(std::move(a));
    }
  }
  return out;
}

}  // namespace reqsmell::nlp
