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

// Rule-based English annotation: sentence splitting, tokenization, part of
// speech tagging, lemmatization and comparison-degree analysis.
//
// All word classes, irregular forms and suffix rules come from a lexicon
// directory, so another language can be added as a data pack:
//
//   lexicon.tsv           surface<TAB>POS<TAB>lemma
//   pronouns.tsv          word<TAB>contextual|substituting|complementizer
//   determiners.txt       one word per line
//   negations.txt         one word per line
//   numbers.txt           one word per line
//   irregular_degrees.tsv form<TAB>lemma<TAB>comparative|superlative
//   suffix_rules.tsv      suffix<TAB>POS, first match wins
//   degree_stoplist.txt   words never read as -er/-est forms
//
// Lines starting with '#' are comments.

#ifndef REQSMELL_NLP_H_
#define REQSMELL_NLP_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "reqsmell/common.h"

namespace reqsmell::nlp {

enum class PosTag {
  kNoun,
  kVerb,
  kAdjective,
  kAdverb,
  kPronounSubstituting,
  kPronounAttributive,
  kDeterminer,
  kPreposition,
  kConjunction,
  kParticle,
  kNumber,
  kNegation,
  kPunct,
  kOther,
};

// Short names used in lexicon files: NOUN, VERB, ADJ, ADV, PRON_SUBST,
// PRON_ATTR, DET, PREP, CONJ, PART, NUM, NEG, PUNCT, OTHER.
std::string_view PosTagName(PosTag tag);
std::optional<PosTag> ParsePosTag(std::string_view name);

enum class Degree { kNone, kComparative, kSuperlative };

std::string_view DegreeName(Degree degree);

struct Token {
  std::string surface;
  CharRange char_range;
};

struct AnnotatedToken {
  std::string surface;
  CharRange char_range;
  int sentence_index = 0;
  PosTag pos = PosTag::kOther;
  std::string lemma;
  Degree degree = Degree::kNone;
  // Degree comes from a preceding "more"/"most"/"less"/"least".
  bool periphrastic = false;
};

enum class PronounMode {
  // Substituting unless a noun follows ("these" vs "these kids").
  kContextual,
  // Always stands in for a noun (personal and possessive pronouns).
  kSubstituting,
  // Contextual, but may also introduce a clause ("so that", "ensure that").
  kComplementizer,
};

struct LexEntry {
  PosTag pos;
  std::string lemma;
};

struct IrregularDegree {
  std::string lemma;
  Degree degree;
};

struct SuffixRule {
  std::string suffix;
  PosTag pos;
};

// Immutable after loading; safe to share across threads.
class Lexicon {
 public:
  // Throws Error{kIoError, kLexiconError}.
  static Lexicon LoadFromDirectory(const std::filesystem::path &dir);

  void AddEntry(std::string_view surface, PosTag pos, std::string_view lemma);
  void AddPronoun(std::string_view word, PronounMode mode);
  void AddDeterminer(std::string_view word);
  void AddNegation(std::string_view word);
  void AddNumberWord(std::string_view word);
  void AddIrregularDegree(std::string_view form, std::string_view lemma,
                          Degree degree);
  void AddSuffixRule(std::string_view suffix, PosTag pos);
  void AddDegreeStopword(std::string_view word);

  // Checks that closed classes are pairwise disjoint and irregular degrees
  // are comparative or superlative. Throws Error{kLexiconError}.
  void Validate() const;

  // All lookups take lowercase keys.
  const LexEntry *FindEntry(std::string_view word) const;
  std::optional<PronounMode> FindPronoun(std::string_view word) const;
  bool IsDeterminer(std::string_view word) const;
  bool IsNegation(std::string_view word) const;
  bool IsNumberWord(std::string_view word) const;
  const IrregularDegree *FindIrregularDegree(std::string_view word) const;
  bool IsDegreeStopword(std::string_view word) const;
  const std::vector<SuffixRule> &suffix_rules() const { return suffix_rules_; }

  // True for an adjective/adverb entry that is its own lemma.
  bool IsGradableBase(std::string_view word) const;

  std::size_t entry_count() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, LexEntry> entries_;
  std::unordered_map<std::string, PronounMode> pronouns_;
  std::unordered_set<std::string> determiners_;
  std::unordered_set<std::string> negations_;
  std::unordered_set<std::string> numbers_;
  std::unordered_map<std::string, IrregularDegree> irregular_degrees_;
  std::vector<SuffixRule> suffix_rules_;
  std::unordered_set<std::string> degree_stoplist_;
};

// Sentence ranges: disjoint, ordered, trimmed. Splits after . ! ? when
// followed by whitespace and an uppercase letter (or the end of the text),
// except after "e.g.", "i.e.", "etc." and similar; a blank line also ends a
// sentence.
std::vector<CharRange> SplitSentences(std::string_view text);

// Whitespace tokenization with leading/trailing punctuation split off.
// Hyphenated words, decimals and known abbreviations stay whole. Ranges are
// relative to `text`.
std::vector<Token> Tokenize(std::string_view text);

// Lowercases and maps typographic apostrophes to '\''.
std::string LookupKey(std::string_view surface);

// Pluggable tagger; RuleTagger is the lexicon-driven default.
class Tagger {
 public:
  virtual ~Tagger() = default;
  // Tags one sentence.
  virtual std::vector<PosTag> Tag(std::span<const Token> sentence) const = 0;
};

class RuleTagger : public Tagger {
 public:
  explicit RuleTagger(const Lexicon &lexicon) : lexicon_(lexicon) {}
  std::vector<PosTag> Tag(std::span<const Token> sentence) const override;

 private:
  const Lexicon &lexicon_;
};

// Lookup order: closed classes, entries, regular inflections of entries,
// suffix rules, then Noun for alphabetic tokens and Other for the rest.
// Contextual pronouns become attributive when the next non-punctuation token
// (skipping adjectives and numbers) is a noun.
std::vector<PosTag> TagTokens(std::span<const Token> sentence,
                              const Lexicon &lexicon);

std::string Lemmatize(std::string_view token, PosTag pos,
                      const Lexicon &lexicon);

struct DegreeAnalysis {
  Degree degree = Degree::kNone;
  std::string base_lemma;
  bool periphrastic = false;
};

// Irregular table first, then "more/most/less/least" before the token, then
// -er/-est with y->i, doubled consonant and silent-e reversal. A regular
// form only counts when its base is a gradable lexicon entry and the word is
// not on the degree stoplist.
DegreeAnalysis AnalyzeDegree(std::string_view token, PosTag pos,
                             std::optional<std::string_view> prev_token,
                             const Lexicon &lexicon);

// Regular -er/-est form of `base` (inverse of the suffix rules above).
std::string Inflect(std::string_view base, Degree degree);

class Annotator {
 public:
  // `tagger` defaults to a RuleTagger over `lexicon`. Both must outlive the
  // annotator.
  explicit Annotator(const Lexicon &lexicon, const Tagger *tagger = nullptr);

  // Ordered by char_range; ranges are relative to `text`.
  std::vector<AnnotatedToken> Annotate(std::string_view text) const;

  const Lexicon &lexicon() const { return lexicon_; }

 private:
  const Lexicon &lexicon_;
  RuleTagger default_tagger_;
  const Tagger *tagger_;
};

inline std::vector<AnnotatedToken> Annotate(std::string_view text,
                                            const Lexicon &lexicon) {
  return Annotator(lexicon).Annotate(text);
}

}  // namespace reqsmell::nlp

#endif  // REQSMELL_NLP_H_
