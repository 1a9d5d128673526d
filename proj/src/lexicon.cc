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

#include <fstream>
#include <sstream>

#include "reqsmell/nlp.h"

namespace reqsmell::nlp {
namespace {

struct PosName {
  PosTag tag;
  std::string_view name;
};

constexpr PosName kPosNames[] = {
    {PosTag::kNoun, "NOUN"},
    {PosTag::kVerb, "VERB"},
    {PosTag::kAdjective, "ADJ"},
    {PosTag::kAdverb, "ADV"},
    {PosTag::kPronounSubstituting, "PRON_SUBST"},
    {PosTag::kPronounAttributive, "PRON_ATTR"},
    {PosTag::kDeterminer, "DET"},
    {PosTag::kPreposition, "PREP"},
    {PosTag::kConjunction, "CONJ"},
    {PosTag::kParticle, "PART"},
    {PosTag::kNumber, "NUM"},
    {PosTag::kNegation, "NEG"},
    {PosTag::kPunct, "PUNCT"},
    {PosTag::kOther, "OTHER"},
};

// Yields (line number, tab-separated fields) for non-comment lines.
std::vector<std::pair<int, std::vector<std::string>>> ReadTable(
    const std::filesystem::path &file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + file.string());
  std::vector<std::pair<int, std::vector<std::string>>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view content = Trim(line);
    if (content.empty() || content.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = content.find('\t', start);
      fields.emplace_back(Trim(content.substr(
          start, tab == std::string_view::npos ? std::string_view::npos
                                               : tab - start)));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    rows.emplace_back(line_no, std::move(fields));
  }
  return rows;
}

[[noreturn]] void BadLine(const std::filesystem::path &file, int line,
                          const std::string &what) {
  throw Error(ErrorCode::kLexiconError, file.string() + ": " + what, line);
}

}  // namespace

std::string_view PosTagName(PosTag tag) {
  for (const auto &p : kPosNames) {
    if (p.tag == tag) return p.name;
  }
  return "OTHER";
}

std::optional<PosTag> ParsePosTag(std::string_view name) {
  for (const auto &p : kPosNames) {
    if (p.name == name) return p.tag;
  }
  return std::nullopt;
}

std::string_view DegreeName(Degree degree) {
  switch (degree) {
    case Degree::kNone: return "none";
    case Degree::kComparative: return "comparative";
    case Degree::kSuperlative: return "superlative";
  }
  return "none";
}

Lexicon Lexicon::LoadFromDirectory(const std::filesystem::path &dir) {
  Lexicon lex;
  {
    auto file = dir / "lexicon.tsv";
    for (const auto &[line, f] : ReadTable(file)) {
      if (f.size() != 3) BadLine(file, line, "expected surface, POS, lemma");
      auto pos = ParsePosTag(f[1]);
      if (!pos) BadLine(file, line, "unknown POS '" + f[1] + "'");
      lex.AddEntry(f[0], *pos, f[2]);
    }
  }
  {
    auto file = dir / "pronouns.tsv";
    for (const auto &[line, f] : ReadTable(file)) {
      if (f.size() != 2) BadLine(file, line, "expected word, mode");
      PronounMode mode;
      if (f[1] == "contextual") {
        mode = PronounMode::kContextual;
      } else if (f[1] == "substituting") {
        mode = PronounMode::kSubstituting;
      } else if (f[1] == "complementizer") {
        mode = PronounMode::kComplementizer;
      } else {
        BadLine(file, line, "unknown pronoun mode '" + f[1] + "'");
      }
      lex.AddPronoun(f[0], mode);
    }
  }
  for (const auto &[name, add] :
       std::initializer_list<
           std::pair<const char *, void (Lexicon::*)(std::string_view)>>{
           {"determiners.txt", &Lexicon::AddDeterminer},
           {"negations.txt", &Lexicon::AddNegation},
           {"numbers.txt", &Lexicon::AddNumberWord},
           {"degree_stoplist.txt", &Lexicon::AddDegreeStopword}}) {
    auto file = dir / name;
    for (const auto &[line, f] : ReadTable(file)) {
      if (f.size() != 1) BadLine(file, line, "expected one word");
      (lex.*add)(f[0]);
    }
  }
  {
    auto file = dir / "irregular_degrees.tsv";
    for (const auto &[line, f] : ReadTable(file)) {
      if (f.size() != 3) BadLine(file, line, "expected form, lemma, degree");
      Degree degree;
      if (f[2] == "comparative") {
        degree = Degree::kComparative;
      } else if (f[2] == "superlative") {
        degree = Degree::kSuperlative;
      } else {
        BadLine(file, line, "degree must be comparative or superlative");
      }
      lex.AddIrregularDegree(f[0], f[1], degree);
    }
  }
  {
    auto file = dir / "suffix_rules.tsv";
    for (const auto &[line, f] : ReadTable(file)) {
      if (f.size() != 2) BadLine(file, line, "expected suffix, POS");
      auto pos = ParsePosTag(f[1]);
      if (!pos) BadLine(file, line, "unknown POS '" + f[1] + "'");
      lex.AddSuffixRule(f[0], *pos);
    }
  }
  lex.Validate();
  return lex;
}

void Lexicon::AddEntry(std::string_view surface, PosTag pos,
                       std::string_view lemma) {
  entries_.insert_or_assign(LookupKey(surface), LexEntry{pos, ToLower(lemma)});
}

void Lexicon::AddPronoun(std::string_view word, PronounMode mode) {
  pronouns_.insert_or_assign(LookupKey(word), mode);
}

void Lexicon::AddDeterminer(std::string_view word) {
  determiners_.insert(LookupKey(word));
}

void Lexicon::AddNegation(std::string_view word) {
  negations_.insert(LookupKey(word));
}

void Lexicon::AddNumberWord(std::string_view word) {
  numbers_.insert(LookupKey(word));
}

void Lexicon::AddIrregularDegree(std::string_view form, std::string_view lemma,
                                 Degree degree) {
  irregular_degrees_.insert_or_assign(LookupKey(form),
                                      IrregularDegree{ToLower(lemma), degree});
}

void Lexicon::AddSuffixRule(std::string_view suffix, PosTag pos) {
  suffix_rules_.push_back({ToLower(suffix), pos});
}

void Lexicon::AddDegreeStopword(std::string_view word) {
  degree_stoplist_.insert(LookupKey(word));
}

void Lexicon::Validate() const {
  auto check = [](const auto &a, const char *an, const auto &b,
                  const char *bn) {
    for (const auto &item : a) {
      const std::string &word = [&]() -> const std::string & {
        if constexpr (requires { item.first; }) {
          return item.first;
        } else {
          return item;
        }
      }();
      if (b.count(word) > 0) {
        throw Error(ErrorCode::kLexiconError, "'" + word + "' is in both " +
                                                  an + " and " + bn);
      }
    }
  };
  check(pronouns_, "pronouns", determiners_, "determiners");
  check(pronouns_, "pronouns", negations_, "negations");
  check(pronouns_, "pronouns", numbers_, "numbers");
  check(determiners_, "determiners", negations_, "negations");
  check(determiners_, "determiners", numbers_, "numbers");
  check(negations_, "negations", numbers_, "numbers");
  for (const auto &[form, irr] : irregular_degrees_) {
    if (irr.degree == Degree::kNone || irr.lemma.empty()) {
      throw Error(ErrorCode::kLexiconError,
                  "irregular degree '" + form + "' needs a lemma and degree");
    }
  }
  for (const auto &[surface, entry] : entries_) {
    if (entry.lemma.empty()) {
      throw Error(ErrorCode::kLexiconError, "empty lemma for '" + surface + "'");
    }
  }
}

const LexEntry *Lexicon::FindEntry(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<PronounMode> Lexicon::FindPronoun(std::string_view word) const {
  auto it = pronouns_.find(std::string(word));
  if (it == pronouns_.end()) return std::nullopt;
  return it->second;
}

bool Lexicon::IsDeterminer(std::string_view word) const {
  return determiners_.count(std::string(word)) > 0;
}

bool Lexicon::IsNegation(std::string_view word) const {
  return negations_.count(std::string(word)) > 0;
}

bool Lexicon::IsNumberWord(std::string_view word) const {
  return numbers_.count(std::string(word)) > 0;
}

const IrregularDegree *Lexicon::FindIrregularDegree(
    std::string_view word) const {
  auto it = irregular_degrees_.find(std::string(word));
  return it == irregular_degrees_.end() ? nullptr : &it->second;
}

bool Lexicon::IsDegreeStopword(std::string_view word) const {
  return degree_stoplist_.count(std::string(word)) > 0;
}

bool Lexicon::IsGradableBase(std::string_view word) const {
  const LexEntry *e = FindEntry(word);
  return e != nullptr &&
         (e->pos == PosTag::kAdjective || e->pos == PosTag::kAdverb) &&
         e->lemma == word;
}

}  // namespace reqsmell::nlp
