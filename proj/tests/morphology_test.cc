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

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "reqsmell/nlp.h"
#include "test_util.h"

namespace reqsmell::nlp {
namespace {

struct Forms {
  std::string base, comparative, superlative;
};

std::vector<Forms> LoadAdjectiveForms() {
  std::ifstream in(testing::TestDataDir() / "adjective_forms.tsv");
  std::vector<Forms> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    Forms f;
    std::getline(ss, f.base, '\t');
    std::getline(ss, f.comparative, '\t');
    std::getline(ss, f.superlative, '\t');
    out.push_back(f);
  }
  return out;
}

TEST(MorphologyTest, AdjectiveListIsLarge) {
  EXPECT_GE(LoadAdjectiveForms().size(), 200u);
}

TEST(MorphologyTest, InflectMatchesList) {
  for (const auto &f : LoadAdjectiveForms()) {
    EXPECT_EQ(Inflect(f.base, Degree::kComparative), f.comparative);
    EXPECT_EQ(Inflect(f.base, Degree::kSuperlative), f.superlative);
    EXPECT_EQ(Inflect(f.base, Degree::kNone), f.base);
  }
}

TEST(MorphologyTest, DeflectMatchesList) {
  const Lexicon &lex = testing::DefaultLexicon();
  for (const auto &f : LoadAdjectiveForms()) {
    auto c = AnalyzeDegree(f.comparative, PosTag::kAdjective, std::nullopt, lex);
    EXPECT_EQ(c.degree, Degree::kComparative) << f.comparative;
    EXPECT_EQ(c.base_lemma, f.base) << f.comparative;
    auto s = AnalyzeDegree(f.superlative, PosTag::kAdjective, std::nullopt, lex);
    EXPECT_EQ(s.degree, Degree::kSuperlative) << f.superlative;
    EXPECT_EQ(s.base_lemma, f.base) << f.superlative;
    auto b = AnalyzeDegree(f.base, PosTag::kAdjective, std::nullopt, lex);
    EXPECT_EQ(b.degree, Degree::kNone) << f.base;
  }
}

TEST(MorphologyTest, TaggerSeesInflectedFormsAsAdjectives) {
  const Lexicon &lex = testing::DefaultLexicon();
  for (const auto &f : LoadAdjectiveForms()) {
    auto tokens = Tokenize(f.superlative);
    EXPECT_EQ(TagTokens(tokens, lex)[0], PosTag::kAdjective) << f.superlative;
  }
}

TEST(MorphologyTest, Irregulars) {
  const Lexicon &lex = testing::DefaultLexicon();
  struct Case {
    const char *form, *lemma;
    Degree degree;
  } cases[] = {
      {"better", "good", Degree::kComparative},
      {"best", "good", Degree::kSuperlative},
      {"worse", "bad", Degree::kComparative},
      {"worst", "bad", Degree::kSuperlative},
      {"further", "far", Degree::kComparative},
      {"farthest", "far", Degree::kSuperlative},
      {"less", "little", Degree::kComparative},
      {"least", "little", Degree::kSuperlative},
      {"more", "much", Degree::kComparative},
      {"most", "much", Degree::kSuperlative},
  };
  for (const auto &c : cases) {
    auto tokens = Tokenize(c.form);
    PosTag pos = TagTokens(tokens, lex)[0];
    EXPECT_TRUE(pos == PosTag::kAdjective || pos == PosTag::kAdverb) << c.form;
    auto d = AnalyzeDegree(c.form, pos, std::nullopt, lex);
    EXPECT_EQ(d.degree, c.degree) << c.form;
    EXPECT_EQ(d.base_lemma, c.lemma) << c.form;
  }
}

TEST(MorphologyTest, StoplistBlocksDegree) {
  const Lexicon &lex = testing::DefaultLexicon();
  for (const char *w : {"user", "number", "under", "customer", "filter"}) {
    for (PosTag pos : {PosTag::kAdjective, PosTag::kNoun}) {
      EXPECT_EQ(AnalyzeDegree(w, pos, std::nullopt, lex).degree, Degree::kNone)
          << w;
    }
  }
  for (const auto &t : Annotate("The user enters a number under the limit.",
                                lex)) {
    EXPECT_EQ(t.degree, Degree::kNone) << t.surface;
  }
}

TEST(MorphologyTest, Periphrastic) {
  const Lexicon &lex = testing::DefaultLexicon();
  auto d = AnalyzeDegree("efficient", PosTag::kAdjective, "most", lex);
  EXPECT_EQ(d.degree, Degree::kSuperlative);
  EXPECT_TRUE(d.periphrastic);
  EXPECT_EQ(d.base_lemma, "efficient");
  d = AnalyzeDegree("reliable", PosTag::kAdjective, "less", lex);
  EXPECT_EQ(d.degree, Degree::kComparative);
  d = AnalyzeDegree("system", PosTag::kNoun, "more", lex);
  EXPECT_EQ(d.degree, Degree::kNone);
}

TEST(LemmatizeTest, Words) {
  const Lexicon &lex = testing::DefaultLexicon();
  EXPECT_EQ(Lemmatize("Kids", PosTag::kNoun, lex), "kid");
  EXPECT_EQ(Lemmatize("children", PosTag::kNoun, lex), "child");
  EXPECT_EQ(Lemmatize("boxes", PosTag::kNoun, lex), "box");
  EXPECT_EQ(Lemmatize("written", PosTag::kVerb, lex), "write");
  EXPECT_EQ(Lemmatize("is", PosTag::kVerb, lex), "be");
  EXPECT_EQ(Lemmatize("checked", PosTag::kVerb, lex), "check");
  EXPECT_EQ(Lemmatize("stopped", PosTag::kVerb, lex), "stop");
  EXPECT_EQ(Lemmatize("making", PosTag::kVerb, lex), "make");
  EXPECT_EQ(Lemmatize("frobbed", PosTag::kVerb, lex), "frob");
  EXPECT_EQ(Lemmatize("happier", PosTag::kAdjective, lex), "happy");
  EXPECT_EQ(Lemmatize("may", PosTag::kVerb, lex), "may");
  EXPECT_EQ(Lemmatize("Status", PosTag::kNoun, lex), "status");
  EXPECT_EQ(Lemmatize("42", PosTag::kNumber, lex), "42");
}

}  // namespace
}  // namespace reqsmell::nlp
