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

#include "reqsmell/ingest.h"

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace reqsmell::ingest {
namespace {

using ::testing::ElementsAre;
using ::testing::Field;

std::vector<std::string> Ids(const std::vector<RequirementItem> &items) {
  std::vector<std::string> ids;
  for (const auto &i : items) ids.push_back(i.item_id);
  return ids;
}

void ExpectRangesMatchText(const SourceDocument &doc,
                           const std::vector<RequirementItem> &items) {
  for (const auto &item : items) {
    EXPECT_EQ(item.char_range.Slice(doc.raw_text), item.text) << item.item_id;
  }
}

TEST(FormatTest, NamesAndExtensions) {
  EXPECT_EQ(ParseFormat("MD"), Format::kMarkdown);
  EXPECT_EQ(ParseFormat("text"), Format::kPlainText);
  EXPECT_EQ(ParseFormat("xml"), std::nullopt);
  EXPECT_EQ(FormatFromExtension("a/b.jsonl"), Format::kJsonLines);
  EXPECT_EQ(FormatFromExtension("a/b.CSV"), Format::kCsv);
  EXPECT_EQ(FormatFromExtension("a/b.docx"), std::nullopt);
  EXPECT_EQ(FormatName(Format::kCsv), "csv");
}

TEST(SegmentTest, PlainTextBlocks) {
  auto doc = MakeDocument("a.txt", Format::kPlainText,
                          "First requirement.\nStill first.\n\n\n  Second.\n");
  auto items = Segment(doc);
  ASSERT_EQ(items.size(), 2u);
  EXPECT_THAT(Ids(items), ElementsAre("1", "2"));
  EXPECT_EQ(items[0].text, "First requirement.\nStill first.");
  EXPECT_EQ(items[1].text, "Second.");
  EXPECT_EQ(items[0].kind, ItemKind::kFreeText);
  ExpectRangesMatchText(doc, items);
}

TEST(SegmentTest, StripsByteOrderMark) {
  auto doc = MakeDocument("a.txt", Format::kPlainText, "\xEF\xBB\xBFHello.");
  EXPECT_EQ(doc.raw_text, "Hello.");
}

TEST(SegmentTest, RejectsInvalidUtf8) {
  try {
    MakeDocument("a.txt", Format::kPlainText, "bad \xFF byte");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEncodingError);
  }
}

TEST(SegmentTest, MarkdownSections) {
  auto doc = MakeDocument("reqs.md", Format::kMarkdown,
                          "Intro text.\n\n# Login\nThe user logs in.\n\n"
                          "## Logout ##\nThe user logs out.\n# Empty\n");
  auto items = Segment(doc);
  EXPECT_THAT(Ids(items), ElementsAre("0", "1:Login", "2:Logout"));
  EXPECT_EQ(items[1].text, "The user logs in.");
  EXPECT_EQ(items[1].kind, ItemKind::kSectionedText);
  ExpectRangesMatchText(doc, items);
}

TEST(SegmentTest, CsvRowsWithQuotes) {
  std::string csv =
      "ID,Text,Prio\n"
      "R1,The system must log in.,high\n"
      "R2,\"Multi\nline, with comma\",low\n"
      "R3,\"He said \"\"hi\"\"\",low\n"
      ",No id here.,low\n"
      "R5,,low\n";
  auto doc = MakeDocument("reqs.csv", Format::kCsv, csv);
  auto items = Segment(doc);
  EXPECT_THAT(Ids(items), ElementsAre("R1", "R2", "R3", "row4"));
  EXPECT_EQ(items[1].text, "Multi\nline, with comma");
  EXPECT_EQ(items[2].text, "He said \"hi\"");
  EXPECT_EQ(items[2].char_range.Slice(doc.raw_text), "He said \"\"hi\"\"");
  EXPECT_EQ(items[0].char_range.Slice(doc.raw_text), items[0].text);
  EXPECT_EQ(items[0].kind, ItemKind::kCsvRow);
}

TEST(SegmentTest, CsvCustomColumnsAndMissingColumn) {
  auto doc = MakeDocument("r.csv", Format::kCsv, "Key;Body\n");
  EXPECT_THROW(
      {
        try {
          Segment(doc);
        } catch (const Error &e) {
          EXPECT_EQ(e.code(), ErrorCode::kCsvColumnMissing);
          throw;
        }
      },
      Error);
  auto doc2 = MakeDocument("r.csv", Format::kCsv, "Key,Body\nK1,Text one.\n");
  auto items = Segment(doc2, CsvConfig{"Key", "Body"});
  EXPECT_THAT(Ids(items), ElementsAre("K1"));
}

TEST(SegmentTest, JsonLines) {
  std::string jsonl =
      "{\"artifact\":\"A\",\"item_id\":\"1\",\"text\":\"One.\"}\n"
      "\n"
      "{\"artifact\":\"A\",\"item_id\":\"1\",\"text\":\"Two.\"}\n";
  auto doc = MakeDocument("x.jsonl", Format::kJsonLines, jsonl);
  auto items = Segment(doc);
  EXPECT_THAT(Ids(items), ElementsAre("1", "1~2"));
  EXPECT_EQ(items[0].artifact_id, "A");
  EXPECT_EQ(items[1].text, "Two.");
  EXPECT_EQ(items[1].char_range.Slice(doc.raw_text).front(), '{');
}

TEST(SegmentTest, JsonLinesShapeErrorsCarryLine) {
  for (std::string bad : {"[1,2]", "{\"artifact\":\"A\",\"text\":\"t\"}",
                          "{not json", "{\"artifact\":1,\"item_id\":\"1\","
                                       "\"text\":\"t\"}"}) {
    auto doc = MakeDocument("x.jsonl", Format::kJsonLines,
                            "{\"artifact\":\"A\",\"item_id\":\"1\",\"text\":"
                            "\"ok\"}\n" +
                                bad + "\n");
    try {
      Segment(doc);
      FAIL() << bad;
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::kJsonShapeError) << bad;
      EXPECT_EQ(e.line(), 2) << bad;
    }
  }
}

TEST(LoadDocumentTest, ArtifactIdRelativeToRoot) {
  testing::TempDir dir;
  testing::WriteFile(dir.path() / "TeamA" / "Proj" / "a.md", "# H\nText.\n");
  auto doc = LoadDocument(dir.path() / "TeamA" / "Proj" / "a.md", std::nullopt,
                          dir.path());
  EXPECT_EQ(doc.artifact_id, "TeamA/Proj/a.md");
  EXPECT_THAT(doc.folder_path, ElementsAre("TeamA", "Proj"));
  EXPECT_EQ(doc.format, Format::kMarkdown);
}

TEST(LoadDocumentTest, Errors) {
  testing::TempDir dir;
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::kNotFound;
  };
  EXPECT_EQ(code_of([&] { LoadDocument(dir.path() / "missing.txt"); }),
            ErrorCode::kIoError);
  EXPECT_EQ(code_of([&] { LoadDocument(dir.path(), Format::kPlainText); }),
            ErrorCode::kIoError);
  testing::WriteFile(dir.path() / "x.docx", "x");
  EXPECT_EQ(code_of([&] { LoadDocument(dir.path() / "x.docx"); }),
            ErrorCode::kUnknownFormat);
  EXPECT_NO_THROW(LoadDocument(dir.path() / "x.docx", Format::kPlainText));
}

TEST(UserStoryTest, SplitsParts) {
  std::string s =
      "As a data analyst, I want to filter reports, so that I save time.";
  auto parts = SplitUserStory(s);
  ASSERT_TRUE(parts.conformant);
  EXPECT_EQ(parts.role->Slice(s), "data analyst");
  EXPECT_EQ(parts.feature->Slice(s), "to filter reports");
  EXPECT_EQ(parts.reason->Slice(s), "I save time.");
}

TEST(UserStoryTest, NoReasonAndNoArticle) {
  std::string s = "as Admin I want to delete users";
  auto parts = SplitUserStory(s);
  ASSERT_TRUE(parts.conformant);
  EXPECT_EQ(parts.role->Slice(s), "Admin");
  EXPECT_EQ(parts.feature->Slice(s), "to delete users");
  EXPECT_FALSE(parts.reason.has_value());
}

TEST(UserStoryTest, NonConformant) {
  std::string s = "  The system must log all errors. ";
  auto parts = SplitUserStory(s);
  EXPECT_FALSE(parts.conformant);
  EXPECT_FALSE(parts.role.has_value());
  EXPECT_EQ(parts.feature->Slice(s), "The system must log all errors.");
}

TEST(UserStoryTest, SegmentMarksStories) {
  auto doc = MakeDocument(
      "s.txt", Format::kPlainText,
      "As a user, I want to log in.\n\nThe system must be fast.\n");
  auto items = Segment(doc);
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0].kind, ItemKind::kUserStory);
  EXPECT_EQ(items[1].kind, ItemKind::kFreeText);
}

TEST(UserStoryTest, LongInputDoesNotBlowUp) {
  std::string s = "As a user I want " + std::string(200000, 'x') + " so that y";
  auto parts = SplitUserStory(s);
  EXPECT_TRUE(parts.conformant);
  EXPECT_EQ(parts.reason->Slice(s), "y");
}

TEST(CsvTest, RandomRoundTrip) {
  std::mt19937 rng(7);
  const std::string alphabet = "ab ,\"\n";
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<std::vector<std::string>> table;
    std::string csv;
    int rows = 1 + rng() % 4;
    for (int r = 0; r < rows; ++r) {
      std::vector<std::string> row;
      for (int c = 0; c < 3; ++c) {
        std::string v;
        int len = 1 + rng() % 5;
        for (int k = 0; k < len; ++k) v += alphabet[rng() % alphabet.size()];
        row.push_back(v);
        std::string escaped;
        for (char ch : v) escaped += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        csv += (c ? "," : "") + ("\"" + escaped + "\"");
      }
      csv += "\r\n";
      table.push_back(row);
    }
    auto parsed = ParseCsv(csv);
    ASSERT_EQ(parsed.size(), table.size()) << csv;
    for (std::size_t r = 0; r < table.size(); ++r) {
      ASSERT_EQ(parsed[r].size(), 3u);
      for (int c = 0; c < 3; ++c) {
        EXPECT_EQ(parsed[r][c].value, table[r][c]);
        EXPECT_TRUE(parsed[r][c].quoted);
      }
    }
  }
}

}  // namespace
}  // namespace reqsmell::ingest
