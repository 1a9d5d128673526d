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

// Loading requirements artifacts and cutting them into addressable items.

#ifndef REQSMELL_INGEST_H_
#define REQSMELL_INGEST_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reqsmell/common.h"

namespace reqsmell::ingest {

enum class Format { kPlainText, kMarkdown, kCsv, kJsonLines };

std::string_view FormatName(Format format);

// Accepts "txt", "text", "md", "markdown", "csv", "jsonl" (case-insensitive).
std::optional<Format> ParseFormat(std::string_view name);

// .txt, .md, .csv, .jsonl; nullopt otherwise.
std::optional<Format> FormatFromExtension(const std::filesystem::path &path);

struct CsvConfig {
  std::string id_column = "ID";
  std::string text_column = "Text";
};

struct SourceDocument {
  std::string path;
  Format format = Format::kPlainText;
  // UTF-8, byte-order mark removed.
  std::string raw_text;
  // Directory components of the artifact path, outermost first.
  std::vector<std::string> folder_path;
  // Path relative to the corpus root with '/' separators.
  std::string artifact_id;
};

enum class ItemKind { kFreeText, kSectionedText, kCsvRow, kUserStory };

std::string_view ItemKindName(ItemKind kind);
std::optional<ItemKind> ParseItemKind(std::string_view name);

struct RequirementItem {
  std::string item_id;
  std::string artifact_id;
  std::string text;
  // Range in SourceDocument::raw_text. `text` equals that slice, except for
  // quoted CSV cells with "" escapes (range is the raw cell content) and
  // JSON-lines items (range is the whole source line).
  CharRange char_range;
  ItemKind kind = ItemKind::kFreeText;
};

// Reads `path`. Without `hint` the format comes from the extension. When
// `root` is given, artifact_id and folder_path are taken relative to it.
// Throws Error{kIoError, kEncodingError, kUnknownFormat}.
SourceDocument LoadDocument(const std::filesystem::path &path,
                            std::optional<Format> hint = std::nullopt,
                            const std::filesystem::path &root = {});

// Same as LoadDocument but from memory; used by tests and the JSON API.
SourceDocument MakeDocument(std::string path, Format format,
                            std::string raw_text);

// PlainText: one item per blank-line separated block.
// Markdown: one item per heading-delimited section; item_id is
//   "<index>:<heading>", text before the first heading becomes item "0".
// Csv: one item per data row, item_id from the id column.
// JsonLines: one item per {"artifact","item_id","text"} object.
// Items with blank text are skipped. Duplicate item ids within an artifact
// get "~2", "~3", ... suffixes.
// Throws Error{kCsvColumnMissing, kJsonShapeError}.
std::vector<RequirementItem> Segment(
    const SourceDocument &doc,
    const std::optional<CsvConfig> &csv_config = std::nullopt);

// Role / feature / reason split of a Connextra story
// ("As a <role>, I want <feature>, so that <reason>"). Spans are relative to
// the text handed in.
struct UserStoryParts {
  std::optional<CharRange> role;
  std::optional<CharRange> feature;
  std::optional<CharRange> reason;
  bool conformant = false;
};

UserStoryParts SplitUserStory(std::string_view text);

inline UserStoryParts SplitUserStory(const RequirementItem &item) {
  return SplitUserStory(item.text);
}

// One parsed RFC-4180 cell: unescaped value plus the raw byte range of its
// content (inside the quotes for quoted cells).
struct CsvCell {
  std::string value;
  CharRange raw;
  bool quoted = false;
  bool had_escapes = false;
};

std::vector<std::vector<CsvCell>> ParseCsv(std::string_view text);

}  // namespace reqsmell::ingest

#endif  // REQSMELL_INGEST_H_
