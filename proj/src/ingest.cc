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

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace reqsmell::ingest {
namespace {

bool IsBlankLine(std::string_view line) { return Trim(line).empty(); }

// Calls fn(line_range) for every line; ranges exclude the line terminator.
template <typename Fn>
void ForEachLine(std::string_view text, Fn &&fn) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::size_t content_end = end;
    if (content_end > pos && text[content_end - 1] == '\r') --content_end;
    fn(CharRange{pos, content_end});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

ItemKind KindFor(std::string_view text, ItemKind fallback) {
  return SplitUserStory(text).conformant ? ItemKind::kUserStory : fallback;
}

void AddItem(std::vector<RequirementItem> &items, const std::string &artifact,
             std::string item_id, std::string_view doc_text, CharRange range,
             ItemKind kind) {
  range = TrimRange(doc_text, range);
  if (range.empty()) return;
  RequirementItem item;
  item.item_id = std::move(item_id);
  item.artifact_id = artifact;
  item.text = std::string(range.Slice(doc_text));
  item.char_range = range;
  item.kind = KindFor(item.text, kind);
  items.push_back(std::move(item));
}

std::vector<RequirementItem> SegmentPlainText(const SourceDocument &doc) {
  std::vector<RequirementItem> items;
  std::string_view text = doc.raw_text;
  std::optional<CharRange> block;
  int index = 0;
  auto flush = [&] {
    if (block) {
      AddItem(items, doc.artifact_id, std::to_string(++index), text, *block,
              ItemKind::kFreeText);
      block.reset();
    }
  };
  ForEachLine(text, [&](CharRange line) {
    if (IsBlankLine(line.Slice(text))) {
      flush();
    } else if (block) {
      block->end = line.end;
    } else {
      block = line;
    }
  });
  flush();
  return items;
}

// "## Title ##" -> "Title"; nullopt for non-heading lines.
std::optional<std::string> HeadingText(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && i < 3 && line[i] == ' ') ++i;
  std::size_t hashes = 0;
  while (i + hashes < line.size() && line[i + hashes] == '#') ++hashes;
  if (hashes == 0 || hashes > 6) return std::nullopt;
  std::size_t rest = i + hashes;
  if (rest < line.size() && line[rest] != ' ' && line[rest] != '\t') {
    return std::nullopt;
  }
  std::string_view title = Trim(line.substr(rest));
  while (!title.empty() && title.back() == '#') title.remove_suffix(1);
  return std::string(Trim(title));
}

std::vector<RequirementItem> SegmentMarkdown(const SourceDocument &doc) {
  std::vector<RequirementItem> items;
  std::string_view text = doc.raw_text;
  std::string current_id = "0";
  std::optional<CharRange> body;
  int index = 0;
  auto flush = [&] {
    if (body) {
      AddItem(items, doc.artifact_id, current_id, text, *body,
              ItemKind::kSectionedText);
      body.reset();
    }
  };
  ForEachLine(text, [&](CharRange line) {
    if (auto heading = HeadingText(line.Slice(text))) {
      flush();
      current_id = std::to_string(++index) + ":" + *heading;
      return;
    }
    if (body) {
      body->end = line.end;
    } else if (!IsBlankLine(line.Slice(text))) {
      body = line;
    }
  });
  flush();
  return items;
}

std::vector<RequirementItem> SegmentCsv(const SourceDocument &doc,
                                        const CsvConfig &config) {
  auto rows = ParseCsv(doc.raw_text);
  if (rows.empty()) return {};
  const auto &header = rows.front();
  auto find_column = [&](const std::string &name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (Trim(header[i].value) == Trim(name)) return i;
    }
    throw Error(ErrorCode::kCsvColumnMissing,
                "column '" + name + "' not found in " + doc.path);
  };
  const std::size_t id_col = find_column(config.id_column);
  const std::size_t text_col = find_column(config.text_column);

  std::vector<RequirementItem> items;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto &row = rows[r];
    if (text_col >= row.size()) continue;
    const CsvCell &cell = row[text_col];
    std::string_view value = Trim(cell.value);
    if (value.empty()) continue;
    std::string id =
        id_col < row.size() ? std::string(Trim(row[id_col].value)) : "";
    if (id.empty()) id = "row" + std::to_string(r);

    RequirementItem item;
    item.item_id = std::move(id);
    item.artifact_id = doc.artifact_id;
    item.text = std::string(value);
    item.char_range = cell.had_escapes
                          ? cell.raw
                          : TrimRange(doc.raw_text, cell.raw);
    item.kind = KindFor(item.text, ItemKind::kCsvRow);
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<RequirementItem> SegmentJsonLines(const SourceDocument &doc) {
  std::vector<RequirementItem> items;
  std::string_view text = doc.raw_text;
  int line_no = 0;
  ForEachLine(text, [&](CharRange line) {
    ++line_no;
    std::string_view content = line.Slice(text);
    if (IsBlankLine(content)) return;
    nlohmann::json obj = nlohmann::json::parse(content, nullptr, false);
    if (obj.is_discarded()) {
      throw Error(ErrorCode::kJsonShapeError, "malformed JSON in " + doc.path,
                  line_no);
    }
    if (!obj.is_object()) {
      throw Error(ErrorCode::kJsonShapeError,
                  "expected an object in " + doc.path, line_no);
    }
    for (const char *key : {"artifact", "item_id", "text"}) {
      auto it = obj.find(key);
      if (it == obj.end() || !it->is_string()) {
        throw Error(ErrorCode::kJsonShapeError,
                    std::string("missing string key '") + key + "' in " +
                        doc.path,
                    line_no);
      }
    }
    std::string item_text = obj["text"].get<std::string>();
    if (Trim(item_text).empty()) return;
    RequirementItem item;
    item.artifact_id = obj["artifact"].get<std::string>();
    item.item_id = obj["item_id"].get<std::string>();
    item.text = std::string(Trim(item_text));
    item.char_range = line;
    item.kind = KindFor(item.text, ItemKind::kFreeText);
    items.push_back(std::move(item));
  });
  return items;
}

void MakeIdsUnique(std::vector<RequirementItem> &items) {
  std::map<std::pair<std::string, std::string>, int> seen;
  for (auto &item : items) {
    int n = ++seen[{item.artifact_id, item.item_id}];
    if (n > 1) {
      std::string candidate;
      do {
        candidate = item.item_id + "~" + std::to_string(n++);
      } while (seen.count({item.artifact_id, candidate}) > 0);
      seen[{item.artifact_id, candidate}] = 1;
      item.item_id = candidate;
    }
  }
}

bool StartsWithWordCi(std::string_view text, std::size_t pos,
                      std::string_view word) {
  if (pos + word.size() > text.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) != word[i]) {
      return false;
    }
  }
  std::size_t after = pos + word.size();
  bool boundary_after =
      after == text.size() ||
      !std::isalnum(static_cast<unsigned char>(text[after]));
  bool boundary_before =
      pos == 0 || !std::isalnum(static_cast<unsigned char>(text[pos - 1]));
  return boundary_after && boundary_before;
}

std::size_t SkipSpace(std::string_view text, std::size_t pos) {
  while (pos < text.size() &&
         std::isspace(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
  return pos;
}

// Matches `first` <space>+ `second` at pos; returns the end offset.
std::optional<std::size_t> MatchTwoWords(std::string_view text,
                                         std::size_t pos,
                                         std::string_view first,
                                         std::string_view second) {
  if (!StartsWithWordCi(text, pos, first)) return std::nullopt;
  std::size_t next = SkipSpace(text, pos + first.size());
  if (next == pos + first.size()) return std::nullopt;
  if (!StartsWithWordCi(text, next, second)) return std::nullopt;
  return next + second.size();
}

// Trims whitespace and trailing commas.
CharRange TidySpan(std::string_view text, CharRange range) {
  range = TrimRange(text, range);
  while (!range.empty() && text[range.end - 1] == ',') {
    --range.end;
    range = TrimRange(text, range);
  }
  return range;
}

}  // namespace

std::string_view FormatName(Format format) {
  switch (format) {
    case Format::kPlainText: return "txt";
    case Format::kMarkdown: return "md";
    case Format::kCsv: return "csv";
    case Format::kJsonLines: return "jsonl";
  }
  return "txt";
}

std::optional<Format> ParseFormat(std::string_view name) {
  std::string n = ToLower(name);
  if (n == "txt" || n == "text" || n == "plain") return Format::kPlainText;
  if (n == "md" || n == "markdown") return Format::kMarkdown;
  if (n == "csv") return Format::kCsv;
  if (n == "jsonl" || n == "jsonlines") return Format::kJsonLines;
  return std::nullopt;
}

std::optional<Format> FormatFromExtension(const std::filesystem::path &path) {
  std::string ext = ToLower(path.extension().string());
  if (ext == ".txt") return Format::kPlainText;
  if (ext == ".md") return Format::kMarkdown;
  if (ext == ".csv") return Format::kCsv;
  if (ext == ".jsonl") return Format::kJsonLines;
  return std::nullopt;
}

std::string_view ItemKindName(ItemKind kind) {
  switch (kind) {
    case ItemKind::kFreeText: return "FreeText";
    case ItemKind::kSectionedText: return "SectionedText";
    case ItemKind::kCsvRow: return "CsvRow";
    case ItemKind::kUserStory: return "UserStory";
  }
  return "FreeText";
}

std::optional<ItemKind> ParseItemKind(std::string_view name) {
  for (ItemKind k : {ItemKind::kFreeText, ItemKind::kSectionedText,
                     ItemKind::kCsvRow, ItemKind::kUserStory}) {
    if (ItemKindName(k) == name) return k;
  }
  return std::nullopt;
}

SourceDocument MakeDocument(std::string path, Format format,
                            std::string raw_text) {
  if (raw_text.size() >= 3 && raw_text.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    raw_text.erase(0, 3);
  }
  if (!IsValidUtf8(raw_text)) {
    throw Error(ErrorCode::kEncodingError, path + " is not valid UTF-8");
  }
  SourceDocument doc;
  std::filesystem::path p(path);
  for (const auto &part : p.parent_path()) {
    std::string s = part.string();
    if (s.empty() || s == "/" || s == "." || part == p.root_name()) continue;
    doc.folder_path.push_back(s);
  }
  doc.artifact_id = p.generic_string();
  doc.path = std::move(path);
  doc.format = format;
  doc.raw_text = std::move(raw_text);
  return doc;
}

SourceDocument LoadDocument(const std::filesystem::path &path,
                            std::optional<Format> hint,
                            const std::filesystem::path &root) {
  std::optional<Format> format = hint ? hint : FormatFromExtension(path);
  if (!format) {
    throw Error(ErrorCode::kUnknownFormat,
                "cannot infer format of " + path.string());
  }
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    throw Error(ErrorCode::kIoError, path.string() + " is a directory");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed: " + path.string());

  std::filesystem::path relative =
      root.empty() ? path : path.lexically_relative(root);
  if (relative.empty()) relative = path.filename();
  SourceDocument doc =
      MakeDocument(relative.generic_string(), *format, buf.str());
  doc.path = path.string();
  return doc;
}

std::vector<RequirementItem> Segment(const SourceDocument &doc,
                                     const std::optional<CsvConfig> &csv_config) {
  std::vector<RequirementItem> items;
  switch (doc.format) {
    case Format::kPlainText:
      items = SegmentPlainText(doc);
      break;
    case Format::kMarkdown:
      items = SegmentMarkdown(doc);
      break;
    case Format::kCsv:
      items = SegmentCsv(doc, csv_config.value_or(CsvConfig{}));
      break;
    case Format::kJsonLines:
      items = SegmentJsonLines(doc);
      break;
  }
  MakeIdsUnique(items);
  return items;
}

std::vector<std::vector<CsvCell>> ParseCsv(std::string_view text) {
  std::vector<std::vector<CsvCell>> rows;
  std::vector<CsvCell> row;
  std::size_t i = 0;
  const std::size_t n = text.size();
  if (n == 0) return rows;
  while (true) {
    CsvCell cell;
    if (i < n && text[i] == '"') {
      cell.quoted = true;
      std::size_t start = ++i;
      while (i < n) {
        if (text[i] == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            cell.value.push_back('"');
            cell.had_escapes = true;
            i += 2;
            continue;
          }
          break;
        }
        cell.value.push_back(text[i++]);
      }
      cell.raw = {start, i};
      if (i < n) ++i;  // closing quote
      // Tolerate junk between the closing quote and the delimiter.
      while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
        cell.value.push_back(text[i++]);
      }
    } else {
      std::size_t start = i;
      while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') ++i;
      cell.raw = {start, i};
      cell.value = std::string(text.substr(start, i - start));
    }
    row.push_back(std::move(cell));
    if (i >= n) {
      rows.push_back(std::move(row));
      break;
    }
    if (text[i] == ',') {
      ++i;
      continue;
    }
    // Record terminator: \n or \r\n.
    if (text[i] == '\r') ++i;
    if (i < n && text[i] == '\n') ++i;
    rows.push_back(std::move(row));
    row.clear();
    if (i >= n) break;
  }
  // Drop records that consist of a single empty unquoted cell (blank lines).
  std::erase_if(rows, [](const std::vector<CsvCell> &r) {
    return r.size() == 1 && !r[0].quoted && Trim(r[0].value).empty();
  });
  return rows;
}

UserStoryParts SplitUserStory(std::string_view text) {
  UserStoryParts parts;
  auto non_conformant = [&] {
    UserStoryParts p;
    CharRange whole = TrimRange(text, {0, text.size()});
    if (!whole.empty()) p.feature = whole;
    return p;
  };

  std::size_t pos = SkipSpace(text, 0);
  if (!StartsWithWordCi(text, pos, "as")) return non_conformant();
  pos = SkipSpace(text, pos + 2);
  std::size_t role_start = pos;
  for (std::string_view article : {"an", "a"}) {
    if (StartsWithWordCi(text, pos, article)) {
      role_start = SkipSpace(text, pos + article.size());
      break;
    }
  }

  // First "I want" after the role.
  std::optional<std::size_t> want_end;
  std::size_t want_pos = 0;
  for (std::size_t p = role_start; p < text.size(); ++p) {
    if (auto end = MatchTwoWords(text, p, "i", "want")) {
      want_end = end;
      want_pos = p;
      break;
    }
  }
  if (!want_end) return non_conformant();
  CharRange role = TidySpan(text, {role_start, want_pos});
  if (role.empty()) return non_conformant();

  std::size_t feature_start = SkipSpace(text, *want_end);
  if (feature_start < text.size() && text[feature_start] == ',') {
    feature_start = SkipSpace(text, feature_start + 1);
  }

  std::optional<std::size_t> so_pos;
  std::size_t so_end = 0;
  for (std::size_t p = feature_start; p < text.size(); ++p) {
    if (auto end = MatchTwoWords(text, p, "so", "that")) {
      so_pos = p;
      so_end = *end;
      break;
    }
  }

  CharRange feature =
      TidySpan(text, {feature_start, so_pos ? *so_pos : text.size()});
  if (feature.empty()) return non_conformant();

  parts.conformant = true;
  parts.role = role;
  parts.feature = feature;
  if (so_pos) {
    CharRange reason = TrimRange(text, {so_end, text.size()});
    if (!reason.empty()) parts.reason = reason;
  }
  return parts;
}

}  // namespace reqsmell::ingest
