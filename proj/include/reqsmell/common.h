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

#ifndef REQSMELL_COMMON_H_
#define REQSMELL_COMMON_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reqsmell {

// Half-open byte range [begin, end) into a UTF-8 string.
struct CharRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin >= end; }
  bool Contains(std::size_t pos) const { return pos >= begin && pos < end; }
  bool Intersects(const CharRange &other) const {
    return begin < other.end && other.begin < end;
  }
  std::string_view Slice(std::string_view text) const {
    return text.substr(begin, end - begin);
  }

  friend bool operator==(const CharRange &, const CharRange &) = default;
  friend auto operator<=>(const CharRange &, const CharRange &) = default;
};

enum class ErrorCode {
  kIoError,
  kEncodingError,
  kUnknownFormat,
  kCsvColumnMissing,
  kJsonShapeError,
  kMissingDictionary,
  kInvalidCounts,
  kEmptyInput,
  kInvalidArgument,
  kLexiconError,
  kNotFound,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library errors. `line` is set for errors that point into a line-based
// input file (1-based).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message,
        std::optional<int> line = std::nullopt);

  ErrorCode code() const { return code_; }
  std::optional<int> line() const { return line_; }

 private:
  ErrorCode code_;
  std::optional<int> line_;
};

// ASCII lowercase; bytes >= 0x80 pass through unchanged.
std::string ToLower(std::string_view s);

// Trims ASCII whitespace from both ends.
std::string_view Trim(std::string_view s);

// Returns the range of `s` inside [range] after trimming whitespace.
CharRange TrimRange(std::string_view text, CharRange range);

bool IsValidUtf8(std::string_view s);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string Fnv1aHex(std::string_view data);

}  // namespace reqsmell

#endif  // REQSMELL_COMMON_H_
