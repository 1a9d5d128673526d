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
#include <cctype>
#include <cstdint>

#include "reqsmell/nlp.h"

namespace reqsmell::nlp {
namespace {

// Abbreviations whose final period neither ends a sentence nor splits off as
// punctuation. Stored without the final period.
constexpr std::array<std::string_view, 18> kAbbreviations = {
    "e.g", "i.e", "etc", "vs", "cf", "approx", "incl", "resp", "esp",
    "fig", "ca", "viz", "al", "mr", "mrs", "ms", "dr", "prof"};

bool IsAbbreviation(std::string_view word_without_dot) {
  std::string lower = ToLower(word_without_dot);
  for (auto a : kAbbreviations) {
    if (a == lower) return true;
  }
  return false;
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Decodes the code point at `pos`; returns {code point, byte length}. Input is
// valid UTF-8 for documents, but stay total on arbitrary bytes.
std::pair<std::uint32_t, std::size_t> DecodeAt(std::string_view s,
                                               std::size_t pos) {
  unsigned char c = static_cast<unsigned char>(s[pos]);
  std::size_t len = 1;
  std::uint32_t cp = c;
  if (c >= 0xF0) {
    len = 4;
    cp = c & 0x07;
  } else if (c >= 0xE0) {
    len = 3;
    cp = c & 0x0F;
  } else if (c >= 0xC0) {
    len = 2;
    cp = c & 0x1F;
  }
  if (pos + len > s.size()) return {c, 1};
  for (std::size_t k = 1; k < len; ++k) {
    cp = (cp << 6) | (static_cast<unsigned char>(s[pos + k]) & 0x3F);
  }
  return {cp, len};
}

bool IsPunctCodePoint(std::uint32_t cp) {
  if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
  switch (cp) {
    case 0x00AB: case 0x00BB: case 0x00B7:  // guillemets, middle dot
    case 0x2013: case 0x2014:               // dashes
    case 0x2018: case 0x2019: case 0x201A: case 0x201B:
    case 0x201C: case 0x201D: case 0x201E: case 0x201F:
    case 0x2022: case 0x2026:               // bullet, ellipsis
      return true;
    default:
      return false;
  }
}

// Length in bytes of the run of identical punctuation code points starting
// at `pos`, or 0 when `pos` is not punctuation.
std::size_t PunctRunAt(std::string_view s, std::size_t pos, std::size_t end) {
  auto [cp, len] = DecodeAt(s, pos);
  if (!IsPunctCodePoint(cp)) return 0;
  std::size_t run = len;
  while (pos + run < end) {
    auto [next, next_len] = DecodeAt(s, pos + run);
    if (next != cp) break;
    run += next_len;
  }
  return run;
}

// Start of the UTF-8 code point that ends right before `end`.
std::size_t PrevCodePointStart(std::string_view s, std::size_t end) {
  std::size_t p = end - 1;
  while (p > 0 && (static_cast<unsigned char>(s[p]) & 0xC0) == 0x80) --p;
  return p;
}

void TokenizeChunk(std::string_view text, std::size_t begin, std::size_t end,
                   std::vector<Token> &out) {
  auto emit = [&](std::size_t b, std::size_t e) {
    out.push_back({std::string(text.substr(b, e - b)), {b, e}});
  };
  // Leading punctuation runs.
  while (begin < end) {
    std::size_t run = PunctRunAt(text, begin, end);
    if (run == 0) break;
    emit(begin, begin + run);
    begin += run;
  }
  if (begin >= end) return;
  // Trailing punctuation runs, innermost last.
  std::vector<CharRange> trailing;
  while (end > begin) {
    std::size_t cp_start = PrevCodePointStart(text, end);
    auto [cp, len] = DecodeAt(text, cp_start);
    if (!IsPunctCodePoint(cp)) break;
    std::size_t run_start = cp_start;
    while (run_start > begin) {
      std::size_t prev = PrevCodePointStart(text, run_start);
      if (DecodeAt(text, prev).first != cp) break;
      run_start = prev;
    }
    trailing.push_back({run_start, end});
    end = run_start;
  }
  if (!trailing.empty() && end > begin) {
    const CharRange &inner = trailing.back();
    if (inner.size() == 1 && text[inner.begin] == '.' &&
        IsAbbreviation(text.substr(begin, end - begin))) {
      end = inner.end;
      trailing.pop_back();
    }
  }
  if (end > begin) emit(begin, end);
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
    emit(it->begin, it->end);
  }
}

bool StartsUppercase(std::string_view text, std::size_t pos) {
  // Allow an opening quote or bracket before the capital.
  while (pos < text.size() &&
         (text[pos] == '"' || text[pos] == '\'' || text[pos] == '(' ||
          text[pos] == '[')) {
    ++pos;
  }
  return pos < text.size() &&
         std::isupper(static_cast<unsigned char>(text[pos])) != 0;
}

// Word (without leading punctuation) that ends right before the period at
// `dot`.
std::string_view WordBefore(std::string_view text, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0 && !IsSpace(text[b - 1])) --b;
  while (b < dot && std::ispunct(static_cast<unsigned char>(text[b])) &&
         text[b] != '.') {
    ++b;
  }
  return text.substr(b, dot - b);
}

}  // namespace

std::string LookupKey(std::string_view surface) {
  std::string key = ToLower(surface);
  // U+2019 RIGHT SINGLE QUOTATION MARK -> '
  std::size_t pos;
  while ((pos = key.find("\xE2\x80\x99")) != std::string::npos) {
    key.replace(pos, 3, "'");
  }
  return key;
}

std::vector<CharRange> SplitSentences(std::string_view text) {
  std::vector<CharRange> sentences;
  const std::size_t n = text.size();
  std::size_t start = 0;
  auto push = [&](std::size_t b, std::size_t e) {
    CharRange r = TrimRange(text, {b, e});
    if (!r.empty()) sentences.push_back(r);
  };
  std::size_t i = 0;
  while (i < n) {
    char c = text[i];
    if (c == '\n') {
      std::size_t j = i + 1;
      while (j < n && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) {
        ++j;
      }
      if (j < n && text[j] == '\n') {
        push(start, i);
        start = j;
        i = j;
        continue;
      }
    } else if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i + 1;
      while (j < n && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
      while (j < n && (text[j] == '"' || text[j] == '\'' || text[j] == ')' ||
                       text[j] == ']')) {
        ++j;
      }
      std::size_t k = j;
      while (k < n && IsSpace(text[k])) ++k;
      bool split = false;
      if (k == n) {
        split = true;
      } else if (k > j && StartsUppercase(text, k)) {
        bool single_dot = c == '.' && j == i + 1;
        split = !(single_dot && IsAbbreviation(WordBefore(text, i)));
      }
      if (split) {
        push(start, j);
        start = j;
      }
      i = j;
      continue;
    }
    ++i;
  }
  push(start, n);
  return sentences;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && IsSpace(text[i])) ++i;
    std::size_t b = i;
    while (i < n && !IsSpace(text[i])) ++i;
    if (i > b) TokenizeChunk(text, b, i, tokens);
  }
  return tokens;
}

}  // namespace reqsmell::nlp
