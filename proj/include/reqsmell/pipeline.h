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

// Corpus loading and per-item analysis (annotate, detect, count words).

#ifndef REQSMELL_PIPELINE_H_
#define REQSMELL_PIPELINE_H_

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reqsmell/ingest.h"
#include "reqsmell/nlp.h"
#include "reqsmell/smells.h"

namespace reqsmell {

struct ItemResult {
  ingest::RequirementItem item;
  std::vector<smells::Finding> findings;
  std::size_t word_count = 0;
  // Role, feature and reason spans of a conformant user story.
  std::optional<ingest::UserStoryParts> story;
  // Words whose first byte lies in the role, feature, reason span.
  std::array<std::size_t, 3> story_part_words{};
};

// Thread-safe after construction.
class Analyzer {
 public:
  // Throws Error{kMissingDictionary, kInvalidArgument} as smells::Detect.
  Analyzer(const nlp::Lexicon &lexicon, smells::DictionarySet dictionaries,
           smells::DetectorConfig config);

  ItemResult AnalyzeItem(const ingest::RequirementItem &item) const;

  const nlp::Annotator &annotator() const { return annotator_; }
  const smells::DetectorConfig &config() const { return config_; }

 private:
  nlp::Annotator annotator_;
  smells::DictionarySet dictionaries_;
  smells::DetectorConfig config_;
};

// Reference implementation.
std::vector<ItemResult> AnalyzeItemsSerial(
    const Analyzer &analyzer, std::span<const ingest::RequirementItem> items);

// OpenMP over items; output identical to AnalyzeItemsSerial. `num_threads`
// <= 0 uses the OpenMP default.
std::vector<ItemResult> AnalyzeItemsParallel(
    const Analyzer &analyzer, std::span<const ingest::RequirementItem> items,
    int num_threads = 0);

struct CorpusOptions {
  std::optional<ingest::Format> format;
  std::optional<ingest::CsvConfig> csv;
  // Record per-file errors as warnings instead of throwing.
  bool skip_bad_files = false;
};

struct Corpus {
  std::vector<ingest::SourceDocument> documents;
  std::vector<ingest::RequirementItem> items;
  std::vector<std::string> warnings;
};

// Files are taken as given; directories are walked recursively for files
// with a known extension, in sorted order, with artifact ids relative to the
// directory. Throws Error{kIoError} for a missing input path.
Corpus LoadCorpus(const std::vector<std::filesystem::path> &inputs,
                  const CorpusOptions &options = {});

// Directory search order for data packs: explicit value, environment
// variable, then the compiled-in data directory.
std::filesystem::path ResolveDataDir(const std::string &explicit_dir,
                                     const char *env_var,
                                     std::string_view subdir);

}  // namespace reqsmell

#endif  // REQSMELL_PIPELINE_H_
