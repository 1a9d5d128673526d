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

#include "reqsmell/pipeline.h"

#include <omp.h>

#include <algorithm>
#include <cstdlib>

#include "reqsmell/metrics.h"

namespace reqsmell {
namespace {

namespace fs = std::filesystem;

void LoadInto(Corpus &corpus, const fs::path &file, const fs::path &root,
              const CorpusOptions &options) {
  try {
    ingest::SourceDocument doc = ingest::LoadDocument(file, options.format, root);
    std::vector<ingest::RequirementItem> items = ingest::Segment(doc, options.csv);
    std::move(items.begin(), items.end(), std::back_inserter(corpus.items));
    corpus.documents.push_back(std::move(doc));
  } catch (const Error &e) {
    if (!options.skip_bad_files) throw;
    corpus.warnings.push_back(file.string() + ": " + e.what());
  }
}

}  // namespace

Analyzer::Analyzer(const nlp::Lexicon &lexicon,
                   smells::DictionarySet dictionaries,
                   smells::DetectorConfig config)
    : annotator_(lexicon),
      dictionaries_(std::move(dictionaries)),
      config_(std::move(config)) {
  smells::CheckDictionaries(config_, dictionaries_);
}

ItemResult Analyzer::AnalyzeItem(const ingest::RequirementItem &item) const {
  ItemResult result;
  result.item = item;
  std::vector<nlp::AnnotatedToken> tokens = annotator_.Annotate(item.text);
  ingest::UserStoryParts parts = ingest::SplitUserStory(item.text);
  smells::ItemContext context{item.artifact_id, item.item_id, item.text,
                              parts.conformant};
  result.findings = smells::Detect(tokens, config_, dictionaries_, context);
  result.word_count = metrics::CountWords(tokens);
  if (parts.conformant) {
    for (const auto &t : tokens) {
      if (!metrics::IsWord(t.surface)) continue;
      metrics::StoryPart part = metrics::PartOf(t.char_range.begin, parts);
      if (part != metrics::StoryPart::kUnassigned) {
        ++result.story_part_words[static_cast<int>(part)];
      }
    }
    result.story = parts;
  }
  return result;
}

std::vector<ItemResult> AnalyzeItemsSerial(
    const Analyzer &analyzer, std::span<const ingest::RequirementItem> items) {
  std::vector<ItemResult> results;
  results.reserve(items.size());
  for (const auto &item : items) results.push_back(analyzer.AnalyzeItem(item));
  return results;
}

std::vector<ItemResult> AnalyzeItemsParallel(
    const Analyzer &analyzer, std::span<const ingest::RequirementItem> items,
    int num_threads) {
  std::vector<ItemResult> results(items.size());
  const long n = static_cast<long>(items.size());
  const int threads = num_threads > 0 ? num_threads : omp_get_max_threads();
  std::vector<std::exception_ptr> errors(items.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    try {
      results[i] = analyzer.AnalyzeItem(items[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

Corpus LoadCorpus(const std::vector<fs::path> &inputs,
                  const CorpusOptions &options) {
  Corpus corpus;
  for (const fs::path &input : inputs) {
    std::error_code ec;
    if (fs::is_directory(input, ec)) {
      std::vector<fs::path> files;
      for (auto it = fs::recursive_directory_iterator(input, ec);
           !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (!it->is_regular_file()) continue;
        if (options.format || ingest::FormatFromExtension(it->path())) {
          files.push_back(it->path());
        }
      }
      if (ec) {
        throw Error(ErrorCode::kIoError,
                    "cannot walk " + input.string() + ": " + ec.message());
      }
      std::sort(files.begin(), files.end());
      for (const auto &f : files) LoadInto(corpus, f, input, options);
    } else if (fs::exists(input, ec)) {
      LoadInto(corpus, input, input.parent_path(), options);
    } else {
      throw Error(ErrorCode::kIoError, "no such file or directory: " +
                                           input.string());
    }
  }
  return corpus;
}

fs::path ResolveDataDir(const std::string &explicit_dir, const char *env_var,
                        std::string_view subdir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char *env = std::getenv(env_var); env != nullptr && *env != '\0') {
    return env;
  }
  return fs::path(REQSMELL_DATA_DIR) / subdir;
}

}  // namespace reqsmell
