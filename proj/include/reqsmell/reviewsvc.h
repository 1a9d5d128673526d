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

// Run storage for analysis results and review verdicts, and the JSON HTTP API
// over it.
//
// Layout of a run directory:
//   runs/<run_id>/run.json               run header (inputs, config, times)
//   runs/<run_id>/items.jsonl            one item per line
//   runs/<run_id>/findings.jsonl         one finding per line
//   runs/<run_id>/metrics.jsonl          one ArtifactMetrics per line
//   runs/<run_id>/reviews.jsonl          append-only review log
//   runs/<run_id>/reviews.snapshot.json  compacted review state

#ifndef REQSMELL_REVIEWSVC_H_
#define REQSMELL_REVIEWSVC_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "reqsmell/ingest.h"
#include "reqsmell/metrics.h"
#include "reqsmell/pipeline.h"
#include "reqsmell/smells.h"

namespace reqsmell::review {

enum class ReviewStatus { kOpen, kAccepted, kRejected, kCustom };

std::string_view ReviewStatusName(ReviewStatus status);
std::optional<ReviewStatus> ParseReviewStatus(std::string_view name);

struct ReviewRecord {
  std::string finding_id;
  ReviewStatus status = ReviewStatus::kOpen;
  // Set only for kCustom.
  std::string label;
  std::optional<std::string> comment;
  // UTC, "YYYY-MM-DDTHH:MM:SSZ".
  std::string updated_at;
  std::optional<std::string> reviewer;

  friend bool operator==(const ReviewRecord &, const ReviewRecord &) = default;
};

nlohmann::json ToJson(const ReviewRecord &record);
// Throws Error{kJsonShapeError}.
ReviewRecord ReviewRecordFromJson(const nlohmann::json &j);

// Parses a review request body {status, label, comment, reviewer}. Throws
// Error{kInvalidArgument} for an unknown status or a malformed field.
ReviewRecord ParseReviewBody(const nlohmann::json &body,
                             std::string finding_id);

std::string NowUtc();

struct StoredItem {
  ingest::RequirementItem item;
  std::size_t word_count = 0;
};

nlohmann::json ToJson(const StoredItem &item);
StoredItem StoredItemFromJson(const nlohmann::json &j);

struct ListingFilter {
  bool include_rejected = false;
  bool include_suppressed = false;
  // Empty means all smells.
  std::set<smells::SmellKind> smells;
};

// One analysis run. Item, finding and metrics data are immutable once
// opened; review state is guarded and safe to use from many threads.
class Run {
 public:
  // Loads a run directory. Throws Error{kIoError, kJsonShapeError}.
  static std::unique_ptr<Run> Open(const std::filesystem::path &dir);

  const std::string &id() const { return id_; }
  const std::filesystem::path &dir() const { return dir_; }
  const nlohmann::json &header() const { return header_; }
  const std::vector<StoredItem> &items() const { return items_; }
  const std::vector<smells::Finding> &findings() const { return findings_; }
  const std::vector<metrics::ArtifactMetrics> &artifacts() const {
    return artifacts_;
  }
  const metrics::TreemapNode &treemap() const { return treemap_; }

  const smells::Finding *FindFinding(std::string_view finding_id) const;
  bool HasArtifact(std::string_view artifact_id) const;
  // Items of `artifact_id` in document order.
  std::vector<const StoredItem *> ItemsOf(std::string_view artifact_id) const;
  // Findings of one item, in detection order.
  std::vector<const smells::Finding *> FindingsOf(const StoredItem &item) const;

  std::optional<ReviewRecord> Review(std::string_view finding_id) const;
  std::map<std::string, ReviewRecord> Reviews() const;
  // Finding ids with status Rejected.
  std::set<std::string> Blacklist() const;
  // True when the default listing under `filter` shows the finding.
  bool Visible(const smells::Finding &finding,
               const ListingFilter &filter) const;

  // Appends to the log and updates the state. Throws Error{kNotFound} for an
  // unknown finding id, Error{kIoError} when the log cannot be written.
  ReviewRecord PutReview(ReviewRecord record);
  // Writes the snapshot through a temporary file and rename.
  void Compact();

  static constexpr int kCompactEvery = 64;

 private:
  Run() = default;
  void LoadReviews();

  std::string id_;
  std::filesystem::path dir_;
  nlohmann::json header_;
  std::vector<StoredItem> items_;
  std::vector<smells::Finding> findings_;
  std::vector<metrics::ArtifactMetrics> artifacts_;
  metrics::TreemapNode treemap_;
  std::map<std::string, std::size_t, std::less<>> finding_index_;
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>>
      item_findings_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> artifact_items_;

  mutable std::shared_mutex reviews_mu_;
  std::map<std::string, ReviewRecord> reviews_;
  std::uintmax_t log_size_ = 0;
  int appends_since_compact_ = 0;
};

struct AnalyzeRequest {
  std::vector<std::filesystem::path> inputs;
  CorpusOptions corpus;
  int jobs = 0;
};

// Directory of runs named r1, r2, ...
class RunRepository {
 public:
  explicit RunRepository(std::filesystem::path root);

  const std::filesystem::path &root() const { return root_; }

  // Analyzes the inputs into a new run and returns its id. Unreadable files
  // become warnings in run.json. Review records of the latest earlier run
  // carry over for findings with the same id.
  std::string AnalyzeAndStore(const Analyzer &analyzer,
                              const AnalyzeRequest &request);

  // Run ids in numeric order.
  std::vector<std::string> ListRuns() const;
  // Opens on first use. nullptr when the run does not exist.
  Run *Get(std::string_view run_id);

 private:
  std::filesystem::path root_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<Run>, std::less<>> open_runs_;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  // 0 picks a free port.
  int port = 8080;
  // Adds CORS headers for this origin when set.
  std::optional<std::string> cors_origin;
  // Served at "/" when set.
  std::optional<std::filesystem::path> static_dir;
};

// HTTP API under /api/v1.
class ApiServer {
 public:
  ApiServer(RunRepository &repository, ServerOptions options);
  ~ApiServer();

  // Binds the socket and returns the port. Throws Error{kIoError} when the
  // address is in use.
  int Bind();
  // Serves until Stop(). Requires Bind().
  void Listen();
  void Stop();
  // Blocks until the server accepts connections.
  void WaitUntilReady();

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace reqsmell::review

#endif  // REQSMELL_REVIEWSVC_H_
