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

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "reqsmell/reviewsvc.h"

namespace reqsmell::review {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char *kRunHeader = "run.json";
constexpr const char *kItemsFile = "items.jsonl";
constexpr const char *kFindingsFile = "findings.jsonl";
constexpr const char *kMetricsFile = "metrics.jsonl";
constexpr const char *kReviewLog = "reviews.jsonl";
constexpr const char *kSnapshot = "reviews.snapshot.json";

[[noreturn]] void ShapeError(const std::string &what,
                             std::optional<int> line = std::nullopt) {
  throw Error(ErrorCode::kJsonShapeError, what, line);
}

std::string ReadAll(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteAll(const fs::path &path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

// Writes `data` to a sibling temporary file, syncs it and renames it over
// `path`.
void WriteAtomically(const fs::path &path, std::string_view data) {
  fs::path tmp = path;
  tmp += ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
  std::size_t done = 0;
  while (done < data.size()) {
    ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n <= 0) {
      ::close(fd);
      throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    }
    done += static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot rename " + tmp.string());
}

// Parses every complete line of a JSON-lines file. Blank lines are skipped.
template <typename T, typename Parse>
std::vector<T> ReadJsonLines(const fs::path &path, Parse parse) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::vector<T> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      ShapeError(path.string() + ": invalid JSON", line_no);
    }
    try {
      out.push_back(parse(j));
    } catch (const Error &e) {
      ShapeError(path.string() + ": " + e.what(), line_no);
    } catch (const json::exception &e) {
      ShapeError(path.string() + ": " + e.what(), line_no);
    }
  }
  return out;
}

template <typename T>
std::string ToJsonLines(const std::vector<T> &values) {
  std::string out;
  for (const auto &v : values) {
    out += ToJson(v).dump();
    out += '\n';
  }
  return out;
}

json OptionalString(const std::optional<std::string> &s) {
  return s ? json(*s) : json(nullptr);
}

std::optional<std::string> ReadOptionalString(const json &j, const char *key,
                                              bool strict) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    std::string what = std::string("'") + key + "' must be a string or null";
    if (strict) throw Error(ErrorCode::kInvalidArgument, what);
    ShapeError(what);
  }
  return it->get<std::string>();
}

// "r12" -> 12, anything else -> nullopt.
std::optional<int> RunNumber(std::string_view name) {
  if (name.size() < 2 || name[0] != 'r') return std::nullopt;
  int n = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), n);
  if (ec != std::errc() || ptr != name.data() + name.size() || n <= 0) {
    return std::nullopt;
  }
  return n;
}

}  // namespace

std::string_view ReviewStatusName(ReviewStatus status) {
  switch (status) {
    case ReviewStatus::kOpen: return "open";
    case ReviewStatus::kAccepted: return "accepted";
    case ReviewStatus::kRejected: return "rejected";
    case ReviewStatus::kCustom: return "custom";
  }
  return "open";
}

std::optional<ReviewStatus> ParseReviewStatus(std::string_view name) {
  for (auto s : {ReviewStatus::kOpen, ReviewStatus::kAccepted,
                 ReviewStatus::kRejected, ReviewStatus::kCustom}) {
    if (ReviewStatusName(s) == name) return s;
  }
  return std::nullopt;
}

json ToJson(const ReviewRecord &r) {
  json j = {{"finding_id", r.finding_id},
            {"status", ReviewStatusName(r.status)}};
  j["label"] = r.status == ReviewStatus::kCustom ? json(r.label) : json(nullptr);
  j["comment"] = OptionalString(r.comment);
  j["reviewer"] = OptionalString(r.reviewer);
  j["updated_at"] = r.updated_at;
  return j;
}

ReviewRecord ReviewRecordFromJson(const json &j) {
  if (!j.is_object()) ShapeError("review record must be an object");
  ReviewRecord r;
  if (!j.contains("finding_id") || !j["finding_id"].is_string()) {
    ShapeError("review record needs a string finding_id");
  }
  r.finding_id = j["finding_id"].get<std::string>();
  if (!j.contains("status") || !j["status"].is_string()) {
    ShapeError("review record needs a string status");
  }
  auto status = ParseReviewStatus(j["status"].get<std::string>());
  if (!status) ShapeError("unknown review status");
  r.status = *status;
  if (r.status == ReviewStatus::kCustom) {
    r.label = ReadOptionalString(j, "label", false).value_or("");
  }
  r.comment = ReadOptionalString(j, "comment", false);
  r.reviewer = ReadOptionalString(j, "reviewer", false);
  r.updated_at = ReadOptionalString(j, "updated_at", false).value_or("");
  return r;
}

ReviewRecord ParseReviewBody(const json &body, std::string finding_id) {
  if (!body.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "body must be a JSON object");
  }
  auto it = body.find("status");
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorCode::kInvalidArgument, "'status' must be a string");
  }
  auto status = ParseReviewStatus(it->get<std::string>());
  if (!status) {
    throw Error(ErrorCode::kInvalidArgument,
                "'status' must be open, accepted, rejected or custom");
  }
  ReviewRecord r;
  r.finding_id = std::move(finding_id);
  r.status = *status;
  auto label = ReadOptionalString(body, "label", true);
  if (r.status == ReviewStatus::kCustom) {
    if (!label || Trim(*label).empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "custom status needs a non-empty 'label'");
    }
    r.label = *label;
  } else if (label) {
    throw Error(ErrorCode::kInvalidArgument,
                "'label' is only allowed with status custom");
  }
  r.comment = ReadOptionalString(body, "comment", true);
  r.reviewer = ReadOptionalString(body, "reviewer", true);
  return r;
}

std::string NowUtc() {
  std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json ToJson(const StoredItem &s) {
  const auto &i = s.item;
  return {{"artifact_id", i.artifact_id},
          {"item_id", i.item_id},
          {"kind", ingest::ItemKindName(i.kind)},
          {"char_range", {i.char_range.begin, i.char_range.end}},
          {"text", i.text},
          {"word_count", s.word_count}};
}

StoredItem StoredItemFromJson(const json &j) {
  if (!j.is_object()) ShapeError("item must be an object");
  StoredItem s;
  try {
    s.item.artifact_id = j.at("artifact_id").get<std::string>();
    s.item.item_id = j.at("item_id").get<std::string>();
    s.item.text = j.at("text").get<std::string>();
    const json &range = j.at("char_range");
    if (!range.is_array() || range.size() != 2) {
      ShapeError("char_range must be [begin, end]");
    }
    s.item.char_range = {range[0].get<std::size_t>(),
                         range[1].get<std::size_t>()};
    auto kind = ingest::ParseItemKind(j.at("kind").get<std::string>());
    if (!kind) ShapeError("unknown item kind");
    s.item.kind = *kind;
    s.word_count = j.at("word_count").get<std::size_t>();
  } catch (const json::exception &e) {
    ShapeError(std::string("item: ") + e.what());
  }
  return s;
}

std::unique_ptr<Run> Run::Open(const fs::path &dir) {
  std::unique_ptr<Run> run(new Run());
  run->dir_ = dir;
  run->id_ = dir.filename().string();
  run->header_ = json::parse(ReadAll(dir / kRunHeader), nullptr, false);
  if (run->header_.is_discarded() || !run->header_.is_object()) {
    ShapeError((dir / kRunHeader).string() + ": invalid run header");
  }
  run->items_ = ReadJsonLines<StoredItem>(dir / kItemsFile, StoredItemFromJson);
  run->findings_ = ReadJsonLines<smells::Finding>(dir / kFindingsFile,
                                                  smells::FindingFromJson);
  run->artifacts_ = ReadJsonLines<metrics::ArtifactMetrics>(
      dir / kMetricsFile, metrics::ArtifactMetricsFromJson);
  run->treemap_ = metrics::BuildTreemap(run->artifacts_);
  for (std::size_t i = 0; i < run->items_.size(); ++i) {
    run->artifact_items_[run->items_[i].item.artifact_id].push_back(i);
  }
  for (std::size_t i = 0; i < run->findings_.size(); ++i) {
    const auto &f = run->findings_[i];
    run->finding_index_.emplace(f.finding_id, i);
    run->item_findings_[{f.artifact_id, f.item_id}].push_back(i);
  }
  run->LoadReviews();
  return run;
}

void Run::LoadReviews() {
  std::uintmax_t offset = 0;
  if (fs::exists(dir_ / kSnapshot)) {
    json snap = json::parse(ReadAll(dir_ / kSnapshot), nullptr, false);
    if (snap.is_discarded() || !snap.is_object() ||
        !snap.contains("log_offset") || !snap["log_offset"].is_number_unsigned() ||
        !snap.contains("records") || !snap["records"].is_array()) {
      ShapeError((dir_ / kSnapshot).string() + ": invalid snapshot");
    }
    offset = snap["log_offset"].get<std::uintmax_t>();
    for (const auto &r : snap["records"]) {
      ReviewRecord rec = ReviewRecordFromJson(r);
      reviews_[rec.finding_id] = std::move(rec);
    }
  }
  log_size_ = offset;
  if (!fs::exists(dir_ / kReviewLog)) return;
  std::string log = ReadAll(dir_ / kReviewLog);
  if (offset > log.size()) {
    ShapeError((dir_ / kSnapshot).string() + ": offset beyond review log");
  }
  int line_no = static_cast<int>(
      std::count(log.begin(), log.begin() + offset, '\n'));
  std::size_t pos = offset;
  while (true) {
    std::size_t nl = log.find('\n', pos);
    // A trailing line without newline is an interrupted write.
    if (nl == std::string::npos) break;
    ++line_no;
    std::string_view line(log.data() + pos, nl - pos);
    pos = nl + 1;
    if (!Trim(line).empty()) {
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded()) {
        ShapeError((dir_ / kReviewLog).string() + ": invalid JSON", line_no);
      }
      try {
        ReviewRecord rec = ReviewRecordFromJson(j);
        reviews_[rec.finding_id] = std::move(rec);
      } catch (const Error &e) {
        ShapeError((dir_ / kReviewLog).string() + ": " + e.what(), line_no);
      }
    }
    log_size_ = pos;
  }
}

const smells::Finding *Run::FindFinding(std::string_view finding_id) const {
  auto it = finding_index_.find(finding_id);
  return it == finding_index_.end() ? nullptr : &findings_[it->second];
}

bool Run::HasArtifact(std::string_view artifact_id) const {
  if (artifact_items_.find(artifact_id) != artifact_items_.end()) return true;
  return std::any_of(artifacts_.begin(), artifacts_.end(), [&](const auto &a) {
    return a.artifact_id == artifact_id;
  });
}

std::vector<const StoredItem *> Run::ItemsOf(
    std::string_view artifact_id) const {
  std::vector<const StoredItem *> out;
  auto it = artifact_items_.find(artifact_id);
  if (it == artifact_items_.end()) return out;
  for (std::size_t i : it->second) out.push_back(&items_[i]);
  return out;
}

std::vector<const smells::Finding *> Run::FindingsOf(
    const StoredItem &item) const {
  std::vector<const smells::Finding *> out;
  auto it = item_findings_.find({item.item.artifact_id, item.item.item_id});
  if (it == item_findings_.end()) return out;
  for (std::size_t i : it->second) out.push_back(&findings_[i]);
  return out;
}

std::optional<ReviewRecord> Run::Review(std::string_view finding_id) const {
  std::shared_lock lock(reviews_mu_);
  auto it = reviews_.find(std::string(finding_id));
  if (it == reviews_.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, ReviewRecord> Run::Reviews() const {
  std::shared_lock lock(reviews_mu_);
  return reviews_;
}

std::set<std::string> Run::Blacklist() const {
  std::shared_lock lock(reviews_mu_);
  std::set<std::string> out;
  for (const auto &[id, r] : reviews_) {
    if (r.status == ReviewStatus::kRejected) out.insert(id);
  }
  return out;
}

bool Run::Visible(const smells::Finding &f, const ListingFilter &filter) const {
  if (!filter.smells.empty() && filter.smells.count(f.smell) == 0) return false;
  if (f.suppressed() && !filter.include_suppressed) return false;
  if (!filter.include_rejected) {
    auto r = Review(f.finding_id);
    if (r && r->status == ReviewStatus::kRejected) return false;
  }
  return true;
}

ReviewRecord Run::PutReview(ReviewRecord record) {
  if (FindFinding(record.finding_id) == nullptr) {
    throw Error(ErrorCode::kNotFound, "unknown finding " + record.finding_id);
  }
  if (record.updated_at.empty()) record.updated_at = NowUtc();
  std::string line = ToJson(record).dump() + "\n";
  std::unique_lock lock(reviews_mu_);
  fs::path log = dir_ / kReviewLog;
  std::error_code ec;
  if (fs::exists(log) && fs::file_size(log) > log_size_) {
    fs::resize_file(log, log_size_, ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot repair " + log.string());
  }
  int fd = ::open(log.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw Error(ErrorCode::kIoError, "cannot open " + log.string());
  ssize_t n = ::write(fd, line.data(), line.size());
  ::fsync(fd);
  ::close(fd);
  if (n != static_cast<ssize_t>(line.size())) {
    throw Error(ErrorCode::kIoError, "cannot append to " + log.string());
  }
  log_size_ += line.size();
  reviews_[record.finding_id] = record;
  if (++appends_since_compact_ >= kCompactEvery) {
    lock.unlock();
    Compact();
  }
  return record;
}

void Run::Compact() {
  std::unique_lock lock(reviews_mu_);
  json records = json::array();
  for (const auto &[id, r] : reviews_) records.push_back(ToJson(r));
  json snap = {{"log_offset", log_size_}, {"records", std::move(records)}};
  WriteAtomically(dir_ / kSnapshot, snap.dump(1) + "\n");
  appends_since_compact_ = 0;
}

RunRepository::RunRepository(fs::path root) : root_(std::move(root)) {}

std::vector<std::string> RunRepository::ListRuns() const {
  std::vector<std::pair<int, std::string>> runs;
  std::error_code ec;
  if (!fs::is_directory(root_, ec)) return {};
  for (const auto &entry : fs::directory_iterator(root_, ec)) {
    std::string name = entry.path().filename().string();
    auto n = RunNumber(name);
    if (n && entry.is_directory() && fs::exists(entry.path() / kRunHeader)) {
      runs.emplace_back(*n, name);
    }
  }
  std::sort(runs.begin(), runs.end());
  std::vector<std::string> out;
  for (auto &[n, name] : runs) out.push_back(std::move(name));
  return out;
}

Run *RunRepository::Get(std::string_view run_id) {
  if (!RunNumber(run_id)) return nullptr;
  std::lock_guard lock(mu_);
  auto it = open_runs_.find(run_id);
  if (it != open_runs_.end()) return it->second.get();
  fs::path dir = root_ / std::string(run_id);
  if (!fs::exists(dir / kRunHeader)) return nullptr;
  auto run = Run::Open(dir);
  Run *ptr = run.get();
  open_runs_.emplace(std::string(run_id), std::move(run));
  return ptr;
}

std::string RunRepository::AnalyzeAndStore(const Analyzer &analyzer,
                                           const AnalyzeRequest &request) {
  CorpusOptions corpus_options = request.corpus;
  corpus_options.skip_bad_files = true;
  Corpus corpus = LoadCorpus(request.inputs, corpus_options);
  std::vector<ItemResult> results =
      AnalyzeItemsParallel(analyzer, corpus.items, request.jobs);
  auto artifact_metrics = metrics::ComputeArtifactMetrics(
      corpus.documents, results, metrics::DefaultFilter(false));

  std::vector<StoredItem> items;
  std::vector<smells::Finding> findings;
  std::set<std::string> finding_ids;
  for (const auto &r : results) {
    items.push_back({r.item, r.word_count});
    for (const auto &f : r.findings) {
      findings.push_back(f);
      finding_ids.insert(f.finding_id);
    }
  }

  std::vector<std::string> existing = ListRuns();
  std::vector<ReviewRecord> carried;
  if (!existing.empty()) {
    if (Run *previous = Get(existing.back())) {
      for (const auto &[id, r] : previous->Reviews()) {
        if (finding_ids.count(id) > 0) carried.push_back(r);
      }
    }
  }

  std::lock_guard lock(mu_);
  int next = 1;
  for (const auto &name : ListRuns()) next = std::max(next, *RunNumber(name) + 1);
  std::string run_id = "r" + std::to_string(next);
  fs::path tmp = root_ / ("." + run_id + ".tmp");
  std::error_code ec;
  fs::remove_all(tmp, ec);
  fs::create_directories(tmp, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + tmp.string());

  const smells::DetectorConfig &config = analyzer.config();
  json enabled = json::array();
  for (auto s : smells::kAllSmells) {
    if (config.enabled_smells.count(s) > 0) enabled.push_back(smells::SmellName(s));
  }
  json inputs = json::array();
  for (const auto &p : request.inputs) inputs.push_back(p.string());
  json header = {
      {"run_id", run_id},
      {"created_at", NowUtc()},
      {"inputs", inputs},
      {"config",
       {{"enabled_smells", enabled},
        {"enable_condition_suppression", config.enable_condition_suppression},
        {"enable_numeric_comparison_suppression",
         config.enable_numeric_comparison_suppression}}},
      {"documents", corpus.documents.size()},
      {"items", items.size()},
      {"findings", findings.size()},
      {"carried_reviews", carried.size()},
      {"warnings", corpus.warnings},
  };
  WriteAll(tmp / kRunHeader, header.dump(2) + "\n");
  WriteAll(tmp / kItemsFile, ToJsonLines(items));
  WriteAll(tmp / kFindingsFile, ToJsonLines(findings));
  WriteAll(tmp / kMetricsFile, ToJsonLines(artifact_metrics));
  WriteAll(tmp / kReviewLog, ToJsonLines(carried));
  fs::rename(tmp, root_ / run_id, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create run " + run_id);
  return run_id;
}

}  // namespace reqsmell::review
