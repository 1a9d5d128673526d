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

// Acceptance suite. Prints one PASS or FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "reqsmell/evalkit.h"
#include "reqsmell/metrics.h"
#include "reqsmell/pipeline.h"
#include "reqsmell/reviewsvc.h"
#include "test_util.h"

namespace reqsmell {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Pinned tolerances.
constexpr int kTableDecimals = 2;
constexpr double kDensityTolerance = 0.05;
constexpr double kKappaTolerance = 1e-9;
constexpr double kMinSuppressionRate = 0.90;
constexpr double kMaxTableSeconds = 1.0;

std::string Fmt(const char *format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

bool SameAt2(double actual, double expected) {
  return metrics::RoundHalfUp(actual, kTableDecimals) ==
         metrics::RoundHalfUp(expected, kTableDecimals);
}

const Analyzer &SharedAnalyzer(bool suppression) {
  auto make = [](bool on) {
    nlp::Annotator annotator(testing::DefaultLexicon());
    smells::DetectorConfig config;
    config.enable_condition_suppression = on;
    config.enable_numeric_comparison_suppression = on;
    return new Analyzer(
        testing::DefaultLexicon(),
        smells::LoadDictionaries(testing::DataDir() / "dictionaries", annotator),
        config);
  };
  static const Analyzer *plain = make(false);
  static const Analyzer *suppressing = make(true);
  return suppression ? *suppressing : *plain;
}

fs::path FixtureFile() {
  return testing::DataDir() / "fixtures" / "smell_examples.txt";
}

Outcome PrecisionTable() {
  auto start = std::chrono::steady_clock::now();
  auto report = eval::PrecisionTable({{"SubjectiveLanguage", {69, 66}},
                                      {"AmbiguousAdverbsAdjectives", {21, 17}},
                                      {"Loopholes", {60, 43}},
                                      {"NonVerifiableTerms", {23, 16}},
                                      {"Superlatives", {39, 19}},
                                      {"Comparatives", {88, 42}},
                                      {"NegativeStatements", {129, 42}},
                                      {"VaguePronouns", {187, 48}}});
  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  const double expected[] = {0.96, 0.81, 0.72, 0.70, 0.49, 0.48, 0.33, 0.26};
  int ok = 0;
  for (int i = 0; i < 8; ++i) ok += SameAt2(*report.rows[i].precision, expected[i]);
  bool pass = ok == 8 && SameAt2(*report.average_precision, 0.59) &&
              SameAt2(*report.overall_precision, 0.48) &&
              seconds < kMaxTableSeconds;
  return {pass, std::to_string(ok) + "/8 rows, average " +
                    Fmt("%.2f", *report.average_precision) + ", overall " +
                    Fmt("%.2f", *report.overall_precision) + ", " +
                    Fmt("%.4f s", seconds)};
}

Outcome RecallTable() {
  auto report = eval::RecallTable({{"Ambiguity-related", {74, 64}},
                                   {"Superlatives", {4, 2}},
                                   {"Comparatives", {21, 20}},
                                   {"NegativeStatements", {64, 54}},
                                   {"VaguePronouns", {37, 34}}});
  const double expected[] = {0.86, 0.50, 0.95, 0.84, 0.92};
  int ok = 0;
  for (int i = 0; i < 5; ++i) ok += SameAt2(*report.rows[i].recall, expected[i]);
  bool pass = ok == 5 && SameAt2(*report.average_recall, 0.82) &&
              SameAt2(*report.overall_recall, 0.87);
  return {pass, std::to_string(ok) + "/5 rows, average " +
                    Fmt("%.2f", *report.average_recall) + ", overall " +
                    Fmt("%.2f", *report.overall_recall)};
}

Outcome DensityTable() {
  struct Row {
    std::size_t findings, words;
    double expected;
  } rows[] = {{45, 1896, 23.7}, {5, 199, 25.1}, {31, 458, 67.7},
              {1154, 27955, 41.3}};
  int ok = 0;
  std::string detail;
  for (const auto &r : rows) {
    double d = metrics::ComputeDensity(r.findings, r.words);
    ok += std::fabs(d - r.expected) <= kDensityTolerance;
    detail += (detail.empty() ? "" : " ") + Fmt("%.2f", d);
  }
  return {ok == 4, std::to_string(ok) + "/4 cells within 0.05: " + detail};
}

Outcome FixtureCorpus() {
  Corpus corpus = LoadCorpus({FixtureFile()});
  auto results = AnalyzeItemsSerial(SharedAnalyzer(false), corpus.items);
  std::ifstream in(testing::DataDir() / "fixtures" /
                   "smell_examples.expected.tsv");
  std::string line;
  int expected = 0, found = 0;
  std::string missed;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string item, smell, text;
    std::getline(ss, item, '\t');
    std::getline(ss, smell, '\t');
    std::getline(ss, text, '\t');
    ++expected;
    bool hit = false;
    for (const auto &r : results) {
      if (r.item.item_id != item) continue;
      for (const auto &f : r.findings) {
        hit |= smells::SmellName(f.smell) == smell && f.matched_text == text;
      }
    }
    found += hit;
    if (!hit) missed += " " + item + ":" + text;
  }
  return {expected > 0 && found == expected && results.size() == 8,
          std::to_string(found) + "/" + std::to_string(expected) +
              " expected findings" + (missed.empty() ? "" : ", missed" + missed)};
}

Outcome StoryParts() {
  auto report = metrics::StoryPartReport::FromCounts(
      {{{3073, 6}, {15240, 533}, {9642, 615}}});
  const double expected[] = {2, 35, 64};
  int ok = 0;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    double rounded = metrics::RoundHalfUp(report.parts[i].density, 0);
    ok += rounded == expected[i];
    detail += (detail.empty() ? "" : " ") + Fmt("%.0f", rounded);
  }
  return {ok == 3, "densities " + detail};
}

Outcome Determinism() {
  testing::TempDir tmp;
  fs::path corpus = tmp.path() / "corpus";
  testing::WriteFile(corpus / "a" / "examples.txt", testing::ReadFile(FixtureFile()));
  testing::WriteFile(corpus / "b" / "stories.txt",
                     "As a user, I want the most reliable backup, so that it "
                     "never loses data.\n\nThe export should be faster.\n");
  auto dump = [](const std::vector<ItemResult> &results) {
    std::string out;
    for (const auto &r : results) {
      for (const auto &f : r.findings) out += smells::ToJson(f).dump() + "\n";
    }
    return out;
  };
  Corpus c1 = LoadCorpus({corpus});
  Corpus c2 = LoadCorpus({corpus});
  std::string serial = dump(AnalyzeItemsSerial(SharedAnalyzer(false), c1.items));
  std::string parallel =
      dump(AnalyzeItemsParallel(SharedAnalyzer(false), c2.items, 4));
  bool identical = !serial.empty() && serial == parallel;

  review::RunRepository repo(tmp.path() / "runs");
  repo.AnalyzeAndStore(SharedAnalyzer(false), {{corpus}, {}, 1});
  review::Run *r1 = repo.Get("r1");
  review::ReviewRecord rejected;
  rejected.finding_id = r1->findings().front().finding_id;
  rejected.status = review::ReviewStatus::kRejected;
  r1->PutReview(rejected);
  review::ReviewRecord custom;
  custom.finding_id = r1->findings().back().finding_id;
  custom.status = review::ReviewStatus::kCustom;
  custom.label = "under review";
  r1->PutReview(custom);
  repo.AnalyzeAndStore(SharedAnalyzer(false), {{corpus}, {}, 2});
  review::Run *r2 = repo.Get("r2");
  bool same_bytes = testing::ReadFile(tmp.path() / "runs/r1/findings.jsonl") ==
                    testing::ReadFile(tmp.path() / "runs/r2/findings.jsonl");
  auto reviews = r2->Reviews();
  bool survived = reviews.size() == 2 &&
                  reviews[rejected.finding_id].status ==
                      review::ReviewStatus::kRejected &&
                  reviews[custom.finding_id].label == "under review";
  return {identical && same_bytes && survived,
          std::string("serial/parallel ") + (identical ? "identical" : "differ") +
              ", re-run " + (same_bytes ? "byte-identical" : "differs") +
              ", reviews " + (survived ? "survive" : "lost")};
}

Outcome Morphology() {
  const nlp::Lexicon &lex = testing::DefaultLexicon();
  std::ifstream in(testing::TestDataDir() / "adjective_forms.tsv");
  std::string line;
  int entries = 0, failures = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string base, comparative, superlative;
    std::getline(ss, base, '\t');
    std::getline(ss, comparative, '\t');
    std::getline(ss, superlative, '\t');
    ++entries;
    auto c = nlp::AnalyzeDegree(comparative, nlp::PosTag::kAdjective,
                                std::nullopt, lex);
    auto s = nlp::AnalyzeDegree(superlative, nlp::PosTag::kAdjective,
                                std::nullopt, lex);
    bool ok = nlp::Inflect(base, nlp::Degree::kComparative) == comparative &&
              nlp::Inflect(base, nlp::Degree::kSuperlative) == superlative &&
              c.degree == nlp::Degree::kComparative && c.base_lemma == base &&
              s.degree == nlp::Degree::kSuperlative && s.base_lemma == base;
    failures += !ok;
  }
  struct Irregular {
    const char *form, *lemma;
    nlp::Degree degree;
  } irregulars[] = {
      {"better", "good", nlp::Degree::kComparative},
      {"best", "good", nlp::Degree::kSuperlative},
      {"worse", "bad", nlp::Degree::kComparative},
      {"worst", "bad", nlp::Degree::kSuperlative},
      {"further", "far", nlp::Degree::kComparative},
      {"furthest", "far", nlp::Degree::kSuperlative},
      {"farther", "far", nlp::Degree::kComparative},
      {"farthest", "far", nlp::Degree::kSuperlative},
      {"less", "little", nlp::Degree::kComparative},
      {"least", "little", nlp::Degree::kSuperlative},
      {"more", "much", nlp::Degree::kComparative},
      {"most", "much", nlp::Degree::kSuperlative},
      {"fewer", "few", nlp::Degree::kComparative},
      {"fewest", "few", nlp::Degree::kSuperlative},
      {"elder", "old", nlp::Degree::kComparative},
      {"eldest", "old", nlp::Degree::kSuperlative},
  };
  int irregular_failures = 0;
  for (const auto &irr : irregulars) {
    auto d = nlp::AnalyzeDegree(irr.form, nlp::PosTag::kAdjective, std::nullopt,
                                lex);
    irregular_failures += d.degree != irr.degree || d.base_lemma != irr.lemma;
  }
  ingest::RequirementItem item;
  item.artifact_id = "stoplist.txt";
  item.item_id = "1";
  item.text =
      "The user enters a number under the limit. Each customer may filter "
      "the list. The user number must be shown under the header.";
  auto result = SharedAnalyzer(false).AnalyzeItem(item);
  int stoplist_findings = 0;
  for (const auto &f : result.findings) {
    stoplist_findings += f.smell == smells::SmellKind::kComparatives ||
                         f.smell == smells::SmellKind::kSuperlatives;
  }
  bool pass = entries >= 200 && failures == 0 && irregular_failures == 0 &&
              stoplist_findings == 0;
  return {pass, std::to_string(entries) + " adjectives, " +
                    std::to_string(failures) + " round-trip failures, " +
                    std::to_string(irregular_failures) + " irregular failures, " +
                    std::to_string(stoplist_findings) + " stoplist findings"};
}

Outcome SuppressionHeuristics() {
  std::ifstream in(testing::TestDataDir() / "suppression_cases.tsv");
  std::string line;
  int sentences = 0, expected = 0, flagged = 0, false_flags = 0;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    std::string annotation = line.substr(0, tab);
    ingest::RequirementItem item;
    item.artifact_id = "suppression.txt";
    item.item_id = std::to_string(++n);
    item.text = line.substr(tab + 1);
    ++sentences;
    auto findings = SharedAnalyzer(true).AnalyzeItem(item).findings;
    std::vector<std::string> wanted;
    if (annotation != "-") {
      std::stringstream ss(annotation);
      std::string entry;
      while (std::getline(ss, entry, '|')) wanted.push_back(entry);
    }
    std::vector<bool> used(findings.size(), false);
    for (const auto &w : wanted) {
      ++expected;
      for (std::size_t i = 0; i < findings.size(); ++i) {
        const auto &f = findings[i];
        if (!used[i] && f.suppressed() &&
            std::string(smells::SmellName(f.smell)) + ":" + f.matched_text +
                    ":" + std::string(smells::SuppressionName(*f.suppressed_by)) ==
                w) {
          used[i] = true;
          ++flagged;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < findings.size(); ++i) {
      false_flags += findings[i].suppressed() && !used[i];
    }
  }
  double rate = expected == 0 ? 0 : static_cast<double>(flagged) / expected;
  return {sentences == 20 && rate >= kMinSuppressionRate && false_flags == 0,
          std::to_string(sentences) + " sentences, " + std::to_string(flagged) +
              "/" + std::to_string(expected) + " cases flagged, " +
              std::to_string(false_flags) + " false flags"};
}

double KappaOracle(const std::vector<int> &a, const std::vector<int> &b) {
  const double n = a.size();
  double agree = 0, chance = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    agree += a[i] == b[i];
    for (std::size_t j = 0; j < b.size(); ++j) chance += a[i] == b[j];
  }
  double p_o = agree / n, p_e = chance / (n * n);
  return p_e == 1.0 ? 1.0 : (p_o - p_e) / (1 - p_e);
}

Outcome Kappa() {
  std::mt19937 rng(2024);
  double worst = 0;
  for (int v = 0; v < 100; ++v) {
    int n = 2 + rng() % 40;
    int labels = 2 + rng() % 3;
    std::vector<int> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = rng() % labels;
      b[i] = rng() % labels;
    }
    worst = std::max(worst, std::fabs(eval::CohenKappa(a, b) - KappaOracle(a, b)));
  }
  std::vector<char> x = {'T', 'F', 'T', 'T', 'F'};
  double perfect = eval::CohenKappa(x, x);
  double zero = eval::CohenKappa(std::vector<char>{'T', 'T', 'F', 'F'},
                                 std::vector<char>{'T', 'F', 'T', 'F'});
  bool pass = worst <= kKappaTolerance && perfect == 1.0 &&
              std::fabs(zero) <= kKappaTolerance;
  return {pass, "max deviation " + Fmt("%.2e", worst) + " over 100 vectors, "
                "perfect " + Fmt("%.3f", perfect) + ", chance-level " +
                Fmt("%.3f", zero)};
}

Outcome ApiContract() {
  testing::TempDir tmp;
  fs::path corpus = tmp.path() / "corpus";
  testing::WriteFile(corpus / "examples.txt", testing::ReadFile(FixtureFile()));
  testing::WriteFile(corpus / "perf.txt",
                     "The reply must be faster than 2 seconds.\n");
  review::RunRepository repo(tmp.path() / "runs");
  repo.AnalyzeAndStore(SharedAnalyzer(true), {{corpus}, {}, 1});
  review::ServerOptions options;
  options.port = 0;
  review::ApiServer server(repo, options);
  int port = server.Bind();
  std::thread thread([&] { server.Listen(); });
  server.WaitUntilReady();
  httplib::Client client("127.0.0.1", port);

  std::vector<std::string> failed;
  auto check = [&](bool ok, const char *what) {
    if (!ok) failed.push_back(what);
  };
  auto get = [&](const std::string &path) -> json {
    auto res = client.Get(path);
    if (!res || res->status != 200) return nullptr;
    return json::parse(res->body, nullptr, false);
  };
  auto listed = [&](const std::string &artifact, const std::string &query) {
    std::vector<json> out;
    json body = get("/api/v1/runs/r1/artifacts/" + artifact + "/items" + query);
    if (!body.is_object()) return out;
    for (const auto &item : body["items"]) {
      for (const auto &f : item["findings"]) out.push_back(f);
    }
    return out;
  };
  auto has_id = [](const std::vector<json> &fs, const std::string &id) {
    for (const auto &f : fs) {
      if (f["finding_id"] == id) return true;
    }
    return false;
  };

  auto all = listed("examples.txt", "");
  check(all.size() >= 8, "default listing");
  if (!all.empty()) {
    std::string id = all[0]["finding_id"];
    std::string base = "/api/v1/runs/r1/findings/" + id;
    auto put = client.Put(base + "/review",
                          R"({"status":"custom","label":"under review"})",
                          "application/json");
    check(put && put->status == 200, "custom review PUT");
    json detail = get(base);
    check(detail.is_object() && detail["review"]["status"] == "custom" &&
              detail["review"]["label"] == "under review",
          "custom review round trip");
    put = client.Put(base + "/review", R"({"status":"rejected"})",
                     "application/json");
    check(put && put->status == 200, "reject PUT");
    check(!has_id(listed("examples.txt", ""), id), "rejected hidden");
    check(has_id(listed("examples.txt", "?include_rejected=true"), id),
          "include_rejected");
    put = client.Put(base + "/review", R"({"status":"bogus"})",
                     "application/json");
    check(put && put->status == 422, "422 on bad status");
    put = client.Put("/api/v1/runs/r1/findings/none/review",
                     R"({"status":"accepted"})", "application/json");
    check(put && put->status == 404, "404 on unknown finding");
  }
  auto loopholes = listed("examples.txt", "?smells=Loopholes");
  bool only_loopholes = !loopholes.empty();
  for (const auto &f : loopholes) only_loopholes &= f["smell"] == "Loopholes";
  check(only_loopholes, "smells filter");
  check(listed("perf.txt", "").empty() &&
            listed("perf.txt", "?include_suppressed=true").size() == 1,
        "include_suppressed");
  auto bad = client.Get("/api/v1/runs/r1/artifacts/examples.txt/items?include_rejected=x");
  check(bad && bad->status == 400, "400 on malformed query");

  server.Stop();
  thread.join();
  std::string detail = failed.empty() ? "all endpoint checks hold" : "failed:";
  for (const auto &f : failed) detail += " " + f + ";";
  return {failed.empty(), detail};
}

}  // namespace
}  // namespace reqsmell

int main() {
  using reqsmell::Outcome;
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"precision_table_regression", reqsmell::PrecisionTable},
      {"recall_table_regression", reqsmell::RecallTable},
      {"density_regression", reqsmell::DensityTable},
      {"fixture_corpus_detection", reqsmell::FixtureCorpus},
      {"story_part_regression", reqsmell::StoryParts},
      {"determinism_and_id_stability", reqsmell::Determinism},
      {"morphology_properties", reqsmell::Morphology},
      {"suppression_heuristics", reqsmell::SuppressionHeuristics},
      {"kappa_correctness", reqsmell::Kappa},
      {"api_contract", reqsmell::ApiContract},
  };
  int failures = 0;
  for (const auto &[name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %-30s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
