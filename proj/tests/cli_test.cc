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

#include "reqsmell/cli.h"

#include <cstdlib>
#include <sstream>
#include <thread>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "test_util.h"

namespace reqsmell::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using ::testing::HasSubstr;
using ::testing::StartsWith;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args, const CliHooks &hooks = {}) {
  args.insert(args.begin(), "reqsmell");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err, hooks);
  r.out = out.str();
  r.err = err.str();
  return r;
}

int FreePort() {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  socklen_t len = sizeof(addr);
  ::bind(fd, reinterpret_cast<sockaddr *>(&addr), len);
  ::getsockname(fd, reinterpret_cast<sockaddr *>(&addr), &len);
  ::close(fd);
  return ntohs(addr.sin_port);
}

std::string Fixtures() {
  return (testing::DataDir() / "fixtures" / "smell_examples.txt").string();
}

TEST(CliTest, HelpListsEveryFlag) {
  Result r = Invoke({"analyze", "--help"});
  EXPECT_EQ(r.code, 0);
  for (const char *flag :
       {"--lexicon-dir", "--dictionary-dir", "--smells", "--suppress-conditions",
        "--suppress-numeric", "--format", "--csv-id", "--csv-text", "--report",
        "--out", "--findings", "--store", "--include-suppressed", "--jobs",
        "--fail-on-density", "--sample", "--seed", "REQSMELL_LEXICON_DIR",
        "REQSMELL_DICTIONARY_DIR"}) {
    EXPECT_THAT(r.out, HasSubstr(flag));
  }
  r = Invoke({"serve", "--help"});
  EXPECT_THAT(r.out, HasSubstr("REQSMELL_PORT"));
  EXPECT_THAT(Invoke({"--help"}).out, HasSubstr("--config"));
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"analyze"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"analyze", Fixtures(), "--bogus"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"analyze", Fixtures(), "--report", "xml"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"analyze", Fixtures(), "--smells", "Fuzzy"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"serve", "--port", "-1"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"serve", "--port", "70000"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"eval", "--gold", "g.jsonl"}).code, kExitUsage);
}

TEST(CliTest, MissingInputIsFileError) {
  Result r = Invoke({"analyze", "/nonexistent/reqs"});
  EXPECT_EQ(r.code, kExitFileError);
  EXPECT_THAT(r.err, HasSubstr("/nonexistent/reqs"));
}

TEST(CliTest, CsvReport) {
  Result r = Invoke({"analyze", Fixtures(), "--report", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_THAT(r.out, StartsWith("artifact,words,all_smells,all_smells_per_1000,"
                                "SubjectiveLanguage,"));
  EXPECT_THAT(r.out, HasSubstr("\nsmell_examples.txt,"));
  EXPECT_THAT(r.out, HasSubstr("\nSum,"));
}

TEST(CliTest, CsvColumns) {
  testing::TempDir tmp;
  testing::WriteFile(tmp.path() / "reqs.csv",
                     "Key,Body\nR1,The system should be fast.\n"
                     "R2,It must not crash.\n");
  Result r = Invoke({"analyze", (tmp.path() / "reqs.csv").string(), "--csv-id",
                  "Key", "--csv-text", "Body"});
  ASSERT_EQ(r.code, 0) << r.err;
  json report = json::parse(r.out);
  std::set<std::string> items;
  for (const auto &f : report["findings"]) items.insert(f["item_id"]);
  EXPECT_EQ(items, (std::set<std::string>{"R1", "R2"}));
  EXPECT_EQ(Invoke({"analyze", (tmp.path() / "reqs.csv").string()}).code,
            kExitFileError);
}

TEST(CliTest, DeterministicJson) {
  Result a = Invoke({"analyze", Fixtures(), "--jobs", "1"});
  Result b = Invoke({"analyze", Fixtures(), "--jobs", "4"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  json report = json::parse(a.out);
  EXPECT_GE(report["findings"].size(), 8u);
  EXPECT_TRUE(report["sum"].is_object());
  EXPECT_TRUE(report["story_parts"].is_object());
}

TEST(CliTest, DensityGate) {
  EXPECT_EQ(Invoke({"analyze", Fixtures(), "--fail-on-density", "1"}).code,
            kExitDensityGate);
  EXPECT_EQ(Invoke({"analyze", Fixtures(), "--fail-on-density", "100000"}).code,
            kExitOk);
}

TEST(CliTest, SmellSelectionAndFindingsFile) {
  testing::TempDir tmp;
  std::string findings = (tmp.path() / "f.jsonl").string();
  Result r = Invoke({"analyze", Fixtures(), "--smells", "Loopholes,Superlatives",
                  "--findings", findings, "--out",
                  (tmp.path() / "report.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::istringstream lines(testing::ReadFile(findings));
  std::string line;
  std::set<std::string> seen;
  while (std::getline(lines, line)) seen.insert(json::parse(line)["smell"]);
  EXPECT_EQ(seen, (std::set<std::string>{"Loopholes", "Superlatives"}));

  std::string s1 = (tmp.path() / "s1.jsonl").string();
  std::string s2 = (tmp.path() / "s2.jsonl").string();
  Invoke({"analyze", Fixtures(), "--findings", s1, "--sample", "3", "--seed", "7",
       "--out", (tmp.path() / "r1.json").string()});
  Invoke({"analyze", Fixtures(), "--findings", s2, "--sample", "3", "--seed", "7",
       "--out", (tmp.path() / "r2.json").string()});
  std::string sample = testing::ReadFile(s1);
  EXPECT_EQ(sample, testing::ReadFile(s2));
  EXPECT_EQ(std::count(sample.begin(), sample.end(), '\n'), 3);
}

TEST(CliTest, ConfigFileFlagsWin) {
  testing::TempDir tmp;
  fs::path config = tmp.path() / "reqsmell.toml";
  testing::WriteFile(config, "[analyze]\nreport = \"csv\"\n");
  Result r = Invoke({"--config", config.string(), "analyze", Fixtures()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_THAT(r.out, StartsWith("artifact,"));
  r = Invoke({"--config", config.string(), "analyze", Fixtures(), "--report",
           "json"});
  EXPECT_THAT(r.out, StartsWith("{"));
  testing::WriteFile(config, "[analyze]\nreprot = \"csv\"\n");
  EXPECT_EQ(Invoke({"--config", config.string(), "analyze", Fixtures()}).code,
            kExitUsage);
}

TEST(CliTest, DictionaryDirFromEnvironment) {
  testing::TempDir tmp;
  ::setenv("REQSMELL_DICTIONARY_DIR", tmp.path().c_str(), 1);
  Result r = Invoke({"analyze", Fixtures()});
  ::unsetenv("REQSMELL_DICTIONARY_DIR");
  EXPECT_EQ(r.code, kExitFileError);
  EXPECT_THAT(r.err, HasSubstr("MissingDictionary"));
  EXPECT_EQ(Invoke({"analyze", Fixtures(), "--smells", "Superlatives"}).code, 0);
}

json Gold(const std::string &smell, std::size_t begin, const char *verdict,
          const std::string &rater) {
  json g = {{"artifact_id", "a.txt"}, {"item_id", "1"},
            {"smell", smell},         {"token_span", {0, 0}},
            {"char_range", {begin, begin + 3}},
            {"matched_text", "abc"},  {"message", ""},
            {"improvement_hint", ""}, {"suppressed_by", nullptr},
            {"rater_id", rater}};
  g["verdict"] = verdict ? json(verdict) : json(nullptr);
  g["finding_id"] = "f" + std::to_string(begin);
  return g;
}

TEST(CliTest, EvalPrecisionRowAndAgreement) {
  testing::TempDir tmp;
  std::string gold, predictions;
  for (int i = 0; i < 69; ++i) {
    json a = Gold("SubjectiveLanguage", i * 10, i < 66 ? "tp" : "fp", "ann");
    json b = Gold("SubjectiveLanguage", i * 10, i < 66 ? "tp" : "fp", "bob");
    gold += a.dump() + "\n" + b.dump() + "\n";
    json f = a;
    f.erase("verdict");
    f.erase("rater_id");
    predictions += f.dump() + "\n";
  }
  testing::WriteFile(tmp.path() / "gold.jsonl", gold);
  testing::WriteFile(tmp.path() / "pred.jsonl", predictions);
  Result r = Invoke({"eval", "--predictions", (tmp.path() / "pred.jsonl").string(),
                  "--gold", (tmp.path() / "gold.jsonl").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_THAT(r.out, HasSubstr("SubjectiveLanguage"));
  EXPECT_THAT(r.out, HasSubstr("0.96"));
  EXPECT_THAT(r.out, HasSubstr("kappa 1.00"));

  r = Invoke({"eval", "--predictions", (tmp.path() / "pred.jsonl").string(),
           "--gold", (tmp.path() / "gold.jsonl").string(), "--group-ambiguity",
           "--report", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["report"]["rows"][0]["label"], "Ambiguity-related");
  EXPECT_DOUBLE_EQ(j["agreement"]["kappa"].get<double>(), 1.0);

  testing::WriteFile(tmp.path() / "bad.jsonl",
                     Gold("Loopholes", 0, "tp", "a").dump() + "\n{\"smell\": 1}\n");
  r = Invoke({"eval", "--predictions", (tmp.path() / "pred.jsonl").string(),
           "--gold", (tmp.path() / "bad.jsonl").string()});
  EXPECT_EQ(r.code, kExitFileError);
  EXPECT_THAT(r.err, HasSubstr("line 2"));
}

TEST(CliTest, StoreThenServe) {
  testing::TempDir tmp;
  std::string runs = (tmp.path() / "runs").string();
  Result stored = Invoke({"analyze", Fixtures(), "--store", runs, "--out",
                       (tmp.path() / "r.json").string()});
  ASSERT_EQ(stored.code, 0) << stored.err;
  EXPECT_THAT(stored.err, HasSubstr("r1"));

  json artifacts;
  CliHooks hooks;
  hooks.on_serving = [&](review::ApiServer &server, int port) {
    std::thread([&server, port, &artifacts] {
      server.WaitUntilReady();
      httplib::Client client("127.0.0.1", port);
      auto res = client.Get("/api/v1/runs/r1/artifacts");
      if (res && res->status == 200) artifacts = json::parse(res->body);
      server.Stop();
    }).detach();
  };
  Result served = Invoke({"serve", runs + "/r1", "--port", "0"}, hooks);
  EXPECT_EQ(served.code, kExitUsage);
  int free_port = FreePort();
  served = Invoke({"serve", runs + "/r1", "--port", std::to_string(free_port)},
               hooks);
  ASSERT_EQ(served.code, 0) << served.err;
  EXPECT_THAT(served.out, HasSubstr("/api/v1/runs/r1"));
  ASSERT_TRUE(artifacts.is_array());
  EXPECT_EQ(artifacts[0]["artifact_id"], "smell_examples.txt");
}

TEST(CliTest, ServeAnalyzeAndPortInUse) {
  testing::TempDir tmp;
  httplib::Server blocker;
  int port = blocker.bind_to_any_port("127.0.0.1");
  Result r = Invoke({"serve", (tmp.path() / "runs").string(), "--analyze",
                  Fixtures(), "--port", std::to_string(port)});
  EXPECT_EQ(r.code, kExitFileError);
  EXPECT_THAT(r.err, HasSubstr("in use"));
  EXPECT_TRUE(fs::exists(tmp.path() / "runs" / "r1" / "findings.jsonl"));
  EXPECT_EQ(Invoke({"serve", (tmp.path() / "nothing").string()}).code,
            kExitFileError);
}

}  // namespace
}  // namespace reqsmell::cli
