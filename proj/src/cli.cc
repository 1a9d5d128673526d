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

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reqsmell/evalkit.h"
#include "reqsmell/metrics.h"
#include "reqsmell/pipeline.h"

namespace reqsmell::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char *kLexiconEnv = "REQSMELL_LEXICON_DIR";
constexpr const char *kDictionaryEnv = "REQSMELL_DICTIONARY_DIR";
constexpr const char *kPortEnv = "REQSMELL_PORT";

struct AnalyzerFlags {
  std::string lexicon_dir;
  std::string dictionary_dir;
  std::vector<std::string> smells;
  bool suppress_conditions = false;
  bool suppress_numeric = false;
};

struct AnalyzeFlags {
  std::vector<std::string> inputs;
  std::string format;
  std::string csv_id;
  std::string csv_text;
  std::string report = "json";
  std::string out = "-";
  std::string findings;
  std::string store;
  bool include_suppressed = false;
  int jobs = 0;
  std::optional<double> fail_on_density;
  std::size_t sample = 0;
  std::uint64_t seed = 1;
};

struct EvalFlags {
  std::string predictions;
  std::string gold;
  std::string policy = "exact";
  std::string rater;
  std::string report = "text";
  std::string out = "-";
  bool group_ambiguity = false;
};

struct ServeFlags {
  std::string path = "runs";
  std::vector<std::string> analyze;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  std::string cors_origin;
  int jobs = 0;
};

std::vector<std::string> SmellNames() {
  std::vector<std::string> names;
  for (auto s : smells::kAllSmells) names.emplace_back(smells::SmellName(s));
  return names;
}

void AddAnalyzerFlags(CLI::App *app, AnalyzerFlags &flags) {
  app->add_option("--lexicon-dir", flags.lexicon_dir,
                  "Lexicon directory (default: bundled lexicon)")
      ->envname(kLexiconEnv);
  app->add_option("--dictionary-dir", flags.dictionary_dir,
                  "Smell dictionary directory (default: bundled dictionaries)")
      ->envname(kDictionaryEnv);
  app->add_option("--smells", flags.smells,
                  "Comma-separated smells to detect (default: all)")
      ->delimiter(',')
      ->check(CLI::IsMember(SmellNames()));
  app->add_flag("--suppress-conditions", flags.suppress_conditions,
                "Suppress negations inside if/unless/when clauses");
  app->add_flag("--suppress-numeric", flags.suppress_numeric,
                "Suppress comparatives followed by than and a number");
}

Analyzer BuildAnalyzer(const AnalyzerFlags &flags,
                       std::unique_ptr<nlp::Lexicon> &lexicon) {
  lexicon = std::make_unique<nlp::Lexicon>(nlp::Lexicon::LoadFromDirectory(
      ResolveDataDir(flags.lexicon_dir, kLexiconEnv, "lexicon")));
  smells::DetectorConfig config;
  if (!flags.smells.empty()) {
    config.enabled_smells.clear();
    for (const auto &name : flags.smells) {
      config.enabled_smells.insert(*smells::ParseSmell(name));
    }
  }
  config.enable_condition_suppression = flags.suppress_conditions;
  config.enable_numeric_comparison_suppression = flags.suppress_numeric;
  config.dictionary_dir =
      ResolveDataDir(flags.dictionary_dir, kDictionaryEnv, "dictionaries");
  nlp::Annotator annotator(*lexicon);
  return Analyzer(*lexicon,
                  smells::LoadDictionaries(config.dictionary_dir, annotator),
                  config);
}

void WriteOutput(const std::string &path, const std::string &content,
                 std::ostream &out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << content;
  file.flush();
  if (!file) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

CorpusOptions MakeCorpusOptions(const AnalyzeFlags &flags) {
  CorpusOptions options;
  if (!flags.format.empty()) options.format = ingest::ParseFormat(flags.format);
  if (!flags.csv_id.empty() || !flags.csv_text.empty()) {
    ingest::CsvConfig csv;
    if (!flags.csv_id.empty()) csv.id_column = flags.csv_id;
    if (!flags.csv_text.empty()) csv.text_column = flags.csv_text;
    options.csv = csv;
  }
  return options;
}

std::string Fixed(double v, int decimals) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(decimals) << v;
  return ss.str();
}

int DoAnalyze(const AnalyzerFlags &analyzer_flags, const AnalyzeFlags &flags,
              std::ostream &out, std::ostream &err) {
  std::unique_ptr<nlp::Lexicon> lexicon;
  Analyzer analyzer = BuildAnalyzer(analyzer_flags, lexicon);
  std::vector<fs::path> inputs(flags.inputs.begin(), flags.inputs.end());
  CorpusOptions corpus_options = MakeCorpusOptions(flags);
  Corpus corpus = LoadCorpus(inputs, corpus_options);
  std::vector<ItemResult> results =
      AnalyzeItemsParallel(analyzer, corpus.items, flags.jobs);

  auto filter = metrics::DefaultFilter(flags.include_suppressed);
  auto artifacts = metrics::ComputeArtifactMetrics(corpus.documents, results,
                                                   filter);
  metrics::ArtifactMetrics sum = metrics::SumMetrics(artifacts);
  std::vector<smells::Finding> findings;
  for (const auto &r : results) {
    findings.insert(findings.end(), r.findings.begin(), r.findings.end());
  }

  if (flags.report == "csv") {
    WriteOutput(flags.out, metrics::MetricsCsv(artifacts), out);
  } else {
    json report = {{"findings", json::array()},
                   {"artifacts", json::array()},
                   {"sum", metrics::ToJson(sum)},
                   {"story_parts", metrics::ToJson(metrics::ComputeStoryPartMetrics(
                                       results, filter))}};
    for (const auto &f : findings) report["findings"].push_back(smells::ToJson(f));
    for (const auto &a : artifacts) report["artifacts"].push_back(metrics::ToJson(a));
    WriteOutput(flags.out, report.dump(2) + "\n", out);
  }

  if (!flags.findings.empty()) {
    std::vector<smells::Finding> selected =
        flags.sample > 0 ? eval::SampleFindings(findings, flags.sample, flags.seed)
                         : findings;
    std::string lines;
    for (const auto &f : selected) lines += smells::ToJson(f).dump() + "\n";
    WriteOutput(flags.findings, lines, out);
  }

  if (!flags.store.empty()) {
    review::RunRepository repository(flags.store);
    std::string run_id =
        repository.AnalyzeAndStore(analyzer, {inputs, corpus_options, flags.jobs});
    err << "stored run " << (fs::path(flags.store) / run_id).string() << "\n";
  }

  if (flags.fail_on_density && sum.density_total > *flags.fail_on_density) {
    err << "density " << Fixed(sum.density_total, 1)
        << " findings per 1000 words exceeds " << *flags.fail_on_density << "\n";
    return kExitDensityGate;
  }
  return kExitOk;
}

int DoEval(const EvalFlags &flags, std::ostream &out) {
  auto predictions = eval::LoadFindings(flags.predictions);
  auto gold = eval::LoadGold(flags.gold);
  eval::EvalOptions options;
  options.policy = flags.policy == "overlap" ? eval::MatchPolicy::kOverlap
                                             : eval::MatchPolicy::kExactSpan;
  if (flags.group_ambiguity) options.groups = eval::AmbiguityGroups();
  if (!flags.rater.empty()) options.rater = flags.rater;
  eval::EvalReport report = eval::Evaluate(predictions, gold, options);
  auto agreement = eval::RaterAgreement(gold);

  if (flags.report == "json") {
    json j = {{"report", eval::ToJson(report)},
              {"agreement", agreement ? eval::ToJson(*agreement) : json(nullptr)}};
    WriteOutput(flags.out, j.dump(2) + "\n", out);
    return kExitOk;
  }
  std::string text = eval::FormatTable(report);
  if (agreement) {
    text += "\nRaters " + agreement->rater_a + " / " + agreement->rater_b +
            " on " + std::to_string(agreement->common_findings) +
            " findings: kappa " + Fixed(agreement->kappa, 2) +
            ", false-positive agreement " + Fixed(agreement->fp_agreement, 2) +
            "\n";
  }
  WriteOutput(flags.out, text, out);
  return kExitOk;
}

int DoServe(const AnalyzerFlags &analyzer_flags, const ServeFlags &flags,
            std::ostream &out, const CliHooks &hooks) {
  fs::path path = flags.path;
  fs::path root = path;
  std::string run_id;
  if (fs::exists(path / "run.json")) {
    root = path.parent_path();
    run_id = path.filename().string();
  }
  review::RunRepository repository(root);
  if (!flags.analyze.empty()) {
    std::unique_ptr<nlp::Lexicon> lexicon;
    Analyzer analyzer = BuildAnalyzer(analyzer_flags, lexicon);
    std::vector<fs::path> inputs(flags.analyze.begin(), flags.analyze.end());
    run_id = repository.AnalyzeAndStore(analyzer, {inputs, {}, flags.jobs});
  } else if (!fs::is_directory(root)) {
    throw Error(ErrorCode::kIoError, "no run directory at " + path.string());
  }
  review::ServerOptions options;
  options.host = flags.host;
  options.port = flags.port;
  if (!flags.static_dir.empty()) options.static_dir = flags.static_dir;
  if (!flags.cors_origin.empty()) options.cors_origin = flags.cors_origin;
  review::ApiServer server(repository, options);
  int port = server.Bind();
  out << "serving http://" << flags.host << ":" << port << "/api/v1";
  if (!run_id.empty()) out << "/runs/" << run_id;
  out << "\n" << std::flush;
  if (hooks.on_serving) hooks.on_serving(server, port);
  server.Listen();
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char *const *argv, std::ostream &out,
           std::ostream &err, const CliHooks &hooks) {
  CLI::App app{"Requirements smell analyzer", "reqsmell"};
  app.set_config("--config", "reqsmell.toml",
                 "TOML file with option defaults; keys are flag names");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  AnalyzerFlags analyzer_flags;

  AnalyzeFlags analyze;
  CLI::App *analyze_cmd =
      app.add_subcommand("analyze", "Detect smells and report densities");
  analyze_cmd->add_option("inputs", analyze.inputs, "Files or directories")
      ->required();
  AddAnalyzerFlags(analyze_cmd, analyzer_flags);
  analyze_cmd->add_option("--format", analyze.format,
                          "Input format for all files (default: by extension)")
      ->check(CLI::IsMember({"txt", "text", "md", "markdown", "csv", "jsonl"}));
  analyze_cmd->add_option("--csv-id", analyze.csv_id, "CSV id column (ID)");
  analyze_cmd->add_option("--csv-text", analyze.csv_text, "CSV text column (Text)");
  analyze_cmd->add_option("--report", analyze.report, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  analyze_cmd->add_option("--out", analyze.out, "Report path, - for stdout")
      ->capture_default_str();
  analyze_cmd->add_option("--findings", analyze.findings,
                          "Also write findings as JSON lines to this path");
  analyze_cmd->add_option("--store", analyze.store,
                          "Also store the analysis as a new run in this directory");
  analyze_cmd->add_flag("--include-suppressed", analyze.include_suppressed,
                        "Count suppressed findings in metrics");
  analyze_cmd->add_option("--jobs", analyze.jobs,
                          "Worker threads, 0 for all cores")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  analyze_cmd->add_option("--fail-on-density", analyze.fail_on_density,
                          "Exit 3 when overall findings per 1000 words exceed this")
      ->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--sample", analyze.sample,
                          "Write at most N findings per artifact to --findings")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--seed", analyze.seed, "Seed for --sample")
      ->capture_default_str();

  EvalFlags eval_flags;
  CLI::App *eval_cmd = app.add_subcommand(
      "eval", "Precision, recall and rater agreement against gold annotations");
  eval_cmd->add_option("--predictions", eval_flags.predictions,
                       "Findings as JSON lines or a JSON array")
      ->required();
  eval_cmd->add_option("--gold", eval_flags.gold,
                       "Gold spans as JSON lines or a JSON array")
      ->required();
  eval_cmd->add_option("--policy", eval_flags.policy, "Span matching policy")
      ->check(CLI::IsMember({"exact", "overlap"}))
      ->capture_default_str();
  eval_cmd->add_option("--rater", eval_flags.rater,
                       "Rater whose verdicts give precision (default: first)");
  eval_cmd->add_flag("--group-ambiguity", eval_flags.group_ambiguity,
                     "Merge the four dictionary smells into one row");
  eval_cmd->add_option("--report", eval_flags.report, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  eval_cmd->add_option("--out", eval_flags.out, "Output path, - for stdout")
      ->capture_default_str();

  ServeFlags serve;
  CLI::App *serve_cmd =
      app.add_subcommand("serve", "Serve the review API over stored runs");
  serve_cmd->add_option("path", serve.path, "Run directory or directory of runs")
      ->capture_default_str();
  serve_cmd->add_option("--analyze", serve.analyze,
                        "Analyze these inputs into a new run before serving");
  AddAnalyzerFlags(serve_cmd, analyzer_flags);
  serve_cmd->add_option("--host", serve.host, "Bind address")
      ->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "Port")
      ->envname(kPortEnv)
      ->check(CLI::Range(1, 65535))
      ->capture_default_str();
  serve_cmd->add_option("--static", serve.static_dir,
                        "Directory of built web UI assets served at /");
  serve_cmd->add_option("--cors-origin", serve.cors_origin,
                        "Allow cross-origin requests from this origin");
  serve_cmd->add_option("--jobs", serve.jobs, "Worker threads for --analyze")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze_cmd->parsed()) return DoAnalyze(analyzer_flags, analyze, out, err);
    if (eval_cmd->parsed()) return DoEval(eval_flags, out);
    return DoServe(analyzer_flags, serve, out, hooks);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitFileError;
}

}  // namespace reqsmell::cli
