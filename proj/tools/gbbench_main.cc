/*
 * Copyright 2026 The gbbench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command line front end: run, report, cd, compare.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gbbench/bench.h"
#include "gbbench/error.h"
#include "gbbench/stats.h"

namespace {

using gbbench::ErrorCode;
using gbbench::Fail;
using nlohmann::json;

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void PrintErrors(const std::vector<std::pair<std::string, std::string>>& errors) {
  json list = json::array();
  for (const auto& [code, message] : errors) list.push_back({{"code", code}, {"message", message}});
  std::cerr << json{{"errors", list}}.dump() << "\n";
}

// JSON has no infinity; write it as a string.
json Number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json TestJson(const gbbench::TestResult& t) {
  return {{"statistic", Number(t.statistic)}, {"p_value", t.p_value}, {"method", t.method},
          {"alternative", gbbench::AlternativeName(t.alternative)}, {"alpha", t.alpha},
          {"n", t.n}};
}

int Run(const std::string& config_path, int threads, bool quiet) {
  gbbench::ExperimentConfig config = gbbench::ExperimentConfig::FromFile(config_path);
  if (threads > 0) config.threads = threads;
  auto progress = [](const std::string& line) { std::cerr << line << "\n"; };
  const gbbench::ExperimentReport report =
      quiet ? gbbench::RunExperiment(config) : gbbench::RunExperiment(config, progress);
  const std::vector<std::string> files = gbbench::EmitReport(report, config.output_dir);
  int failures = static_cast<int>(report.errors.size());
  for (const auto& c : report.cells) {
    for (const auto& f : c.folds) failures += f.ok() ? 0 : 1;
  }
  std::cout << json{{"output_dir", config.output_dir},
                    {"files", files.size()},
                    {"failures", failures},
                    {"fold_plans_identical", gbbench::FoldPlansIdentical(report)}}
                   .dump()
            << "\n";
  return 0;
}

int Report(const std::string& dir, const std::string& format) {
  const auto path = std::filesystem::path(dir) / "results.json";
  const gbbench::ExperimentReport report = gbbench::ExperimentReport::FromJson(ReadAll(path));
  const auto fmt = format == "md" ? gbbench::ReportFormat::kMarkdown : gbbench::ReportFormat::kCsv;
  const std::vector<std::string> files = gbbench::EmitReport(report, dir, fmt);
  if (fmt == gbbench::ReportFormat::kMarkdown) {
    std::cout << ReadAll((std::filesystem::path(dir) / "digest.md").string());
  } else {
    for (const std::string& f : files) std::cout << f << "\n";
  }
  return 0;
}

int Cd(int k, int d, double alpha) {
  const double cd = gbbench::NemenyiCd(k, d, alpha);
  std::cout << json{{"k", k}, {"d", d}, {"alpha", alpha}, {"q", gbbench::NemenyiQ(k, alpha)},
                    {"cd", cd}}
                   .dump()
            << "\n";
  return 0;
}

int Compare(const std::string& path, const std::string& test, bool lower_better, double alpha,
            const std::string& alternative) {
  const gbbench::ScoreMatrix scores = gbbench::ScoreMatrix::FromCsv(ReadAll(path));
  scores.Validate();
  const bool higher = !lower_better;
  if (test == "wilcoxon") {
    if (scores.models.size() != 2) {
      Fail(ErrorCode::kParameter, "wilcoxon compares exactly two model columns");
    }
    std::vector<double> a;
    std::vector<double> b;
    for (const auto& row : scores.values) {
      a.push_back(row[0]);
      b.push_back(row[1]);
    }
    gbbench::Alternative alt = gbbench::Alternative::kTwoSided;
    if (alternative == "greater") alt = gbbench::Alternative::kGreater;
    if (alternative == "less") alt = gbbench::Alternative::kLess;
    const gbbench::TestResult t =
        gbbench::WilcoxonSignedRank(a, b, alt, gbbench::WilcoxonMethod::kAuto, alpha);
    json out = TestJson(t);
    out["models"] = scores.models;
    std::cout << out.dump() << "\n";
    return 0;
  }
  const gbbench::FriedmanResult f = gbbench::FriedmanTest(scores, higher, alpha);
  const int k = static_cast<int>(scores.models.size());
  const int d = static_cast<int>(scores.datasets.size());
  json out{{"models", scores.models},
           {"mean_ranks", f.mean_ranks},
           {"friedman", TestJson(f.chi_square)},
           {"iman_davenport", TestJson(f.iman_davenport)}};
  if (k <= 20 && (alpha == 0.05 || alpha == 0.10)) {
    const double cd = gbbench::NemenyiCd(k, d, alpha);
    out["cd"] = cd;
    json pairs = json::array();
    const auto sig = gbbench::NemenyiSignificance(f.mean_ranks, cd);
    const bool gate = f.chi_square.p_value <= alpha;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        pairs.push_back({{"a", scores.models[static_cast<size_t>(i)]},
                         {"b", scores.models[static_cast<size_t>(j)]},
                         {"significant", gate && sig[static_cast<size_t>(i)][static_cast<size_t>(j)]}});
      }
    }
    out["nemenyi"] = pairs;
  }
  std::cout << out.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradient boosting benchmark harness"};
  app.require_subcommand(1);

  std::string config_path;
  int threads = 0;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "run an experiment config and write its report");
  run->add_option("config", config_path, "experiment config (JSON)")->required();
  run->add_option("--threads", threads, "worker threads (default: GBBENCH_THREADS or all cores)");
  run->add_flag("--quiet", quiet, "no progress lines on stderr");

  std::string results_dir;
  std::string format = "csv";
  auto* report = app.add_subcommand("report", "re-emit report files from results.json");
  report->add_option("results_dir", results_dir)->required();
  report->add_option("--format", format)->check(CLI::IsMember({"csv", "md"}));

  int k = 0;
  int d = 0;
  double alpha = 0.05;
  auto* cd = app.add_subcommand("cd", "Nemenyi critical difference");
  cd->add_option("--k", k, "number of models")->required();
  cd->add_option("--d", d, "number of datasets")->required();
  cd->add_option("--alpha", alpha)->check(CLI::IsMember({0.05, 0.10}));

  std::string scores_path;
  std::string test = "friedman";
  bool lower_better = false;
  double compare_alpha = 0.05;
  std::string alternative = "two-sided";
  auto* compare = app.add_subcommand("compare", "Wilcoxon or Friedman on a score matrix CSV");
  compare->add_option("scores", scores_path, "rows = datasets, columns = models")->required();
  compare->add_option("--test", test)->check(CLI::IsMember({"wilcoxon", "friedman"}));
  compare->add_flag("--lower-better", lower_better, "scores are losses");
  compare->add_option("--alpha", compare_alpha);
  compare->add_option("--alternative", alternative)
      ->check(CLI::IsMember({"two-sided", "greater", "less"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    PrintErrors({{"usage_error", e.what()}});
    return 2;
  }

  try {
    if (*run) return Run(config_path, threads, quiet);
    if (*report) return Report(results_dir, format);
    if (*cd) return Cd(k, d, alpha);
    if (*compare) return Compare(scores_path, test, lower_better, compare_alpha, alternative);
  } catch (const gbbench::Error& e) {
    PrintErrors({{std::string(gbbench::ErrorCodeName(e.code())), e.what()}});
    return 1;
  } catch (const std::exception& e) {
    PrintErrors({{"internal_error", e.what()}});
    return 1;
  }
  return 1;
}
