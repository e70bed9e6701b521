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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "gbbench/bench.h"
#include "gbbench/error.h"

namespace gbbench {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string Num(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string Fixed(double v, int digits) {
  if (!std::isfinite(v)) return Num(v).empty() ? "n/a" : Num(v);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string Field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Row(const std::vector<std::string>& fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += Field(fields[i]);
  }
  return out + "\n";
}

std::string ColumnName(const std::string& model, const std::string& regime) {
  return model + "_" + regime;
}

std::string ParamsText(const ParamConfig& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k + "=" + Num(v);
  }
  return out;
}

void WriteFile(const std::filesystem::path& path, const std::string& text,
               std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) Fail(ErrorCode::kIo, "failed writing '" + path.string() + "'");
  written.push_back(path.string());
}

std::string FoldsCsv(const ExperimentReport& r) {
  std::vector<std::string> header = {"dataset", "model", "regime", "fold"};
  for (const std::string& m : r.metrics) header.push_back(m);
  for (const char* h : {"fit_seconds", "tune_seconds", "n_trials", "failed_trials", "best_params"}) {
    header.push_back(h);
  }
  std::string out = Row(header);
  for (const CellResult& c : r.cells) {
    for (const FoldRecord& f : c.folds) {
      if (!f.ok()) continue;
      std::vector<std::string> row = {c.dataset, c.model, c.regime, std::to_string(f.fold)};
      for (const std::string& m : r.metrics) {
        const auto it = f.metrics.find(m);
        row.push_back(it == f.metrics.end() ? "" : Num(it->second));
      }
      row.push_back(Num(f.fit_seconds));
      row.push_back(Num(f.tune_seconds));
      row.push_back(std::to_string(f.n_trials));
      row.push_back(std::to_string(f.failed_trials));
      row.push_back(ParamsText(f.best_params));
      out += Row(row);
    }
  }
  return out;
}

std::string ErrorsCsv(const ExperimentReport& r) {
  std::string out = Row({"dataset", "model", "regime", "fold", "error"});
  for (const std::string& e : r.errors) out += Row({"", "", "", "", e});
  for (const CellResult& c : r.cells) {
    for (const FoldRecord& f : c.folds) {
      if (!f.ok()) out += Row({c.dataset, c.model, c.regime, std::to_string(f.fold), f.error});
    }
  }
  return out;
}

std::string SummaryCsv(const ExperimentReport& r) {
  std::vector<std::string> header = {"dataset", "model", "regime", "n_folds"};
  for (const std::string& m : r.metrics) {
    header.push_back(m + "_mean");
    header.push_back(m + "_sd");
  }
  header.push_back("fit_seconds_mean");
  header.push_back("tune_seconds_mean");
  std::string out = Row(header);
  for (const CellResult& c : r.cells) {
    const size_t ok = static_cast<size_t>(
        std::count_if(c.folds.begin(), c.folds.end(), [](const FoldRecord& f) { return f.ok(); }));
    std::vector<std::string> row = {c.dataset, c.model, c.regime, std::to_string(ok)};
    for (const std::string& m : r.metrics) {
      row.push_back(Num(c.Mean(m)));
      row.push_back(Num(c.Sd(m)));
    }
    row.push_back(Num(c.MeanFitSeconds()));
    row.push_back(Num(c.MeanTuneSeconds()));
    out += Row(row);
  }
  return out;
}

bool HasRegime(const ExperimentReport& r, const std::string& regime) {
  return std::find(r.regimes.begin(), r.regimes.end(), regime) != r.regimes.end();
}

std::string PctDiffCsv(const ExperimentReport& r) {
  std::string out = Row({"dataset", "model", "regime", "baseline", "metric", "mean", "baseline_mean",
                         "mean_pct", "sd", "baseline_sd", "sd_pct"});
  if (!HasRegime(r, "none")) return out;
  for (const CellResult& c : r.cells) {
    if (c.regime == "none") continue;
    const CellResult* base = r.Find(c.dataset, c.model, "none");
    if (!base) continue;
    for (const std::string& m : r.metrics) {
      const double mt = c.Mean(m);
      const double mb = base->Mean(m);
      const double st = c.Sd(m);
      const double sb = base->Sd(m);
      out += Row({c.dataset, c.model, c.regime, "none", m, Num(mt), Num(mb),
                  Num(PercentDifference(mt, mb)), Num(st), Num(sb), Num(PercentDifference(st, sb))});
    }
  }
  return out;
}

std::string RanksCsv(const std::vector<RankTable>& tables) {
  std::string out = Row({"metric", "model", "mean_rank", "num_models", "num_datasets", "alpha", "cd",
                         "friedman_chi2", "friedman_p", "iman_davenport_f", "iman_davenport_p",
                         "significantly_different_from"});
  for (const RankTable& t : tables) {
    for (size_t i = 0; i < t.columns.size(); ++i) {
      std::string diff;
      for (size_t j = 0; j < t.columns.size(); ++j) {
        if (!t.significant.empty() && t.significant[i][j]) {
          if (!diff.empty()) diff += ';';
          diff += t.columns[j];
        }
      }
      const bool f = t.friedman.has_value();
      out += Row({t.metric, t.columns[i], Num(t.mean_ranks[i]), std::to_string(t.columns.size()),
                  std::to_string(t.num_datasets), Num(t.alpha), Num(t.cd),
                  f ? Num(t.friedman->chi_square.statistic) : "",
                  f ? Num(t.friedman->chi_square.p_value) : "",
                  f ? Num(t.friedman->iman_davenport.statistic) : "",
                  f ? Num(t.friedman->iman_davenport.p_value) : "", diff});
    }
  }
  return out;
}

std::string NemenyiCsv(const std::vector<RankTable>& tables) {
  std::string out =
      Row({"metric", "model_a", "model_b", "rank_difference", "cd", "significant"});
  for (const RankTable& t : tables) {
    for (size_t i = 0; i < t.columns.size(); ++i) {
      for (size_t j = i + 1; j < t.columns.size(); ++j) {
        const bool sig = !t.significant.empty() && t.significant[i][j];
        out += Row({t.metric, t.columns[i], t.columns[j],
                    Num(std::abs(t.mean_ranks[i] - t.mean_ranks[j])), Num(t.cd),
                    sig ? "1" : "0"});
      }
    }
  }
  return out;
}

// Paired fold scores of a tuned cell against its untuned baseline.
std::string WilcoxonCsv(const ExperimentReport& r) {
  std::string out = Row({"dataset", "model", "regime", "baseline", "metric", "n", "statistic",
                         "p_value", "method", "note"});
  if (!HasRegime(r, "none")) return out;
  for (const CellResult& c : r.cells) {
    if (c.regime == "none") continue;
    const CellResult* base = r.Find(c.dataset, c.model, "none");
    if (!base) continue;
    for (const std::string& m : r.metrics) {
      std::vector<double> a;
      std::vector<double> b;
      for (const FoldRecord& f : c.folds) {
        for (const FoldRecord& g : base->folds) {
          if (f.fold == g.fold && f.ok() && g.ok()) {
            a.push_back(f.metrics.at(m));
            b.push_back(g.metrics.at(m));
          }
        }
      }
      try {
        const TestResult t = WilcoxonSignedRank(a, b, Alternative::kTwoSided);
        out += Row({c.dataset, c.model, c.regime, "none", m, std::to_string(t.n),
                    Num(t.statistic), Num(t.p_value), t.method, ""});
      } catch (const Error& e) {
        out += Row({c.dataset, c.model, c.regime, "none", m, "0", "", "", "", e.what()});
      }
    }
  }
  return out;
}

std::string Digest(const ExperimentReport& r, const std::vector<RankTable>& tables) {
  std::ostringstream md;
  md << "# Benchmark digest\n\n";
  md << "Datasets: " << r.datasets.size() << ", models: " << r.models.size()
     << ", regimes: " << r.regimes.size() << ", outer folds: " << r.outer_k
     << ", seed: " << r.seed << "\n\n";
  md << "Identical outer folds across all cells: " << (FoldPlansIdentical(r) ? "yes" : "NO")
     << "\n\n";
  size_t failures = r.errors.size();
  for (const CellResult& c : r.cells) {
    for (const FoldRecord& f : c.folds) failures += f.ok() ? 0 : 1;
  }
  md << "Recorded failures: " << failures << "\n\n";

  md << "## Summary (mean ± sd over outer folds)\n\n";
  md << "| dataset | model | regime |";
  for (const std::string& m : r.metrics) md << ' ' << m << " |";
  md << " fit s | tune s |\n|---|---|---|";
  for (size_t i = 0; i < r.metrics.size() + 2; ++i) md << "---|";
  md << "\n";
  for (const CellResult& c : r.cells) {
    md << "| " << c.dataset << " | " << c.model << " | " << c.regime << " |";
    for (const std::string& m : r.metrics) {
      md << ' ' << Fixed(c.Mean(m), 4) << " ± " << Fixed(c.Sd(m), 4) << " |";
    }
    md << ' ' << Fixed(c.MeanFitSeconds(), 3) << " | " << Fixed(c.MeanTuneSeconds(), 3) << " |\n";
  }

  if (HasRegime(r, "none")) {
    md << "\n## Change against untuned baseline (%)\n\n";
    md << "| dataset | model | regime |";
    for (const std::string& m : r.metrics) md << ' ' << m << " |";
    md << "\n|---|---|---|";
    for (size_t i = 0; i < r.metrics.size(); ++i) md << "---|";
    md << "\n";
    for (const CellResult& c : r.cells) {
      if (c.regime == "none") continue;
      const CellResult* base = r.Find(c.dataset, c.model, "none");
      if (!base) continue;
      md << "| " << c.dataset << " | " << c.model << " | " << c.regime << " |";
      for (const std::string& m : r.metrics) {
        md << ' ' << Fixed(PercentDifference(c.Mean(m), base->Mean(m)), 2) << " |";
      }
      md << "\n";
    }
  }

  md << "\n## Friedman ranks\n\n";
  for (const RankTable& t : tables) {
    md << "### " << t.metric << "\n\n";
    md << "CD (alpha " << Num(t.alpha) << ", k " << t.columns.size() << ", D " << t.num_datasets
       << "): " << Fixed(t.cd, 3) << "\n\n";
    if (t.friedman) {
      md << "Friedman chi2 " << Fixed(t.friedman->chi_square.statistic, 3) << ", p "
         << Num(t.friedman->chi_square.p_value) << "; Iman-Davenport F "
         << Fixed(t.friedman->iman_davenport.statistic, 3) << ", p "
         << Num(t.friedman->iman_davenport.p_value) << "\n\n";
    } else {
      md << "Friedman test not computed (needs at least 2 complete datasets).\n\n";
    }
    std::vector<size_t> order(t.columns.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return t.mean_ranks[a] > t.mean_ranks[b]; });
    md << "| model | mean rank |\n|---|---|\n";
    for (size_t i : order) md << "| " << t.columns[i] << " | " << Fixed(t.mean_ranks[i], 3) << " |\n";
    md << "\n";
  }
  return md.str();
}

json FoldToJson(const FoldRecord& f) {
  json j;
  j["fold"] = f.fold;
  j["metrics"] = f.metrics;
  j["fit_seconds"] = f.fit_seconds;
  j["tune_seconds"] = f.tune_seconds;
  j["n_trials"] = f.n_trials;
  j["failed_trials"] = f.failed_trials;
  j["best_params"] = f.best_params;
  j["error"] = f.error;
  return j;
}

FoldRecord FoldFromJson(const json& j) {
  FoldRecord f;
  f.fold = j.at("fold").get<int>();
  f.metrics = j.at("metrics").get<std::map<std::string, double>>();
  f.fit_seconds = j.at("fit_seconds").get<double>();
  f.tune_seconds = j.at("tune_seconds").get<double>();
  f.n_trials = j.at("n_trials").get<int>();
  f.failed_trials = j.at("failed_trials").get<int>();
  f.best_params = j.at("best_params").get<ParamConfig>();
  f.error = j.at("error").get<std::string>();
  return f;
}

}  // namespace

std::vector<double> CellResult::Values(const std::string& metric) const {
  std::vector<double> out;
  for (const FoldRecord& f : folds) {
    if (!f.ok()) continue;
    const auto it = f.metrics.find(metric);
    if (it != f.metrics.end()) out.push_back(it->second);
  }
  return out;
}

double CellResult::Mean(const std::string& metric) const {
  const std::vector<double> v = Values(metric);
  if (v.empty()) return kNaN;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double CellResult::Sd(const std::string& metric) const {
  const std::vector<double> v = Values(metric);
  if (v.empty()) return kNaN;
  if (v.size() < 2) return 0.0;
  const double mean = Mean(metric);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double CellResult::MeanFitSeconds() const {
  double s = 0.0;
  int n = 0;
  for (const FoldRecord& f : folds) {
    if (f.ok()) {
      s += f.fit_seconds;
      ++n;
    }
  }
  return n ? s / n : kNaN;
}

double CellResult::MeanTuneSeconds() const {
  double s = 0.0;
  int n = 0;
  for (const FoldRecord& f : folds) {
    if (f.ok()) {
      s += f.tune_seconds;
      ++n;
    }
  }
  return n ? s / n : kNaN;
}

const CellResult* ExperimentReport::Find(const std::string& dataset, const std::string& model,
                                         const std::string& regime) const {
  for (const CellResult& c : cells) {
    if (c.dataset == dataset && c.model == model && c.regime == regime) return &c;
  }
  return nullptr;
}

std::string ExperimentReport::ToJson() const {
  json j;
  j["format"] = "gbbench-report";
  j["version"] = 1;
  j["datasets"] = datasets;
  j["models"] = models;
  j["regimes"] = regimes;
  j["metrics"] = metrics;
  j["outer_k"] = outer_k;
  j["seed"] = seed;
  j["errors"] = errors;
  json cs = json::array();
  for (const CellResult& c : cells) {
    json cj;
    cj["dataset"] = c.dataset;
    cj["model"] = c.model;
    cj["regime"] = c.regime;
    cj["fold_plan"] = c.fold_plan;
    json fs = json::array();
    for (const FoldRecord& f : c.folds) fs.push_back(FoldToJson(f));
    cj["folds"] = std::move(fs);
    cs.push_back(std::move(cj));
  }
  j["cells"] = std::move(cs);
  return j.dump(1);
}

ExperimentReport ExperimentReport::FromJson(const std::string& text) {
  ExperimentReport r;
  try {
    const json j = json::parse(text);
    if (j.value("format", "") != "gbbench-report") Fail(ErrorCode::kConfig, "not a report file");
    r.datasets = j.at("datasets").get<std::vector<std::string>>();
    r.models = j.at("models").get<std::vector<std::string>>();
    r.regimes = j.at("regimes").get<std::vector<std::string>>();
    r.metrics = j.at("metrics").get<std::vector<std::string>>();
    r.outer_k = j.at("outer_k").get<int>();
    r.seed = j.at("seed").get<uint64_t>();
    r.errors = j.at("errors").get<std::vector<std::string>>();
    for (const json& cj : j.at("cells")) {
      CellResult c;
      c.dataset = cj.at("dataset").get<std::string>();
      c.model = cj.at("model").get<std::string>();
      c.regime = cj.at("regime").get<std::string>();
      c.fold_plan = cj.at("fold_plan").get<std::string>();
      for (const json& fj : cj.at("folds")) c.folds.push_back(FoldFromJson(fj));
      r.cells.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kConfig, std::string("bad report file: ") + e.what());
  }
  return r;
}

double PercentDifference(double tuned, double baseline) {
  if (baseline == 0.0) return kNaN;
  return 100.0 * (tuned - baseline) / baseline;
}

RankTable BuildRankTable(const ExperimentReport& report, const std::string& metric,
                         double alpha) {
  RankTable t;
  t.metric = metric;
  t.alpha = alpha;
  for (const std::string& m : report.models) {
    for (const std::string& g : report.regimes) t.columns.push_back(ColumnName(m, g));
  }
  ScoreMatrix scores;
  scores.models = t.columns;
  for (const std::string& d : report.datasets) {
    std::vector<double> row;
    for (const std::string& m : report.models) {
      for (const std::string& g : report.regimes) {
        const CellResult* c = report.Find(d, m, g);
        row.push_back(c ? c->Mean(metric) : kNaN);
      }
    }
    // A dataset enters the ranking only when every column has a score.
    if (std::all_of(row.begin(), row.end(), [](double v) { return std::isfinite(v); })) {
      scores.datasets.push_back(d);
      scores.values.push_back(std::move(row));
    }
  }
  t.num_datasets = static_cast<int>(scores.datasets.size());
  const int k = static_cast<int>(t.columns.size());
  t.mean_ranks.assign(t.columns.size(), kNaN);
  if (t.num_datasets == 0 || k < 2) return t;
  t.mean_ranks = t.num_datasets >= 2 ? AverageRanks(scores, HigherIsBetter(metric))
                                     : RankRow(scores.values[0], HigherIsBetter(metric));
  if (k <= 20) t.cd = NemenyiCd(k, t.num_datasets, alpha);
  if (t.num_datasets >= 2) {
    t.friedman = FriedmanTest(scores, HigherIsBetter(metric), alpha);
    // Pairwise flags only after the omnibus test rejects.
    if (k <= 20 && t.friedman->chi_square.p_value <= alpha) {
      t.significant = NemenyiSignificance(t.mean_ranks, t.cd);
    }
  }
  return t;
}

bool FoldPlansIdentical(const ExperimentReport& report) {
  std::map<std::string, std::string> first;
  for (const CellResult& c : report.cells) {
    const auto [it, inserted] = first.emplace(c.dataset, c.fold_plan);
    if (!inserted && it->second != c.fold_plan) return false;
  }
  return true;
}

std::vector<std::string> EmitReport(const ExperimentReport& report, const std::string& dir,
                                    ReportFormat format) {
  if (report.models.empty() || report.cells.empty()) {
    Fail(ErrorCode::kNothingToReport, "nothing to report");
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) Fail(ErrorCode::kIo, "cannot create output directory '" + dir + "'");

  std::vector<RankTable> tables;
  for (const std::string& m : report.metrics) tables.push_back(BuildRankTable(report, m));

  std::vector<std::string> written;
  const fs::path root(dir);
  if (format != ReportFormat::kMarkdown) {
    WriteFile(root / "folds.csv", FoldsCsv(report), written);
    WriteFile(root / "errors.csv", ErrorsCsv(report), written);
    WriteFile(root / "summary.csv", SummaryCsv(report), written);
    WriteFile(root / "pct_diff.csv", PctDiffCsv(report), written);
    WriteFile(root / "ranks.csv", RanksCsv(tables), written);
    WriteFile(root / "nemenyi.csv", NemenyiCsv(tables), written);
    WriteFile(root / "wilcoxon.csv", WilcoxonCsv(report), written);
    WriteFile(root / "results.json", report.ToJson(), written);
    // One serialized outer plan per cell, as the cell used it.
    for (const CellResult& c : report.cells) {
      const fs::path plan_dir = root / "plans" / c.dataset;
      fs::create_directories(plan_dir, ec);
      if (ec) Fail(ErrorCode::kIo, "cannot create '" + plan_dir.string() + "'");
      WriteFile(plan_dir / (c.model + "__" + c.regime + ".json"), c.fold_plan, written);
    }
  }
  if (format != ReportFormat::kCsv) WriteFile(root / "digest.md", Digest(report, tables), written);
  return written;
}

}  // namespace gbbench
