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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gbbench/bench.h"
#include "gbbench/error.h"

namespace gbbench {

namespace {

using nlohmann::json;

ParamSpec::Kind KindFromName(const std::string& name) {
  if (name == "choice") return ParamSpec::Kind::kChoice;
  if (name == "uniform") return ParamSpec::Kind::kUniform;
  if (name == "loguniform") return ParamSpec::Kind::kLogUniform;
  Fail(ErrorCode::kConfig, "unknown parameter kind '" + name + "'");
}

ParamSpec SpecFromJson(const json& j) {
  const std::string name = j.at("name").get<std::string>();
  const ParamSpec::Kind kind = KindFromName(j.at("kind").get<std::string>());
  switch (kind) {
    case ParamSpec::Kind::kChoice:
      return ParamSpec::Choice(name, j.at("values").get<std::vector<double>>());
    case ParamSpec::Kind::kUniform:
      return ParamSpec::Uniform(name, j.at("lo").get<double>(), j.at("hi").get<double>());
    case ParamSpec::Kind::kLogUniform:
      return ParamSpec::LogUniform(name, j.at("lo").get<double>(), j.at("hi").get<double>());
  }
  Fail(ErrorCode::kConfig, "bad parameter spec");
}

std::vector<std::string> Strings(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<std::string>>();
}

ModelSpec ModelFromJson(const json& j) {
  if (j.is_string()) return Preset(j.get<std::string>());
  if (!j.is_object()) Fail(ErrorCode::kConfig, "model entries are names or objects");
  ModelSpec m;
  if (j.contains("preset")) m = Preset(j.at("preset").get<std::string>());
  if (j.contains("name")) m.name = j.at("name").get<std::string>();
  if (m.name.empty()) Fail(ErrorCode::kConfig, "model needs a name or a preset");
  if (j.contains("init")) {
    ParamConfig init;
    for (const auto& [k, v] : j.at("init").items()) {
      if (k == "split_method") {
        m.init.tree.split_method = v.get<std::string>() == "histogram" ? SplitMethod::kHistogram
                                                                       : SplitMethod::kExact;
      } else if (k == "growth") {
        const std::string g = v.get<std::string>();
        if (g == "depthwise") {
          m.init.tree.growth = Growth::kDepthWise;
        } else if (g == "leafwise") {
          m.init.tree.growth = Growth::kLeafWise;
        } else if (g == "oblivious") {
          m.init.tree.growth = Growth::kOblivious;
        } else {
          Fail(ErrorCode::kConfig, "unknown growth '" + g + "'");
        }
      } else if (k == "sparsity_aware") {
        m.init.tree.sparsity_aware = v.get<bool>();
      } else {
        init[k] = v.get<double>();
      }
    }
    m.init = ApplyParams(m.init, init);
  }
  if (j.contains("space")) {
    m.space.params.clear();
    for (const json& p : j.at("space")) m.space.params.push_back(SpecFromJson(p));
  }
  return m;
}

RegimeSpec RegimeFromJson(const json& j) {
  RegimeSpec r;
  const std::string name = j.is_string() ? j.get<std::string>() : j.at("name").get<std::string>();
  if (name == "none") {
    r.regime = Regime::kNone;
  } else if (name == "tpe") {
    r.regime = Regime::kTpe;
    r.n_iter = 15;
  } else if (name == "random") {
    r.regime = Regime::kRandom;
    r.n_iter = 30;
  } else {
    Fail(ErrorCode::kConfig, "unknown regime '" + name + "'");
  }
  if (j.is_object() && j.contains("n_iter")) r.n_iter = j.at("n_iter").get<int>();
  return r;
}

std::string Resolve(const std::string& base, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base.empty()) return path;
  return (std::filesystem::path(base) / p).lexically_normal().string();
}

}  // namespace

CsvSchema DatasetSpec::Schema() const {
  CsvSchema s;
  s.label_column = label;
  for (const std::string& c : categorical) s.kinds[c] = ColumnKind::kCategorical;
  for (const std::string& c : text) s.kinds[c] = ColumnKind::kTextDerived;
  s.drop = drop;
  s.text_vocab_size = text_vocab_size;
  return s;
}

std::vector<std::string> PresetNames() { return {"gbm", "xgboost", "lightgbm", "catboost"}; }

ModelSpec Preset(const std::string& name) {
  ModelSpec m;
  m.name = name;
  BoostConfig& c = m.init;
  c.n_estimators = 150;
  c.subsample = 1.0;
  c.colsample = 0.6;
  c.tree.sparsity_aware = true;
  const ParamSpec lr = ParamSpec::LogUniform("learning_rate", 0.01, 0.3);
  const ParamSpec depth = ParamSpec::Choice("max_depth", {2, 3, 4, 5, 8, 10});
  if (name == "gbm") {
    c.learning_rate = 0.1;
    c.tree.growth = Growth::kDepthWise;
    c.tree.split_method = SplitMethod::kExact;
    c.tree.max_depth = 3;
    m.space.params = {depth, lr, ParamSpec::Choice("min_samples_split", {2, 5, 10})};
  } else if (name == "xgboost") {
    c.learning_rate = 0.3;
    c.tree.growth = Growth::kDepthWise;
    c.tree.split_method = SplitMethod::kExact;
    c.tree.max_depth = 6;
    c.tree.lambda_l2 = 1.0;
    m.space.params = {depth, lr, ParamSpec::Uniform("gamma", 0.0, 3.0),
                      ParamSpec::Uniform("reg_alpha", 0.0, 1.0),
                      ParamSpec::Uniform("reg_lambda", 0.0, 3.0)};
  } else if (name == "lightgbm") {
    c.learning_rate = 0.1;
    c.goss = GossParams{0.2, 0.1};
    c.tree.growth = Growth::kLeafWise;
    c.tree.split_method = SplitMethod::kHistogram;
    c.tree.max_bins = 255;
    c.tree.num_leaves = 31;
    c.tree.max_depth = 64;
    m.space.params = {ParamSpec::Choice("num_leaves", {3, 7, 15, 31, 127}),
                      lr,
                      ParamSpec::Uniform("top_rate", 0.1, 0.5),
                      ParamSpec::Uniform("other_rate", 0.05, 0.2),
                      ParamSpec::Uniform("reg_alpha", 0.0, 1.0),
                      ParamSpec::Uniform("reg_lambda", 0.0, 3.0)};
  } else if (name == "catboost") {
    c.learning_rate = 0.1;
    c.tree.growth = Growth::kOblivious;
    c.tree.split_method = SplitMethod::kHistogram;
    c.tree.max_bins = 254;
    c.tree.max_depth = 6;
    c.tree.lambda_l2 = 3.0;
    m.space.params = {depth, ParamSpec::Choice("leaf_estimation_iterations", {1, 10}),
                      ParamSpec::Uniform("l2_leaf_reg", 0.0, 5.0)};
  } else {
    Fail(ErrorCode::kConfig, "unknown model preset '" + name + "'");
  }
  return m;
}

std::string_view RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kNone: return "none";
    case Regime::kTpe: return "tpe";
    case Regime::kRandom: return "random";
  }
  return "unknown";
}

bool HigherIsBetter(const std::string& metric) { return metric != "log_loss"; }

void ExperimentConfig::Validate() const {
  if (outer_k < 2 || inner_k < 2) Fail(ErrorCode::kConfig, "outer_k and inner_k must be >= 2");
  if (datasets.empty()) Fail(ErrorCode::kConfig, "no datasets configured");
  if (models.empty()) Fail(ErrorCode::kNothingToReport, "nothing to report: no models configured");
  if (regimes.empty()) Fail(ErrorCode::kConfig, "no regimes configured");
  std::map<std::string, int> seen;
  for (const DatasetSpec& d : datasets) {
    if (d.name.empty() || d.path.empty() || d.label.empty()) {
      Fail(ErrorCode::kConfig, "datasets need name, path and label");
    }
    if (d.n_estimators < 1) Fail(ErrorCode::kConfig, "n_estimators must be >= 1");
    if (seen["d:" + d.name]++) Fail(ErrorCode::kConfig, "duplicate dataset '" + d.name + "'");
  }
  for (const ModelSpec& m : models) {
    if (seen["m:" + m.name]++) Fail(ErrorCode::kConfig, "duplicate model '" + m.name + "'");
    m.init.Validate();
    m.space.Validate();
  }
  for (const RegimeSpec& r : regimes) {
    if (seen["r:" + r.name()]++) Fail(ErrorCode::kConfig, "duplicate regime '" + r.name() + "'");
    if (r.regime != Regime::kNone && r.n_iter <= 0) {
      Fail(ErrorCode::kConfig, "n_iter must be positive when tuning");
    }
  }
  for (const ModelSpec& m : models) {
    for (const RegimeSpec& r : regimes) {
      if (r.regime != Regime::kNone && m.space.params.empty()) {
        Fail(ErrorCode::kConfig, "model '" + m.name + "' has no search space to tune");
      }
    }
  }
  for (const std::string& metric : metrics) {
    if (std::find(kAllMetrics.begin(), kAllMetrics.end(), metric) == kAllMetrics.end()) {
      Fail(ErrorCode::kConfig, "unknown metric '" + metric + "'");
    }
  }
  if (metrics.empty()) Fail(ErrorCode::kConfig, "no metrics configured");
}

ExperimentConfig ExperimentConfig::FromJson(const std::string& text, const std::string& base_dir) {
  ExperimentConfig c;
  try {
    const json j = json::parse(text);
    for (const json& d : j.at("datasets")) {
      DatasetSpec s;
      s.path = Resolve(base_dir, d.at("path").get<std::string>());
      s.name = d.contains("name") ? d.at("name").get<std::string>()
                                  : std::filesystem::path(s.path).stem().string();
      s.label = d.at("label").get<std::string>();
      s.categorical = Strings(d, "categorical");
      s.text = Strings(d, "text");
      s.drop = Strings(d, "drop");
      if (d.contains("n_estimators")) s.n_estimators = d.at("n_estimators").get<int>();
      if (d.contains("text_vocab_size")) s.text_vocab_size = d.at("text_vocab_size").get<size_t>();
      c.datasets.push_back(std::move(s));
    }
    const json models = j.contains("models") ? j.at("models") : json(PresetNames());
    for (const json& m : models) c.models.push_back(ModelFromJson(m));
    const json regimes = j.contains("regimes") ? j.at("regimes") : json({"none", "tpe", "random"});
    for (const json& r : regimes) c.regimes.push_back(RegimeFromJson(r));
    if (j.contains("outer_k")) c.outer_k = j.at("outer_k").get<int>();
    if (j.contains("inner_k")) c.inner_k = j.at("inner_k").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
    if (j.contains("metrics")) c.metrics = j.at("metrics").get<std::vector<std::string>>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    c.output_dir = Resolve(base_dir, j.value("output_dir", std::string("results")));
  } catch (const json::exception& e) {
    Fail(ErrorCode::kConfig, std::string("bad experiment config: ") + e.what());
  }
  c.Validate();
  return c;
}

ExperimentConfig ExperimentConfig::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return FromJson(ss.str(), std::filesystem::path(path).parent_path().string());
}

int ThreadCap() {
  if (const char* env = std::getenv("GBBENCH_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace gbbench
