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

#include <json.hpp>

#include "gbbench/boost.h"
#include "gbbench/error.h"

namespace gbbench {

namespace {

constexpr int kFormatVersion = 1;

}  // namespace

// Trees are stored as parallel node arrays.
std::string BoostedEnsemble::ToJson() const {
  nlohmann::json j;
  j["format"] = "gbbench-ensemble";
  j["version"] = kFormatVersion;
  j["num_classes"] = num_classes;
  j["class_names"] = class_names;
  j["feature_names"] = feature_names;
  j["nu"] = nu;
  j["f0"] = f0;
  nlohmann::json chains = nlohmann::json::array();
  for (const auto& chain : trees) {
    nlohmann::json list = nlohmann::json::array();
    for (const RegressionTree& t : chain) {
      nlohmann::json tj;
      tj["sparsity_aware"] = t.sparsity_aware;
      std::vector<int32_t> feature, left, right;
      std::vector<double> threshold, weight, gain;
      std::vector<int> default_left;
      for (const TreeNode& n : t.nodes) {
        feature.push_back(n.split_feature);
        threshold.push_back(n.threshold);
        default_left.push_back(n.default_left ? 1 : 0);
        left.push_back(n.left);
        right.push_back(n.right);
        weight.push_back(n.weight);
        gain.push_back(n.gain);
      }
      tj["split_feature"] = feature;
      tj["threshold"] = threshold;
      tj["default_left"] = default_left;
      tj["left"] = left;
      tj["right"] = right;
      tj["weight"] = weight;
      tj["gain"] = gain;
      list.push_back(std::move(tj));
    }
    chains.push_back(std::move(list));
  }
  j["trees"] = std::move(chains);
  return j.dump();
}

BoostedEnsemble BoostedEnsemble::FromJson(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format") != "gbbench-ensemble") Fail(ErrorCode::kIo, "not an ensemble document");
    if (j.at("version").get<int>() != kFormatVersion) {
      Fail(ErrorCode::kIo, "unsupported ensemble version");
    }
    BoostedEnsemble m;
    m.num_classes = j.at("num_classes").get<int>();
    m.class_names = j.at("class_names").get<std::vector<std::string>>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.nu = j.at("nu").get<double>();
    m.f0 = j.at("f0").get<std::vector<double>>();
    for (const auto& chain : j.at("trees")) {
      std::vector<RegressionTree> list;
      for (const auto& tj : chain) {
        RegressionTree t;
        t.sparsity_aware = tj.at("sparsity_aware").get<bool>();
        const auto feature = tj.at("split_feature").get<std::vector<int32_t>>();
        const auto threshold = tj.at("threshold").get<std::vector<double>>();
        const auto default_left = tj.at("default_left").get<std::vector<int>>();
        const auto left = tj.at("left").get<std::vector<int32_t>>();
        const auto right = tj.at("right").get<std::vector<int32_t>>();
        const auto weight = tj.at("weight").get<std::vector<double>>();
        const auto gain = tj.at("gain").get<std::vector<double>>();
        const size_t n = feature.size();
        if (threshold.size() != n || default_left.size() != n || left.size() != n ||
            right.size() != n || weight.size() != n || gain.size() != n) {
          Fail(ErrorCode::kIo, "ragged node arrays");
        }
        for (size_t k = 0; k < n; ++k) {
          TreeNode node;
          node.split_feature = feature[k];
          node.threshold = threshold[k];
          node.default_left = default_left[k] != 0;
          node.left = left[k];
          node.right = right[k];
          node.weight = weight[k];
          node.gain = gain[k];
          t.nodes.push_back(node);
        }
        list.push_back(std::move(t));
      }
      m.trees.push_back(std::move(list));
    }
    if (m.trees.size() != m.f0.size()) Fail(ErrorCode::kIo, "chain count mismatch");
    return m;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kIo, std::string("malformed ensemble json: ") + e.what());
  }
}

}  // namespace gbbench
