// Copyright 2026 The Sepsisflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sepsisflow/gbdt/model.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sepsisflow::gbdt {
namespace {

using nlohmann::json;

constexpr std::string_view kFormatName = "sepsisflow-gbdt";
constexpr int kFormatVersion = 1;
// Recursion guard for hostile inputs when max_depth is not declared.
constexpr int kHardDepthLimit = 256;

class TreeParser {
 public:
  TreeParser(std::size_t num_features, std::optional<int> max_depth)
      : num_features_(num_features), max_depth_(max_depth) {}

  DecisionTree Parse(const json& root, const std::string& location) {
    DecisionTree tree;
    ParseNode(root, location, 0, tree);
    return tree;
  }

 private:
  std::int32_t ParseNode(const json& j, const std::string& location, int depth,
                         DecisionTree& tree) {
    if (!j.is_object()) throw MalformedModel(location, "node must be an object");
    if (depth > (max_depth_ ? *max_depth_ : kHardDepthLimit)) {
      throw MalformedModel(location, "tree deeper than max_depth");
    }
    if (const auto leaf = j.find("leaf"); leaf != j.end()) {
      if (j.contains("feature")) {
        throw MalformedModel(location, "node has both 'leaf' and 'feature'");
      }
      if (!leaf->is_number() || !std::isfinite(leaf->get<double>())) {
        throw MalformedModel(location + ".leaf", "leaf value must be a finite number");
      }
      return tree.AddLeaf(leaf->get<double>());
    }

    const auto feature = j.find("feature");
    if (feature == j.end()) throw MalformedModel(location, "node has neither 'leaf' nor 'feature'");
    if (!feature->is_number_integer()) {
      throw MalformedModel(location + ".feature", "feature index must be an integer");
    }
    const auto index = feature->get<std::int64_t>();
    if (index < 0 || static_cast<std::size_t>(index) >= num_features_) {
      throw MalformedModel(location + ".feature",
                           "feature index " + std::to_string(index) + " out of range for " +
                               std::to_string(num_features_) + " features");
    }
    const auto threshold = j.find("threshold");
    if (threshold == j.end() || !threshold->is_number() ||
        std::isnan(threshold->get<double>())) {
      throw MalformedModel(location + ".threshold", "threshold must be a number");
    }
    bool default_left = true;
    if (const auto dl = j.find("default_left"); dl != j.end()) {
      if (!dl->is_boolean()) throw MalformedModel(location + ".default_left", "must be a boolean");
      default_left = dl->get<bool>();
    }
    for (const char* child : {"left", "right"}) {
      if (!j.contains(child)) throw MalformedModel(location, std::string("missing '") + child + "'");
    }

    const std::int32_t node =
        tree.AddSplit(static_cast<std::int32_t>(index), threshold->get<double>(), default_left);
    const std::int32_t left = ParseNode(j.at("left"), location + ".left", depth + 1, tree);
    const std::int32_t right = ParseNode(j.at("right"), location + ".right", depth + 1, tree);
    tree.SetChildren(node, left, right);
    return node;
  }

  std::size_t num_features_;
  std::optional<int> max_depth_;
};

template <typename T>
std::optional<T> OptionalField(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw MalformedModel(key, "wrong type");
  }
}

}  // namespace

int DecisionTree::Depth() const {
  if (feature_.empty()) return 0;
  std::vector<std::pair<std::int32_t, int>> stack = {{0, 0}};
  int depth = 0;
  while (!stack.empty()) {
    const auto [node, d] = stack.back();
    stack.pop_back();
    depth = std::max(depth, d);
    if (left_[node] >= 0) {
      stack.emplace_back(left_[node], d + 1);
      stack.emplace_back(right_[node], d + 1);
    }
  }
  return depth;
}

std::int32_t DecisionTree::AddLeaf(double value) {
  feature_.push_back(-1);
  threshold_.push_back(0.0);
  default_left_.push_back(1);
  left_.push_back(-1);
  right_.push_back(-1);
  value_.push_back(value);
  return static_cast<std::int32_t>(feature_.size() - 1);
}

std::int32_t DecisionTree::AddSplit(std::int32_t feature, double threshold, bool default_left) {
  feature_.push_back(feature);
  threshold_.push_back(threshold);
  default_left_.push_back(default_left ? 1 : 0);
  left_.push_back(-1);
  right_.push_back(-1);
  value_.push_back(0.0);
  return static_cast<std::int32_t>(feature_.size() - 1);
}

void DecisionTree::SetChildren(std::int32_t node, std::int32_t left, std::int32_t right) {
  left_[node] = left;
  right_[node] = right;
}

std::optional<std::size_t> TreeEnsembleModel::FeatureIndex(std::string_view name) const {
  for (std::size_t i = 0; i < feature_names.size(); ++i) {
    if (feature_names[i] == name) return i;
  }
  return std::nullopt;
}

TreeEnsembleModel ParseModel(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw MalformedModel("$", e.what());
  }
  if (!j.is_object()) throw MalformedModel("$", "model must be a JSON object");

  if (const auto format = OptionalField<std::string>(j, "format");
      format && *format != kFormatName) {
    throw MalformedModel("format", "expected '" + std::string(kFormatName) + "'");
  }
  if (const auto version = OptionalField<int>(j, "format_version");
      version && *version != kFormatVersion) {
    throw MalformedModel("format_version", "unsupported version " + std::to_string(*version));
  }

  TreeEnsembleModel model;
  const auto objective = OptionalField<std::string>(j, "objective");
  if (!objective) throw MalformedModel("objective", "missing");
  if (*objective != "binary_logistic") throw UnsupportedObjective(*objective);
  model.objective = Objective::kBinaryLogistic;

  const auto base_score = OptionalField<double>(j, "base_score");
  if (!base_score || !std::isfinite(*base_score)) {
    throw MalformedModel("base_score", "must be a finite number");
  }
  model.base_score = *base_score;

  const auto names = j.find("feature_names");
  if (names == j.end() || !names->is_array()) {
    throw MalformedModel("feature_names", "must be an array of strings");
  }
  for (std::size_t i = 0; i < names->size(); ++i) {
    if (!(*names)[i].is_string()) {
      throw MalformedModel("feature_names[" + std::to_string(i) + "]", "must be a string");
    }
    model.feature_names.push_back((*names)[i].get<std::string>());
  }

  model.metadata.model_version = OptionalField<std::string>(j, "model_version").value_or("unversioned");
  model.metadata.n_estimators = OptionalField<int>(j, "n_estimators");
  model.metadata.max_depth = OptionalField<int>(j, "max_depth");
  model.metadata.learning_rate = OptionalField<double>(j, "learning_rate");
  if (model.metadata.max_depth && *model.metadata.max_depth < 0) {
    throw MalformedModel("max_depth", "must be non-negative");
  }

  const auto trees = j.find("trees");
  if (trees == j.end() || !trees->is_array()) throw MalformedModel("trees", "must be an array");
  TreeParser parser(model.feature_names.size(), model.metadata.max_depth);
  model.trees.reserve(trees->size());
  for (std::size_t t = 0; t < trees->size(); ++t) {
    model.trees.push_back(parser.Parse((*trees)[t], "trees[" + std::to_string(t) + "]"));
  }
  if (model.metadata.n_estimators &&
      static_cast<std::size_t>(*model.metadata.n_estimators) != model.trees.size()) {
    throw MalformedModel("n_estimators", "declares " + std::to_string(*model.metadata.n_estimators) +
                                             " trees but " + std::to_string(model.trees.size()) +
                                             " are present");
  }
  return model;
}

TreeEnsembleModel LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io_error", "cannot read model file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseModel(buffer.str());
}

double PredictMargin(const TreeEnsembleModel& model, const FeatureVector& features) {
  if (features.size() != model.feature_names.size()) {
    throw Error("feature_length_mismatch",
                "vector has " + std::to_string(features.size()) + " entries, model expects " +
                    std::to_string(model.feature_names.size()));
  }
  double margin = model.base_score;
  for (const auto& tree : model.trees) margin += tree.Evaluate(features);
  return margin;
}

double Sigmoid(double margin) { return 1.0 / (1.0 + std::exp(-margin)); }

double PredictProbability(const TreeEnsembleModel& model, const FeatureVector& features) {
  return Sigmoid(PredictMargin(model, features));
}

}  // namespace sepsisflow::gbdt
