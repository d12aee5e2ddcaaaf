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


// Gradient-boosted tree ensembles in the sepsisflow-gbdt JSON format
// (docs/model_format.md) and their evaluation.

#ifndef SEPSISFLOW_GBDT_MODEL_H_
#define SEPSISFLOW_GBDT_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sepsisflow/common/error.h"

namespace sepsisflow::gbdt {

class MalformedModel : public Error {
 public:
  MalformedModel(std::string location, const std::string& detail)
      : Error("malformed_model", location + ": " + detail), location_(std::move(location)) {}
  // JSON path of the offending element, e.g. "trees[3].left.feature".
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

class UnsupportedObjective : public Error {
 public:
  explicit UnsupportedObjective(const std::string& objective)
      : Error("unsupported_objective", "objective '" + objective + "' is not supported") {}
};

// One entry per model feature, in feature_names order; nullopt is absent.
using FeatureVector = std::vector<std::optional<double>>;

enum class Objective { kBinaryLogistic };

// Flat node arrays, root at index 0. A node is a leaf when left[i] < 0.
class DecisionTree {
 public:
  std::size_t size() const { return feature_.size(); }
  bool IsLeaf(std::size_t node) const { return left_[node] < 0; }
  // Longest root-to-leaf path in edges.
  int Depth() const;

  // Leaf value reached by `features`. Goes left when value < threshold, and
  // follows default_left when the value is absent.
  double Evaluate(const FeatureVector& features) const {
    std::int32_t node = 0;
    while (left_[node] >= 0) {
      const auto& v = features[feature_[node]];
      const bool go_left = v ? *v < threshold_[node] : default_left_[node] != 0;
      node = go_left ? left_[node] : right_[node];
    }
    return value_[node];
  }

  std::int32_t feature(std::size_t node) const { return feature_[node]; }
  double threshold(std::size_t node) const { return threshold_[node]; }
  bool default_left(std::size_t node) const { return default_left_[node] != 0; }
  std::int32_t left(std::size_t node) const { return left_[node]; }
  std::int32_t right(std::size_t node) const { return right_[node]; }
  double leaf_value(std::size_t node) const { return value_[node]; }

  // Appends a node and returns its index; children are wired by SetChildren.
  std::int32_t AddLeaf(double value);
  std::int32_t AddSplit(std::int32_t feature, double threshold, bool default_left);
  void SetChildren(std::int32_t node, std::int32_t left, std::int32_t right);

 private:
  std::vector<std::int32_t> feature_;
  std::vector<double> threshold_;
  std::vector<std::uint8_t> default_left_;
  std::vector<std::int32_t> left_;
  std::vector<std::int32_t> right_;
  std::vector<double> value_;
};

struct ModelMetadata {
  std::string model_version;
  std::optional<int> n_estimators;
  std::optional<int> max_depth;
  std::optional<double> learning_rate;
};

// Immutable after parsing; safe to share across threads.
struct TreeEnsembleModel {
  std::vector<DecisionTree> trees;
  double base_score = 0.0;
  std::vector<std::string> feature_names;
  Objective objective = Objective::kBinaryLogistic;
  ModelMetadata metadata;

  std::optional<std::size_t> FeatureIndex(std::string_view name) const;
};

TreeEnsembleModel ParseModel(std::string_view json_text);
TreeEnsembleModel LoadModel(const std::filesystem::path& path);

// base_score plus the reached leaf of every tree, summed in tree order.
double PredictMargin(const TreeEnsembleModel& model, const FeatureVector& features);
double Sigmoid(double margin);
double PredictProbability(const TreeEnsembleModel& model, const FeatureVector& features);

}  // namespace sepsisflow::gbdt

#endif  // SEPSISFLOW_GBDT_MODEL_H_
