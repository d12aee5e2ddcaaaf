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

// Tables that drive the preprocessing pipeline: header aliases,
// physiological bounds, SIRS criteria, partial-SOFA bands and imputation
// fallbacks. The built-in default is config/clinical.json, embedded at
// build time.

#ifndef SEPSISFLOW_CLINICAL_CONFIG_H_
#define SEPSISFLOW_CLINICAL_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sepsisflow/common/error.h"

namespace sepsisflow::clinical {

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& detail)
      : Error("invalid_config", detail) {}
};

struct Bound {
  double lo = 0.0;
  double hi = 0.0;
  bool Contains(double v) const { return v >= lo && v <= hi; }
  bool operator==(const Bound&) const = default;
};

enum class Comparison { kGreater, kLess };

struct SirsCondition {
  std::string variable;
  Comparison op = Comparison::kGreater;
  double value = 0.0;
  bool operator==(const SirsCondition&) const = default;
};

// A criterion scores one point when any of its conditions holds on a
// present input.
struct SirsCriterion {
  std::string name;
  std::vector<SirsCondition> any_of;
  bool operator==(const SirsCriterion&) const = default;
};

enum class CutoffDirection { kBelow, kAtOrAbove };

// Sub-score = number of cutoffs crossed by the input (or by the ratio
// variable/denominator when a denominator is given).
struct SofaSubscore {
  std::string name;
  std::string variable;
  std::optional<std::string> denominator;
  CutoffDirection direction = CutoffDirection::kBelow;
  std::vector<double> cutoffs;
  bool operator==(const SofaSubscore&) const = default;
};

struct ClinicalConfig {
  std::string transform_version;
  std::map<std::string, std::string> column_aliases;
  std::map<std::string, Bound> bounds;
  std::vector<SirsCriterion> sirs;
  std::vector<SofaSubscore> sofa;
  std::map<std::string, double> fallback;

  std::optional<double> Fallback(const std::string& variable) const;
  // Canonical name for a header cell; unaliased names pass through.
  std::string ResolveAlias(const std::string& column) const;

  static const ClinicalConfig& Default();
  static ClinicalConfig FromJson(const nlohmann::json& j);
  static ClinicalConfig Load(const std::filesystem::path& path);

  bool operator==(const ClinicalConfig&) const = default;
};

nlohmann::json ToJson(const ClinicalConfig& config);

}  // namespace sepsisflow::clinical

#endif  // SEPSISFLOW_CLINICAL_CONFIG_H_
