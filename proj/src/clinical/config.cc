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

#include "sepsisflow/clinical/config.h"

#include <fstream>
#include <sstream>

#include "sepsisflow/clinical/columns.h"

namespace sepsisflow::clinical {

// Generated from config/clinical.json (see src/clinical/CMakeLists.txt).
extern const char* const kDefaultClinicalConfigJson;

namespace {

using nlohmann::json;

const json& Require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(where + ": missing key '" + key + "'");
  }
  return j.at(key);
}

void RequireCanonical(const std::string& variable, const std::string& where) {
  if (!VariableIndex(variable)) {
    throw ConfigError(where + ": unknown variable '" + variable + "'");
  }
}

}  // namespace

std::optional<double> ClinicalConfig::Fallback(const std::string& variable) const {
  const auto it = fallback.find(variable);
  if (it == fallback.end()) return std::nullopt;
  return it->second;
}

std::string ClinicalConfig::ResolveAlias(const std::string& column) const {
  const auto it = column_aliases.find(column);
  return it == column_aliases.end() ? column : it->second;
}

const ClinicalConfig& ClinicalConfig::Default() {
  static const ClinicalConfig config =
      FromJson(json::parse(kDefaultClinicalConfigJson));
  return config;
}

ClinicalConfig ClinicalConfig::FromJson(const json& j) {
  ClinicalConfig c;
  try {
    c.transform_version = Require(j, "transform_version", "config").get<std::string>();
    for (const auto& [from, to] : Require(j, "column_aliases", "config").items()) {
      c.column_aliases[from] = to.get<std::string>();
    }
    for (const auto& [name, range] : Require(j, "bounds", "config").items()) {
      RequireCanonical(name, "bounds");
      if (!range.is_array() || range.size() != 2) {
        throw ConfigError("bounds." + name + ": expected [lo, hi]");
      }
      Bound b{range[0].get<double>(), range[1].get<double>()};
      if (b.lo > b.hi) throw ConfigError("bounds." + name + ": lo > hi");
      c.bounds[name] = b;
    }
    for (const auto& crit : Require(Require(j, "sirs", "config"), "criteria", "sirs")) {
      SirsCriterion criterion;
      criterion.name = Require(crit, "name", "sirs.criteria").get<std::string>();
      for (const auto& cond : Require(crit, "any_of", "sirs." + criterion.name)) {
        SirsCondition condition;
        condition.variable = Require(cond, "variable", "sirs").get<std::string>();
        RequireCanonical(condition.variable, "sirs." + criterion.name);
        const auto op = Require(cond, "op", "sirs").get<std::string>();
        if (op == ">") {
          condition.op = Comparison::kGreater;
        } else if (op == "<") {
          condition.op = Comparison::kLess;
        } else {
          throw ConfigError("sirs." + criterion.name + ": op must be '>' or '<'");
        }
        condition.value = Require(cond, "value", "sirs").get<double>();
        criterion.any_of.push_back(std::move(condition));
      }
      c.sirs.push_back(std::move(criterion));
    }
    for (const auto& sub : Require(Require(j, "sofa", "config"), "subscores", "sofa")) {
      SofaSubscore s;
      s.name = Require(sub, "name", "sofa.subscores").get<std::string>();
      s.variable = Require(sub, "variable", "sofa." + s.name).get<std::string>();
      RequireCanonical(s.variable, "sofa." + s.name);
      if (sub.contains("denominator")) {
        s.denominator = sub.at("denominator").get<std::string>();
        RequireCanonical(*s.denominator, "sofa." + s.name);
      }
      const auto direction = Require(sub, "direction", "sofa." + s.name).get<std::string>();
      if (direction == "below") {
        s.direction = CutoffDirection::kBelow;
      } else if (direction == "at_or_above") {
        s.direction = CutoffDirection::kAtOrAbove;
      } else {
        throw ConfigError("sofa." + s.name + ": direction must be 'below' or 'at_or_above'");
      }
      s.cutoffs = Require(sub, "cutoffs", "sofa." + s.name).get<std::vector<double>>();
      if (s.cutoffs.empty() || s.cutoffs.size() > 4) {
        throw ConfigError("sofa." + s.name + ": expected 1 to 4 cutoffs");
      }
      c.sofa.push_back(std::move(s));
    }
    for (const auto& [name, value] : Require(j, "fallback", "config").items()) {
      RequireCanonical(name, "fallback");
      c.fallback[name] = value.get<double>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

ClinicalConfig ClinicalConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return FromJson(j);
}

json ToJson(const ClinicalConfig& config) {
  json j;
  j["transform_version"] = config.transform_version;
  j["column_aliases"] = config.column_aliases;
  json bounds = json::object();
  for (const auto& [name, b] : config.bounds) bounds[name] = {b.lo, b.hi};
  j["bounds"] = bounds;
  json criteria = json::array();
  for (const auto& criterion : config.sirs) {
    json any_of = json::array();
    for (const auto& cond : criterion.any_of) {
      any_of.push_back({{"variable", cond.variable},
                        {"op", cond.op == Comparison::kGreater ? ">" : "<"},
                        {"value", cond.value}});
    }
    criteria.push_back({{"name", criterion.name}, {"any_of", any_of}});
  }
  j["sirs"] = {{"criteria", criteria}};
  json subscores = json::array();
  for (const auto& s : config.sofa) {
    json sub = {{"name", s.name},
                {"variable", s.variable},
                {"direction", s.direction == CutoffDirection::kBelow ? "below" : "at_or_above"},
                {"cutoffs", s.cutoffs}};
    if (s.denominator) sub["denominator"] = *s.denominator;
    subscores.push_back(sub);
  }
  j["sofa"] = {{"subscores", subscores}};
  j["fallback"] = config.fallback;
  return j;
}

}  // namespace sepsisflow::clinical
