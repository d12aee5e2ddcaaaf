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

#include "sepsisflow/clinical/psv.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace sepsisflow::clinical {
namespace {

constexpr std::string_view kMissingToken = "NaN";

enum class ColumnKind { kVariable, kIculos, kLabel, kSpill };

struct ColumnSlot {
  std::string name;
  ColumnKind kind = ColumnKind::kSpill;
  std::size_t variable = 0;
};

std::vector<std::string_view> SplitLines(std::string_view content) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == content.size()) break;
    start = end + 1;
  }
  // Trailing blank lines carry no rows.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = line.find('|', start);
    if (bar == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, bar - start));
    start = bar + 1;
  }
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Parses a finite decimal number. `NaN` maps to absent; anything else that
// is not a complete finite number is an error.
Measurement ParseCell(std::string_view cell, const std::string& column, int line) {
  cell = Trim(cell);
  if (cell == kMissingToken) return std::nullopt;
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw PsvError("non_numeric_value",
                   fmt::format("line {}: column '{}' holds non-numeric value '{}'",
                               line, column, cell),
                   line, column);
  }
  return value;
}

int ParseInteger(std::string_view cell, const std::string& column, int line) {
  const Measurement v = ParseCell(cell, column, line);
  if (!v || std::floor(*v) != *v || std::abs(*v) > 1e9) {
    throw PsvError("non_numeric_value",
                   fmt::format("line {}: column '{}' must hold an integer, got '{}'",
                               line, column, Trim(cell)),
                   line, column);
  }
  return static_cast<int>(*v);
}

}  // namespace

PatientRecord ParsePsv(std::string_view content, std::string patient_id,
                       const ClinicalConfig& config) {
  const auto lines = SplitLines(content);
  if (lines.empty()) {
    throw PsvError("empty_file", "file is empty: no header line", 0);
  }

  PatientRecord record;
  record.patient_id = std::move(patient_id);

  std::vector<ColumnSlot> slots;
  std::set<std::string> seen;
  for (const auto raw : SplitCells(lines[0])) {
    ColumnSlot slot;
    slot.name = config.ResolveAlias(std::string(Trim(raw)));
    if (slot.name.empty()) {
      throw PsvError("header_mismatch", "line 1: empty column name", 1);
    }
    if (!seen.insert(slot.name).second) {
      throw PsvError("header_mismatch",
                     fmt::format("line 1: duplicate column '{}'", slot.name), 1,
                     slot.name);
    }
    if (slot.name == kIculosColumn) {
      slot.kind = ColumnKind::kIculos;
    } else if (slot.name == kLabelColumn) {
      slot.kind = ColumnKind::kLabel;
    } else if (const auto index = VariableIndex(slot.name)) {
      slot.kind = ColumnKind::kVariable;
      slot.variable = *index;
    } else {
      slot.kind = ColumnKind::kSpill;
      record.unknown_columns.push_back(slot.name);
    }
    record.columns.push_back(slot.name);
    slots.push_back(std::move(slot));
  }
  for (const auto& name : record.unknown_columns) {
    spdlog::info("psv {}: unknown column '{}' kept in spill map", record.patient_id,
                 name);
  }

  record.rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    const auto cells = SplitCells(lines[i]);
    if (cells.size() != slots.size()) {
      throw PsvError("header_mismatch",
                     fmt::format("line {}: {} cells but the header names {} columns",
                                 line_no, cells.size(), slots.size()),
                     line_no);
    }
    HourlyRow row;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const ColumnSlot& slot = slots[c];
      switch (slot.kind) {
        case ColumnKind::kVariable:
          row.values[slot.variable] = ParseCell(cells[c], slot.name, line_no);
          break;
        case ColumnKind::kIculos:
          row.iculos = ParseInteger(cells[c], slot.name, line_no);
          break;
        case ColumnKind::kLabel:
          if (Trim(cells[c]) != kMissingToken) {
            const int label = ParseInteger(cells[c], slot.name, line_no);
            if (label != 0 && label != 1) {
              throw PsvError("non_numeric_value",
                             fmt::format("line {}: SepsisLabel must be 0 or 1", line_no),
                             line_no, slot.name);
            }
            row.sepsis_label = label;
          }
          break;
        case ColumnKind::kSpill:
          row.spill.emplace(slot.name, std::string(Trim(cells[c])));
          break;
      }
    }
    record.rows.push_back(std::move(row));
  }
  return record;
}

SourceHospital InferHospital(const std::filesystem::path& path) {
  static const std::regex kSetPattern(".*set[_-]?([AaBb])$");
  std::smatch match;
  const std::string dir = path.parent_path().filename().string();
  if (std::regex_match(dir, match, kSetPattern)) {
    return (match[1] == "A" || match[1] == "a") ? SourceHospital::kA
                                                : SourceHospital::kB;
  }
  return SourceHospital::kUnknown;
}

PatientRecord ReadPsvFile(const std::filesystem::path& path,
                          const ClinicalConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("io_error", "cannot open " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  PatientRecord record = ParsePsv(buffer.str(), path.stem().string(), config);
  record.source_hospital = InferHospital(path);
  return record;
}

}  // namespace sepsisflow::clinical
