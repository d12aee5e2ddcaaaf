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

#ifndef SEPSISFLOW_CLINICAL_PSV_H_
#define SEPSISFLOW_CLINICAL_PSV_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "sepsisflow/clinical/config.h"
#include "sepsisflow/clinical/record.h"
#include "sepsisflow/common/error.h"

namespace sepsisflow::clinical {

// Codes: "empty_file", "header_mismatch", "non_numeric_value".
class PsvError : public Error {
 public:
  PsvError(std::string code, const std::string& detail, int line,
           std::string column = {})
      : Error(std::move(code), detail), line_(line), column_(std::move(column)) {}

  // 1-based line in the file; 0 when not tied to a line.
  int line() const { return line_; }
  const std::string& column() const { return column_; }

 private:
  int line_;
  std::string column_;
};

// Parses pipe-separated content with a header row. `NaN` cells become
// absent measurements. Rows keep file order; unknown columns go to each
// row's spill map.
PatientRecord ParsePsv(std::string_view content, std::string patient_id,
                       const ClinicalConfig& config = ClinicalConfig::Default());

// Reads a .psv file. The patient id is the file stem; the source hospital
// is inferred from a parent directory named like `training_setA`.
PatientRecord ReadPsvFile(const std::filesystem::path& path,
                          const ClinicalConfig& config = ClinicalConfig::Default());

SourceHospital InferHospital(const std::filesystem::path& path);

}  // namespace sepsisflow::clinical

#endif  // SEPSISFLOW_CLINICAL_PSV_H_
