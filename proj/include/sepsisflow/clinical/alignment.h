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

#ifndef SEPSISFLOW_CLINICAL_ALIGNMENT_H_
#define SEPSISFLOW_CLINICAL_ALIGNMENT_H_

#include "sepsisflow/clinical/record.h"
#include "sepsisflow/common/error.h"

namespace sepsisflow::clinical {

class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Puts the record on a contiguous hourly axis:
//  - rows sorted by ICULOS;
//  - rows sharing an ICULOS merged, the last observation in file order
//    winning per variable (an absent cell never erases an earlier value);
//  - holes in the axis filled with all-absent rows.
// Throws AlignmentError("no_timestamps") if the record has no ICULOS column.
PatientRecord AlignTemporal(const PatientRecord& record);

}  // namespace sepsisflow::clinical

#endif  // SEPSISFLOW_CLINICAL_ALIGNMENT_H_
