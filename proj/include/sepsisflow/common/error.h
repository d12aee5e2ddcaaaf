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

#ifndef SEPSISFLOW_COMMON_ERROR_H_
#define SEPSISFLOW_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace sepsisflow {

// Base of every exception thrown by the library. `code()` is a stable,
// machine-readable snake_case identifier (it ends up in REST error bodies
// and CLI JSON output); `what()` is the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace sepsisflow

#endif  // SEPSISFLOW_COMMON_ERROR_H_
