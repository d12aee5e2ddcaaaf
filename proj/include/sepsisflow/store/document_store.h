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

// Patient document persistence keyed by patient id.

#ifndef SEPSISFLOW_STORE_DOCUMENT_STORE_H_
#define SEPSISFLOW_STORE_DOCUMENT_STORE_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "sepsisflow/clinical/document.h"
#include "sepsisflow/common/error.h"

namespace sepsisflow::store {

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& patient_id)
      : Error("patient_not_found", "no document for patient '" + patient_id + "'"),
        patient_id_(patient_id) {}
  const std::string& patient_id() const { return patient_id_; }

 private:
  std::string patient_id_;
};

class StorageFull : public Error {
 public:
  explicit StorageFull(const std::string& detail) : Error("storage_full", detail) {}
};

class SerializationFailure : public Error {
 public:
  explicit SerializationFailure(const std::string& detail)
      : Error("serialization_failure", detail) {}
};

// Ids become file names: [A-Za-z0-9._-], 1..128 chars, no leading dot.
bool IsValidPatientId(std::string_view id);

using DemographicsFilter = std::function<bool(const clinical::Demographics&)>;

class DocumentStore {
 public:
  virtual ~DocumentStore() = default;

  // Replaces any existing document with the same patient id.
  virtual void Put(const clinical::ClinicalDocument& doc) = 0;
  virtual clinical::ClinicalDocument Get(const std::string& patient_id) const = 0;
  // Stored bytes exactly as written by Put.
  virtual std::string GetRaw(const std::string& patient_id) const = 0;
  // Sorted ids; with a filter, only those whose demographics satisfy it.
  virtual std::vector<std::string> ListPatients(
      const DemographicsFilter& filter = nullptr) const = 0;
};

// One JSON file per patient, `<root>/<patient_id>.json`. Writes go to a
// temporary file that is fsynced and renamed over the target, so a reader
// sees either the previous or the new document. The in-memory index is
// rebuilt from the directory on open.
class FileDocumentStore final : public DocumentStore {
 public:
  // Creates `root` if missing. Unreadable documents are skipped with a warning.
  explicit FileDocumentStore(std::filesystem::path root);

  void Put(const clinical::ClinicalDocument& doc) override;
  clinical::ClinicalDocument Get(const std::string& patient_id) const override;
  std::string GetRaw(const std::string& patient_id) const override;
  std::vector<std::string> ListPatients(
      const DemographicsFilter& filter = nullptr) const override;

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path PathFor(const std::string& patient_id) const;

 private:
  std::mutex& WriteMutex(const std::string& patient_id);

  std::filesystem::path root_;
  mutable std::shared_mutex index_mu_;
  mutable std::map<std::string, clinical::Demographics> index_;
  std::mutex write_locks_mu_;
  std::map<std::string, std::unique_ptr<std::mutex>> write_locks_;
};

}  // namespace sepsisflow::store

#endif  // SEPSISFLOW_STORE_DOCUMENT_STORE_H_
