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


#include "sepsisflow/store/document_store.h"

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

namespace sepsisflow::store {
namespace {

namespace fs = std::filesystem;

constexpr std::size_t kMaxIdLength = 128;
constexpr std::string_view kExtension = ".json";

[[noreturn]] void ThrowIo(const std::string& what, int err) {
  const std::string detail = what + ": " + std::strerror(err);
  if (err == ENOSPC || err == EDQUOT) throw StorageFull(detail);
  throw Error("io_error", detail);
}

void WriteAll(int fd, std::string_view data, const std::string& path) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      ThrowIo("write " + path, errno);
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

void FsyncDirectory(const fs::path& dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

bool ReadFile(const fs::path& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  *out = buffer.str();
  return true;
}

}  // namespace

bool IsValidPatientId(std::string_view id) {
  if (id.empty() || id.size() > kMaxIdLength || id.front() == '.') return false;
  for (const char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

FileDocumentStore::FileDocumentStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw Error("io_error", "cannot create store root " + root_.string() + ": " + ec.message());

  for (const auto& entry : fs::directory_iterator(root_)) {
    if (!entry.is_regular_file() || entry.path().extension() != kExtension) continue;
    const std::string id = entry.path().stem().string();
    if (!IsValidPatientId(id)) continue;
    std::string text;
    if (!ReadFile(entry.path(), &text)) continue;
    try {
      index_.emplace(id, clinical::ParseDocument(text).demographics);
    } catch (const Error& e) {
      spdlog::warn("store: skipping {}: {}", entry.path().string(), e.what());
    }
  }
  spdlog::debug("store: opened {} with {} documents", root_.string(), index_.size());
}

fs::path FileDocumentStore::PathFor(const std::string& patient_id) const {
  return root_ / (patient_id + std::string(kExtension));
}

std::mutex& FileDocumentStore::WriteMutex(const std::string& patient_id) {
  std::lock_guard lock(write_locks_mu_);
  auto& slot = write_locks_[patient_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

void FileDocumentStore::Put(const clinical::ClinicalDocument& doc) {
  if (!IsValidPatientId(doc.patient_id)) {
    throw Error("invalid_patient_id", "patient id '" + doc.patient_id + "' is not a valid file name");
  }
  std::string text;
  try {
    text = clinical::SerializeDocument(doc);
  } catch (const std::exception& e) {
    throw SerializationFailure(doc.patient_id + ": " + e.what());
  }

  static std::atomic<unsigned> counter{0};
  std::lock_guard write_lock(WriteMutex(doc.patient_id));
  const fs::path target = PathFor(doc.patient_id);
  const fs::path temp = root_ / ("." + doc.patient_id + ".tmp." + std::to_string(::getpid()) +
                                 "." + std::to_string(counter++));
  const int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) ThrowIo("open " + temp.string(), errno);
  try {
    WriteAll(fd, text, temp.string());
    if (::fsync(fd) != 0) ThrowIo("fsync " + temp.string(), errno);
  } catch (...) {
    ::close(fd);
    ::unlink(temp.c_str());
    throw;
  }
  ::close(fd);
  if (::rename(temp.c_str(), target.c_str()) != 0) {
    const int err = errno;
    ::unlink(temp.c_str());
    ThrowIo("rename " + target.string(), err);
  }
  FsyncDirectory(root_);

  std::unique_lock lock(index_mu_);
  index_[doc.patient_id] = doc.demographics;
}

std::string FileDocumentStore::GetRaw(const std::string& patient_id) const {
  // Files written by another handle since open are found on disk too.
  std::string text;
  if (!IsValidPatientId(patient_id) || !ReadFile(PathFor(patient_id), &text)) {
    throw NotFound(patient_id);
  }
  return text;
}

clinical::ClinicalDocument FileDocumentStore::Get(const std::string& patient_id) const {
  clinical::ClinicalDocument doc = clinical::ParseDocument(GetRaw(patient_id));
  bool known;
  {
    std::shared_lock lock(index_mu_);
    known = index_.count(patient_id) > 0;
  }
  if (!known) {
    std::unique_lock lock(index_mu_);
    index_.emplace(patient_id, doc.demographics);
  }
  return doc;
}

std::vector<std::string> FileDocumentStore::ListPatients(const DemographicsFilter& filter) const {
  std::shared_lock lock(index_mu_);
  std::vector<std::string> ids;
  ids.reserve(index_.size());
  for (const auto& [id, demographics] : index_) {
    if (!filter || filter(demographics)) ids.push_back(id);
  }
  return ids;
}

}  // namespace sepsisflow::store
