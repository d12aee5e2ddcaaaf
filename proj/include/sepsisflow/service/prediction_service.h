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


// Request handling for one replica, independent of the HTTP transport.

#ifndef SEPSISFLOW_SERVICE_PREDICTION_SERVICE_H_
#define SEPSISFLOW_SERVICE_PREDICTION_SERVICE_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sepsisflow/gbdt/model.h"
#include "sepsisflow/service/config.h"
#include "sepsisflow/store/document_store.h"

namespace sepsisflow::service {

inline constexpr const char* kReplicaHeader = "X-Replica-Id";

struct PredictionResult {
  std::string patient_id;
  double probability = 0.0;
  bool alert = false;
  int at_iculos = 0;
  std::string model_version;
  std::string replica_id;
  double server_time_ms = 0.0;
};

nlohmann::json ToJson(const PredictionResult& result);
PredictionResult PredictionResultFromJson(const nlohmann::json& j);

struct ApiResponse {
  int status = 200;
  std::string body;

  // {"code": ..., "detail": ...}
  static ApiResponse Failure(int status, const std::string& code, const std::string& detail);
};

// Snapshot of the per-replica counters.
struct ServiceMetrics {
  std::uint64_t requests = 0;
  std::uint64_t predictions = 0;
  std::uint64_t client_errors = 0;
  std::uint64_t server_errors = 0;
};

class PredictionService {
 public:
  PredictionService(ServiceConfig config, std::shared_ptr<const store::DocumentStore> store);

  // Until a model is set, /health answers 503 and /predict answers 503.
  void SetModel(std::shared_ptr<const gbdt::TreeEnsembleModel> model);
  bool ready() const;

  // Throws store::NotFound, gbdt::IculosOutOfRange, or Error("not_ready").
  // Without `at_iculos` the last hour on the patient's axis is used.
  PredictionResult Predict(const std::string& patient_id,
                           std::optional<int> at_iculos = std::nullopt) const;

  // Routes GET /health, GET /metrics, GET /patients, GET /patients/{id},
  // POST /predict. Never throws.
  ApiResponse Handle(std::string_view method, std::string_view path,
                     std::string_view body) const;

  ApiResponse HandleHealth() const;
  ApiResponse HandleMetrics() const;
  ApiResponse HandleListPatients() const;
  ApiResponse HandleGetPatient(const std::string& patient_id) const;
  ApiResponse HandlePredict(std::string_view body) const;

  // One JSON line per id: the PredictionResult, or {"patient_id", "code",
  // "detail"} on failure. Returns the number of failed ids.
  std::size_t RunBatch(const std::vector<std::string>& patient_ids, std::ostream& out) const;

  ServiceMetrics metrics() const;
  const ServiceConfig& config() const { return config_; }

 private:
  std::shared_ptr<const gbdt::TreeEnsembleModel> model() const;
  ApiResponse Count(ApiResponse response) const;

  ServiceConfig config_;
  std::shared_ptr<const store::DocumentStore> store_;
  mutable std::mutex model_mu_;
  std::shared_ptr<const gbdt::TreeEnsembleModel> model_;

  mutable std::atomic<std::uint64_t> requests_{0};
  mutable std::atomic<std::uint64_t> predictions_{0};
  mutable std::atomic<std::uint64_t> client_errors_{0};
  mutable std::atomic<std::uint64_t> server_errors_{0};
};

}  // namespace sepsisflow::service

#endif  // SEPSISFLOW_SERVICE_PREDICTION_SERVICE_H_
