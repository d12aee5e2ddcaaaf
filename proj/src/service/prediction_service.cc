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


#include "sepsisflow/service/prediction_service.h"

#include <chrono>

#include "sepsisflow/gbdt/features.h"

namespace sepsisflow::service {
namespace {

using nlohmann::json;

constexpr std::string_view kPatientsPrefix = "/patients/";

ApiResponse Json(int status, const json& body) { return {status, body.dump()}; }

}  // namespace

json ToJson(const PredictionResult& r) {
  return {{"patient_id", r.patient_id},     {"probability", r.probability},
          {"alert", r.alert},               {"at_iculos", r.at_iculos},
          {"model_version", r.model_version}, {"replica_id", r.replica_id},
          {"server_time_ms", r.server_time_ms}};
}

PredictionResult PredictionResultFromJson(const json& j) {
  PredictionResult r;
  r.patient_id = j.at("patient_id").get<std::string>();
  r.probability = j.at("probability").get<double>();
  r.alert = j.at("alert").get<bool>();
  r.at_iculos = j.at("at_iculos").get<int>();
  r.model_version = j.at("model_version").get<std::string>();
  r.replica_id = j.at("replica_id").get<std::string>();
  r.server_time_ms = j.at("server_time_ms").get<double>();
  return r;
}

ApiResponse ApiResponse::Failure(int status, const std::string& code, const std::string& detail) {
  return Json(status, {{"code", code}, {"detail", detail}});
}

PredictionService::PredictionService(ServiceConfig config,
                                     std::shared_ptr<const store::DocumentStore> store)
    : config_(std::move(config)), store_(std::move(store)) {
  config_.Validate();
}

void PredictionService::SetModel(std::shared_ptr<const gbdt::TreeEnsembleModel> model) {
  std::lock_guard lock(model_mu_);
  model_ = std::move(model);
}

std::shared_ptr<const gbdt::TreeEnsembleModel> PredictionService::model() const {
  std::lock_guard lock(model_mu_);
  return model_;
}

bool PredictionService::ready() const { return model() != nullptr && store_ != nullptr; }

PredictionResult PredictionService::Predict(const std::string& patient_id,
                                            std::optional<int> at_iculos) const {
  const auto start = std::chrono::steady_clock::now();
  const auto m = model();
  if (!m || !store_) throw Error("not_ready", "model or store not loaded");

  const clinical::ClinicalDocument doc = store_->Get(patient_id);
  if (doc.iculos.empty()) {
    throw gbdt::IculosOutOfRange(at_iculos.value_or(0), "patient has an empty time axis");
  }
  const int hour = at_iculos.value_or(doc.iculos.back());
  const gbdt::FeatureVector features = gbdt::ExtractFeatures(doc, *m, hour);

  PredictionResult result;
  result.patient_id = patient_id;
  result.probability = gbdt::PredictProbability(*m, features);
  result.alert = result.probability > config_.alert_threshold;
  result.at_iculos = hour;
  result.model_version = m->metadata.model_version;
  result.replica_id = config_.replica_id;
  result.server_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  predictions_.fetch_add(1, std::memory_order_relaxed);
  return result;
}

ApiResponse PredictionService::Count(ApiResponse response) const {
  requests_.fetch_add(1, std::memory_order_relaxed);
  if (response.status >= 500) {
    server_errors_.fetch_add(1, std::memory_order_relaxed);
  } else if (response.status >= 400) {
    client_errors_.fetch_add(1, std::memory_order_relaxed);
  }
  return response;
}

ApiResponse PredictionService::Handle(std::string_view method, std::string_view path,
                                      std::string_view body) const {
  // Query strings carry nothing the routes use.
  if (const auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  try {
    if (method == "GET" && path == "/health") return Count(HandleHealth());
    if (method == "GET" && path == "/metrics") return Count(HandleMetrics());
    if (method == "GET" && path == "/patients") return Count(HandleListPatients());
    if (method == "GET" && path.substr(0, kPatientsPrefix.size()) == kPatientsPrefix &&
        path.size() > kPatientsPrefix.size()) {
      return Count(HandleGetPatient(std::string(path.substr(kPatientsPrefix.size()))));
    }
    if (method == "POST" && path == "/predict") return Count(HandlePredict(body));
    const bool known = path == "/health" || path == "/metrics" || path == "/patients" ||
                       path == "/predict" || path.substr(0, kPatientsPrefix.size()) == kPatientsPrefix;
    if (known) {
      return Count(ApiResponse::Failure(405, "method_not_allowed",
                                        std::string(method) + " " + std::string(path)));
    }
    return Count(ApiResponse::Failure(404, "route_not_found", std::string(path)));
  } catch (const std::exception& e) {
    return Count(ApiResponse::Failure(500, "internal_error", e.what()));
  }
}

ApiResponse PredictionService::HandleHealth() const {
  const auto m = model();
  if (!m || !store_) {
    return Json(503, {{"status", "unavailable"},
                      {"code", "not_ready"},
                      {"detail", "model not loaded"},
                      {"replica_id", config_.replica_id}});
  }
  return Json(200, {{"status", "ok"},
                    {"replica_id", config_.replica_id},
                    {"model_version", m->metadata.model_version}});
}

ApiResponse PredictionService::HandleMetrics() const {
  const ServiceMetrics s = metrics();
  return Json(200, {{"replica_id", config_.replica_id},
                    {"requests", s.requests},
                    {"predictions", s.predictions},
                    {"client_errors", s.client_errors},
                    {"server_errors", s.server_errors}});
}

ApiResponse PredictionService::HandleListPatients() const {
  if (!store_) return ApiResponse::Failure(503, "not_ready", "store not loaded");
  try {
    return Json(200, {{"patients", store_->ListPatients()}});
  } catch (const Error& e) {
    return ApiResponse::Failure(500, e.code(), e.what());
  }
}

ApiResponse PredictionService::HandleGetPatient(const std::string& patient_id) const {
  if (!store_) return ApiResponse::Failure(503, "not_ready", "store not loaded");
  try {
    return {200, store_->GetRaw(patient_id)};
  } catch (const store::NotFound& e) {
    return ApiResponse::Failure(404, e.code(), e.what());
  } catch (const Error& e) {
    return ApiResponse::Failure(500, e.code(), e.what());
  }
}

ApiResponse PredictionService::HandlePredict(std::string_view body) const {
  std::string patient_id;
  std::optional<int> at_iculos;
  try {
    const json request = json::parse(body);
    if (!request.is_object()) {
      return ApiResponse::Failure(400, "bad_request", "body must be a JSON object");
    }
    const auto id = request.find("patient_id");
    if (id == request.end() || !id->is_string()) {
      return ApiResponse::Failure(400, "bad_request", "'patient_id' must be a string");
    }
    patient_id = id->get<std::string>();
    if (const auto hour = request.find("at_iculos"); hour != request.end() && !hour->is_null()) {
      if (!hour->is_number_integer()) {
        return ApiResponse::Failure(400, "bad_request", "'at_iculos' must be an integer");
      }
      at_iculos = hour->get<int>();
    }
  } catch (const json::exception& e) {
    return ApiResponse::Failure(400, "bad_request", e.what());
  }

  try {
    return Json(200, ToJson(Predict(patient_id, at_iculos)));
  } catch (const store::NotFound& e) {
    return ApiResponse::Failure(404, e.code(), e.what());
  } catch (const gbdt::IculosOutOfRange& e) {
    return ApiResponse::Failure(422, e.code(), e.what());
  } catch (const Error& e) {
    return ApiResponse::Failure(e.code() == "not_ready" ? 503 : 500, e.code(), e.what());
  }
}

std::size_t PredictionService::RunBatch(const std::vector<std::string>& patient_ids,
                                        std::ostream& out) const {
  std::size_t failures = 0;
  for (const auto& id : patient_ids) {
    json line;
    try {
      line = ToJson(Predict(id));
    } catch (const Error& e) {
      ++failures;
      line = {{"patient_id", id}, {"code", e.code()}, {"detail", e.what()}};
    }
    out << line.dump() << '\n';
  }
  out.flush();
  return failures;
}

ServiceMetrics PredictionService::metrics() const {
  return {requests_.load(), predictions_.load(), client_errors_.load(), server_errors_.load()};
}

}  // namespace sepsisflow::service
