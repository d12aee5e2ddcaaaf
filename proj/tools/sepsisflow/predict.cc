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


// predict: batch inference straight from the store, one JSON line per id.

#include <fstream>
#include <iostream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "common.h"
#include "sepsisflow/gbdt/model.h"
#include "sepsisflow/service/prediction_service.h"
#include "sepsisflow/store/document_store.h"

namespace sepsisflow::cli {
namespace {

struct PredictOptions {
  ServiceFlags service;
  std::vector<std::string> patient_ids;
  std::optional<std::string> ids_file;
  bool all = false;
  std::string out = "-";
};

std::vector<std::string> ReadIds(const std::string& path) {
  std::vector<std::string> ids;
  std::stringstream in(ReadText(path));
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

int RunPredict(const GlobalOptions& global, const PredictOptions& opts) {
  const service::ServiceConfig cfg = ResolveServiceConfig(global, opts.service);
  auto store = std::make_shared<const store::FileDocumentStore>(cfg.store_root);
  std::vector<std::string> ids = opts.patient_ids;
  if (opts.ids_file) {
    const auto more = ReadIds(*opts.ids_file);
    ids.insert(ids.end(), more.begin(), more.end());
  }
  if (opts.all) {
    const auto every = store->ListPatients();
    ids.insert(ids.end(), every.begin(), every.end());
  }

  service::PredictionService svc(cfg, store);
  svc.SetModel(
      std::make_shared<const gbdt::TreeEnsembleModel>(gbdt::LoadModel(cfg.model_path)));

  std::size_t failed = 0;
  if (opts.out == "-") {
    failed = svc.RunBatch(ids, std::cout);
    std::cout.flush();
  } else {
    std::ofstream out(opts.out, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io_error", "cannot write " + opts.out);
    failed = svc.RunBatch(ids, out);
  }
  spdlog::info("predict ids={} failed={}", ids.size(), failed);
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

void RegisterPredict(CLI::App& app, const GlobalOptions& global, Action& action) {
  auto opts = std::make_shared<PredictOptions>();
  CLI::App* sub = app.add_subcommand("predict", "Batch predictions as JSON lines");
  opts->service.Add(*sub);
  sub->add_option("patient_ids", opts->patient_ids, "Patient ids");
  sub->add_option("--ids-file", opts->ids_file, "File with one patient id per line");
  sub->add_flag("--all", opts->all, "Every patient in the store");
  sub->add_option("--out", opts->out, "Output file; '-' is stdout")->capture_default_str();
  sub->callback([&global, &action, opts] {
    action = [&global, opts] { return RunPredict(global, *opts); };
  });
}

}  // namespace sepsisflow::cli
