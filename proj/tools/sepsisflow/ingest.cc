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


// ingest: .psv files -> clinical documents in the store.

#include <algorithm>
#include <iostream>

#include <fmt/format.h>

#include "common.h"
#include "sepsisflow/clinical/config.h"
#include "sepsisflow/clinical/document.h"
#include "sepsisflow/clinical/psv.h"
#include "sepsisflow/clinical/validation.h"
#include "sepsisflow/service/config.h"
#include "sepsisflow/store/document_store.h"

namespace sepsisflow::cli {
namespace {

namespace fs = std::filesystem;

struct IngestOptions {
  std::vector<std::string> inputs;
  std::optional<std::string> store_root;
  std::optional<std::string> clinical_config;
};

std::vector<fs::path> CollectPsvFiles(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& input : inputs) {
    const fs::path path(input);
    if (fs::is_directory(path)) {
      for (const auto& entry : fs::recursive_directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".psv") {
          files.push_back(entry.path());
        }
      }
    } else if (fs::exists(path)) {
      files.push_back(path);
    } else {
      throw Error("file_not_found", "no such file or directory: " + input);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

int RunIngest(const GlobalOptions& global, const IngestOptions& opts) {
  service::ServiceConfig svc = service::LoadServiceConfig(global.config);
  if (opts.store_root) svc.store_root = *opts.store_root;
  const clinical::ClinicalConfig clinical_config =
      opts.clinical_config ? clinical::ClinicalConfig::Load(*opts.clinical_config)
                           : clinical::ClinicalConfig::Default();

  const std::vector<fs::path> files = CollectPsvFiles(opts.inputs);
  store::FileDocumentStore store(svc.store_root);

  nlohmann::json patients = nlohmann::json::array();
  nlohmann::json errors = nlohmann::json::array();
  nlohmann::json warnings = nlohmann::json::array();
  for (const fs::path& file : files) {
    try {
      const clinical::PatientRecord record = clinical::ReadPsvFile(file, clinical_config);
      const clinical::ValidationReport check = clinical::VerifyRecord(record, clinical_config);
      const clinical::ClinicalDocument doc =
          clinical::ToClinicalDocument(record, clinical_config);
      store.Put(doc);
      patients.push_back(doc.patient_id);
      if (!check.clean()) {
        warnings.push_back({{"patient_id", doc.patient_id},
                            {"duplicate_iculos", check.duplicate_iculos},
                            {"out_of_range", check.out_of_range.size()}});
      }
    } catch (const Error& e) {
      errors.push_back({{"file", file.string()}, {"code", e.code()}, {"detail", e.what()}});
    } catch (const std::exception& e) {
      errors.push_back(
          {{"file", file.string()}, {"code", "internal_error"}, {"detail", e.what()}});
    }
  }

  const nlohmann::json summary = {{"store_root", svc.store_root.string()},
                                  {"ok", patients.size()},
                                  {"failed", errors.size()},
                                  {"patients", patients},
                                  {"errors", errors},
                                  {"warnings", warnings}};
  if (global.json) {
    std::cout << summary.dump(2) << "\n";
  } else {
    std::cout << fmt::format("ingested ok={} failed={} store={}\n", patients.size(),
                             errors.size(), svc.store_root.string());
    for (const auto& e : errors) {
      std::cout << fmt::format("  {}: {}: {}\n", e["file"].get<std::string>(),
                               e["code"].get<std::string>(), e["detail"].get<std::string>());
    }
  }
  return errors.empty() ? kExitOk : kExitFailure;
}

}  // namespace

void RegisterIngest(CLI::App& app, const GlobalOptions& global, Action& action) {
  auto opts = std::make_shared<IngestOptions>();
  CLI::App* sub = app.add_subcommand("ingest", "Transform .psv files into stored documents");
  sub->add_option("inputs", opts->inputs, ".psv files or directories (searched recursively)")
      ->required();
  sub->add_option("--store", opts->store_root, "Document store root");
  sub->add_option("--clinical-config", opts->clinical_config,
                  "Bounds, score tables and fallbacks (JSON)");
  sub->callback([&global, &action, opts] {
    action = [&global, opts] { return RunIngest(global, *opts); };
  });
}

}  // namespace sepsisflow::cli
