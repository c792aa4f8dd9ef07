// Copyright 2026 The irforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "irforge/analysis/report.hpp"
#include "irforge/codegen/generated_project.hpp"
#include "irforge/llm/prompt.hpp"
#include "irforge/llm/provider.hpp"
#include "irforge/plan/project.hpp"

namespace irforge::cli {

// {"appName"?, "initialPrompt", "changePrompts"?: [...], "provider"?: name | registry entry, "outDir"?}
struct BatchScript {
  std::string app_name = "GeneratedApp";
  std::string initial_prompt;
  std::vector<std::string> change_prompts;
  std::optional<std::string> provider_name;
  std::optional<llm::ProviderConfig> provider;  // inline entry, paths resolved against the script
  std::optional<std::filesystem::path> out_dir;
};

// Throws Error{bad_input} with {path} for unreadable or malformed scripts.
BatchScript load_batch_script(const std::filesystem::path& path);
BatchScript batch_script_from_json(const nlohmann::json& value, const std::filesystem::path& base_dir);

enum ExitCode { kOk = 0, kPipelineFailure = 1, kNavigationFindings = 2, kBadInput = 3 };

struct RunOptions {
  std::filesystem::path out_dir;
  const llm::TemplateLibrary* templates = nullptr;
  std::optional<std::filesystem::path> compile_log;
  // Real timestamps and concurrent skeleton calls. Off by default so a run is
  // a pure function of its script and provider replies.
  bool wall_clock = false;
};

struct RunOutcome {
  int exit_code = kOk;
  std::string failed_stage;  // set with kPipelineFailure / kBadInput
  std::string error_code;
  std::string error_message;
  std::optional<codegen::Metrics> metrics;
  std::optional<analysis::ErrorReport> report;
  std::filesystem::path export_dir;
  std::filesystem::path archive;
  int steps = 0;

  nlohmann::json to_json() const;
};

// Initial generation, each change in order, code generation, export, check.
// Writes under out_dir only:
//   <App>/...            export tree        <App>.zip   same tree as an archive
//   ir/                  final IRs           report.json metrics.json session.log.jsonl
RunOutcome run_batch(const BatchScript& script, llm::Provider& provider, const RunOptions& options);

// {"views", "lines_of_code", "compilation_errors" (null without a compile log), "navigation_errors"}
nlohmann::json metrics_json(const codegen::Metrics& metrics, const analysis::ErrorReport& report, bool compiled);

// "seq-000001", "seq-000002", ...
plan::Clock logical_clock();

}  // namespace irforge::cli
