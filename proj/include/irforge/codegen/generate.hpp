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

#include <map>
#include <string>
#include <vector>

#include "irforge/codegen/design.hpp"
#include "irforge/codegen/generated_project.hpp"
#include "irforge/plan/project.hpp"

namespace irforge::codegen {

struct CodegenOptions {
  StageOptions stage;
  std::string app_name = "GeneratedApp";
  // One call per view instead of a single call for the whole app.
  bool per_view = false;
  // Appended to the prompt when present (view_design stage is off by default).
  const std::map<std::string, ViewDesignSpec>* view_designs = nullptr;
};

// All IRs in, one GeneratedProject out. Each violation class (coverage,
// declared type name) gets at most one repair re-prompt.
// Throws Error{project_invalid | scaffold_missing | provider_error | timeout | codegen_invalid}.
GeneratedProject generate_code(llm::Provider& provider, const plan::Project& project,
                               const CodegenOptions& options = {}, std::vector<plan::ExecutedStep>* steps = nullptr);

// Identifier-safe app name: "pin cast!" -> "PinCast".
std::string app_identifier(std::string_view name);

}  // namespace irforge::codegen
