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

#include <functional>
#include <string_view>
#include <vector>

#include "irforge/codegen/design.hpp"
#include "irforge/codegen/navigation_plan.hpp"
#include "irforge/plan/project.hpp"

namespace irforge::codegen {

struct InitialOptions {
  StageOptions stage;
  bool concurrent_skeletons = true;
  std::function<void(const plan::ExecutedStep&)> on_step;
};

struct InitialResult {
  plan::Project project;
  std::vector<plan::ExecutedStep> steps;
  NavigationPlan navigation_plan;  // for the caller's audit only; not part of the project
};

// First message of a session: storyboard, design scaffold, data model,
// navigation plan, then every skeleton concurrently. Nothing is returned
// unless the assembled project validates.
// Throws Error{empty_request | provider_error | timeout | plan_edge_mismatch |
// schema_error_after_retries | stage_output_invalid}.
InitialResult initial_generate(llm::Provider& provider, std::string_view message, const InitialOptions& options = {});

}  // namespace irforge::codegen
