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

#include <string_view>

#include "irforge/ir/report.hpp"
#include "irforge/llm/prompt.hpp"
#include "irforge/llm/provider.hpp"
#include "irforge/plan/change_plan.hpp"
#include "irforge/plan/project.hpp"

namespace irforge::plan {

// Reference and closure checks of a plan against the project it targets.
// Errors: unknown_node, unknown_edge, unknown_view, self_edge,
// create_delete_conflict, closure_violation. Warnings: name_mismatch,
// duplicate_edge, view_name_taken.
ir::ValidationReport validate_plan(const ChangePlan& plan, const Project& project);

// View name an added screen will receive before uniqueness suffixing.
std::string planned_view_name(const PlannedScreen& screen);

struct PlanOptions {
  const llm::TemplateLibrary* templates = nullptr;  // defaults when null
  Clock clock = utc_now;
  int max_reprompts = 1;
};

// Prompts the provider with the current IRs plus the request and returns a
// plan passing validate_plan. `step`, when given, receives the plan-stage record.
// Throws Error{empty_request | provider_error | timeout | plan_invalid}.
ChangePlan plan_request(std::string_view request, const Project& project, llm::Provider& provider,
                        const PlanOptions& options = {}, ExecutedStep* step = nullptr);

// Bindings shared by several prompts.
std::string skeleton_index(const Project& project);

}  // namespace irforge::plan
