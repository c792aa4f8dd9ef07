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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "irforge/llm/prompt.hpp"
#include "irforge/llm/provider.hpp"
#include "irforge/plan/change_plan.hpp"
#include "irforge/plan/project.hpp"

namespace irforge::plan {

// A user's hand-edited IR. It replaces the stored IR of its kind as-is; the
// plan derived from the edit drives the remaining stages.
struct DirectEdit {
  std::variant<ir::Storyboard, ir::DataModel, ir::GuiSkeleton> value;
};

struct ExecuteOptions {
  const llm::TemplateLibrary* templates = nullptr;
  Clock clock = utc_now;
  bool concurrent_skeletons = true;
  std::optional<ExecutedStep> plan_step;  // from plan_request; synthesized when absent
  std::optional<DirectEdit> direct_edit;
  std::string request;  // original user text, quoted in stage prompts
  std::optional<int> max_reprompts;
  std::function<void(const ExecutedStep&)> on_step;
};

struct Execution {
  Project project;
  std::vector<ExecutedStep> steps;
};

// Runs the cascade storyboard -> data model -> skeletons and commits only if
// the result validates. The input project is never modified.
// Throws Error{plan_invalid | provider_error | timeout | stage_output_invalid};
// stage_output_invalid carries {"stage", "report"} and, for skeletons, "target".
Execution execute_plan(const ChangePlan& plan, const Project& project, llm::Provider& provider,
                       const ExecuteOptions& options = {});

struct SkeletonJob {
  ir::NodeId node_id = 0;
  std::string view_name;
  std::optional<ir::GuiSkeleton> current;
  std::string reason;  // empty for planned jobs
};

struct SkeletonStage {
  const ir::Storyboard* storyboard = nullptr;
  const ir::DataModel* data_model = nullptr;
  std::string change;
  std::string navigation_plan = "(none)";
};

struct SkeletonResult {
  ir::GuiSkeleton skeleton;
  ExecutedStep step;
};

// One skeleton_mod call per job, concurrently when asked. Results come back in
// job order regardless of completion order; the first failure in job order is
// rethrown after every call has finished.
std::vector<SkeletonResult> run_skeleton_jobs(const std::vector<SkeletonJob>& jobs, const SkeletonStage& stage,
                                              llm::Provider& provider, const ExecuteOptions& options);

}  // namespace irforge::plan
