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

#include "irforge/codegen/initial.hpp"

#include <algorithm>
#include <cctype>

#include "irforge/error.hpp"
#include "irforge/ir/serialize.hpp"
#include "irforge/plan/executor.hpp"

namespace irforge::codegen {

using nlohmann::json;

namespace {

[[noreturn]] void stage_invalid(const std::string& stage, const json& report) {
  throw Error("stage_output_invalid", stage + " stage produced invalid output", {{"stage", stage}, {"report", report}});
}

template <class F>
auto guarded(const std::string& stage, F&& call) {
  try {
    return call();
  } catch (const Error& e) {
    if (e.code() != "schema_error_after_retries") throw;
    stage_invalid(stage, e.detail().value("report", json::object()));
  }
}

ir::Storyboard read_initial_storyboard(const json& value) {
  auto sb = ir::storyboard_from_json(value);
  ir::dedupe_view_names(sb);
  return sb;
}

}  // namespace

InitialResult initial_generate(llm::Provider& provider, std::string_view message, const InitialOptions& options) {
  if (std::all_of(message.begin(), message.end(), [](unsigned char c) { return std::isspace(c) != 0; })) {
    throw Error("empty_request", "request text is empty");
  }
  const auto& lib = templates_or_default(options.stage);
  const std::string request(message);
  const auto& clock = options.stage.clock;
  llm::CompletionOptions copts;
  copts.max_reprompts = options.stage.max_reprompts;

  InitialResult result;
  auto log = [&](plan::ExecutedStep step) {
    if (options.on_step) options.on_step(step);
    result.steps.push_back(std::move(step));
  };

  // Storyboard.
  plan::ExecutedStep step{"storyboard", "-", clock(), {}, std::nullopt, nullptr};
  auto sb_check = llm::make_check<ir::Storyboard>(read_initial_storyboard, [](const ir::Storyboard& sb) {
    auto report = ir::validate_storyboard(sb);
    if (sb.nodes.empty()) report.error("empty_storyboard", "nodes", "the app needs at least one screen");
    return report;
  });
  auto sb_reply = guarded("storyboard", [&] {
    return llm::complete_json(provider, llm::render_prompt(lib.get(llm::TemplateId::InitialStoryboard), {{"request", request}}),
                              sb_check, copts);
  });
  auto sb = ir::storyboard_from_json(sb_reply.value);
  if (auto renamed = ir::dedupe_view_names(sb); !renamed.findings.empty()) step.detail = {{"warnings", ir::to_json(renamed)}};
  step.ended_at = clock();
  step.provider_call_id = sb_reply.call_id();
  log(step);

  // Design scaffold.
  plan::ExecutedStep scaffold_step;
  auto scaffold = guarded("design_scaffold",
                          [&] { return generate_design_scaffold(provider, request, options.stage, &scaffold_step); });
  log(scaffold_step);

  // Data model.
  step = {"data_model", "-", clock(), {}, std::nullopt, nullptr};
  const auto dm_prompt = llm::render_prompt(
      lib.get(llm::TemplateId::DataModelMod),
      {{"currentStoryboard", ir::serialize(sb)},
       {"currentDataModel", "(empty: no entities yet)"},
       {"change", "Create the data model this app needs.\n\nApp request:\n" + request}});
  auto dm_reply = guarded("data_model", [&] {
    return llm::complete_json(provider, dm_prompt,
                              llm::make_check<ir::DataModel>(ir::data_model_from_json, ir::validate_data_model), copts);
  });
  auto dm = ir::data_model_from_json(dm_reply.value);
  step.ended_at = clock();
  step.provider_call_id = dm_reply.call_id();
  log(step);

  // Navigation plan, logged and then dropped.
  plan::ExecutedStep nav_step;
  result.navigation_plan = generate_navigation_plan(provider, sb, options.stage, &nav_step);
  log(nav_step);

  // Skeletons.
  std::vector<plan::SkeletonJob> jobs;
  for (const auto& node : sb.nodes) jobs.push_back({node.id, node.view_name, std::nullopt, ""});
  plan::SkeletonStage stage{&sb, &dm, "Create the initial GUI skeleton for this screen.\n\nApp request:\n" + request,
                            ir::canonical_text(to_json(result.navigation_plan))};
  plan::ExecuteOptions exec;
  exec.templates = options.stage.templates;
  exec.clock = clock;
  exec.concurrent_skeletons = options.concurrent_skeletons;
  exec.max_reprompts = options.stage.max_reprompts;
  auto skeletons = plan::run_skeleton_jobs(jobs, stage, provider, exec);

  auto& project = result.project;
  project.storyboard = std::move(sb);
  project.data_model = std::move(dm);
  project.design_scaffold = std::move(scaffold);
  for (auto& s : skeletons) {
    project.skeletons[s.skeleton.node_id] = std::move(s.skeleton);
    log(std::move(s.step));
  }
  if (auto report = project.validate(); !report.ok()) stage_invalid("skeleton", ir::to_json(report));
  project.history = result.steps;
  return result;
}

}  // namespace irforge::codegen
