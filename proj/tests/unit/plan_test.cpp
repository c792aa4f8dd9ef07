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

#include <atomic>
#include <chrono>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "project_fixtures.hpp"
#include "irforge/error.hpp"
#include "irforge/plan/diff.hpp"
#include "irforge/plan/executor.hpp"
#include "irforge/plan/planner.hpp"

namespace irforge::plan {
namespace {

using nlohmann::json;
using testing::appendix_project;

Error capture(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  return Error("none", "no error");
}

ChangePlan appendix_plan() { return plan_from_json(json::parse(testing::kAppendixPlanJson)); }

std::unique_ptr<llm::ScriptedProvider> script(const json& s) { return llm::ScriptedProvider::from_json(s); }

json reply(std::vector<json> texts) {
  json responses = json::array();
  for (auto& t : texts) responses.push_back(t.is_string() ? json{{"text", t}} : json{{"json", t}});
  return {{"responses", responses}};
}

bool has_finding(const json& report, const std::string& code) {
  for (const auto& f : report.at("findings")) {
    if (f.at("code") == code) return true;
  }
  return false;
}

TEST(ChangePlan, AppendixPlanParses) {
  const auto plan = appendix_plan();
  EXPECT_EQ(plan.change_type, ChangeType::GuiSkeleton);
  ASSERT_EQ(plan.storyboard.add_screens.size(), 1u);
  EXPECT_EQ(plan.storyboard.add_screens[0].id, 101);
  EXPECT_EQ(plan.storyboard.add_screens[0].name, "UserProfileView");
  EXPECT_EQ(plan.storyboard.add_connections, (std::vector<Connection>{{101, 102}}));
  EXPECT_EQ(plan.storyboard.remove_connections, (std::vector<Connection>{{50, 51}}));
  EXPECT_EQ(plan.skeletons.files_to_delete, (std::vector<FileRef>{{"OldSettingsView", 50}}));
  EXPECT_EQ(plan.data_model.files_to_modify.size(), 2u);
  EXPECT_EQ(plan.summary, "Added user age support; Removed OldSettingsView.");
  EXPECT_EQ(plan_from_json(to_json(plan)), plan);
}

TEST(ChangePlan, RejectsUnknownChangeType) {
  const auto e = capture([] { plan_from_json(json{{"changeType", "everything"}}); });
  EXPECT_EQ(e.code(), "schema_error");
  EXPECT_EQ(e.detail().at("path"), "changeType");
}

TEST(ValidatePlan, AppendixPlanIsClean) {
  const auto report = validate_plan(appendix_plan(), appendix_project());
  EXPECT_EQ(report.error_count(), 0u) << report.to_text();
}

TEST(ValidatePlan, RemovingAbsentScreenIsUnknownNode) {
  auto project = appendix_project();
  project.storyboard = ir::apply_storyboard_change(project.storyboard, ir::RemoveScreen{50});
  project.skeletons.erase(50);
  const auto report = validate_plan(appendix_plan(), project);
  EXPECT_TRUE(report.has("unknown_node"));
}

TEST(ValidatePlan, RemovalMissingFromDeletesIsClosureViolation) {
  auto plan = appendix_plan();
  plan.skeletons.files_to_delete.clear();
  const auto report = validate_plan(plan, appendix_project());
  EXPECT_EQ(report.count("closure_violation"), 1u);
  EXPECT_EQ(report.error_count(), 1u);
}

TEST(ValidatePlan, ReferenceErrors) {
  const auto project = appendix_project();
  ChangePlan plan;
  plan.storyboard.remove_connections = {{1, 102}};
  plan.storyboard.add_connections = {{1, 999}, {51, 51}};
  plan.skeletons.files_to_modify = {{"GhostView", 77}};
  plan.skeletons.new_files_to_create = {{"HomeView", 1}};
  plan.skeletons.files_to_delete = {{"HomeView", 1}};
  const auto report = validate_plan(plan, project);
  EXPECT_TRUE(report.has("unknown_edge"));
  EXPECT_TRUE(report.has("unknown_node"));
  EXPECT_TRUE(report.has("self_edge"));
  EXPECT_TRUE(report.has("unknown_view"));
  EXPECT_TRUE(report.has("create_delete_conflict"));
  EXPECT_TRUE(report.has("closure_violation"));  // deleting HomeView while its screen stays
}

TEST(ValidatePlan, AddedScreenMustGetASkeleton) {
  ChangePlan plan;
  plan.storyboard.add_screens = {{7, "Sign Up", "", std::nullopt}};
  auto report = validate_plan(plan, appendix_project());
  EXPECT_TRUE(report.has("closure_violation"));
  plan.skeletons.new_files_to_create = {{"SignUpView", 7}};
  report = validate_plan(plan, appendix_project());
  EXPECT_TRUE(report.ok()) << report.to_text();
}

TEST(PlanRequest, ReturnsAppendixPlan) {
  auto provider = script(reply({std::string("Here is the plan:\n```json\n") + testing::kAppendixPlanJson + "\n```"}));
  ExecutedStep step;
  const auto plan = plan_request("add a user profile screen reachable from settings detail", appendix_project(),
                                 *provider, {}, &step);
  EXPECT_EQ(plan, appendix_plan());
  EXPECT_EQ(step.stage, "plan");
  EXPECT_EQ(step.provider_call_id, "scripted-1");
  const auto sent = provider->received().at(0);
  EXPECT_EQ(sent.template_id, "plan");
  EXPECT_NE(sent.messages.back().content.find("OldSettingsView"), std::string::npos);
  EXPECT_NE(sent.messages.back().content.find("add a user profile screen"), std::string::npos);
}

TEST(PlanRequest, EmptyRequestMakesNoCall) {
  auto provider = script(reply({"{}"}));
  EXPECT_EQ(capture([&] { plan_request("  \n\t", appendix_project(), *provider); }).code(), "empty_request");
  EXPECT_TRUE(provider->received().empty());
}

TEST(PlanRequest, CreateDeleteConflictIsPlanInvalid) {
  const json bad = {{"changeType", "guiSkeleton"},
                    {"guiSkeletonChanges",
                     {{"newFilesToCreate", {{{"swiftUIViewName", "FooView"}, {"id", 0}}}},
                      {"filesToDelete", {{{"swiftUIViewName", "FooView"}, {"id", 0}}}}}}};
  auto provider = script(reply({bad, bad}));
  const auto e = capture([&] { plan_request("add foo", appendix_project(), *provider); });
  EXPECT_EQ(e.code(), "plan_invalid");
  EXPECT_TRUE(has_finding(e.detail().at("report"), "create_delete_conflict"));
  EXPECT_EQ(provider->received().size(), 2u);  // one repair re-prompt
}

TEST(PlanRequest, ClosureRepairedByReprompt) {
  auto broken = json::parse(testing::kAppendixPlanJson);
  broken["guiSkeletonChanges"]["filesToDelete"] = json::array();
  auto provider = script(reply({broken, json::parse(testing::kAppendixPlanJson)}));
  EXPECT_EQ(plan_request("remove old settings", appendix_project(), *provider), appendix_plan());
  EXPECT_NE(provider->received()[1].messages.back().content.find("closure_violation"), std::string::npos);
}

ExecuteOptions counting() {
  ExecuteOptions o;
  o.clock = testing::CountingClock{};
  return o;
}

std::vector<std::string> stages(const std::vector<ExecutedStep>& steps) {
  std::vector<std::string> out;
  for (const auto& s : steps) out.push_back(s.stage + ":" + s.target);
  return out;
}

TEST(ExecutePlan, AppendixPlanCascade) {
  const auto before = appendix_project();
  auto provider = script(testing::appendix_stage_script());
  const auto out = execute_plan(appendix_plan(), before, *provider, counting());

  const auto& sb = out.project.storyboard;
  EXPECT_FALSE(sb.find_view("OldSettingsView"));
  const auto* profile = sb.find_view("UserProfileView");
  ASSERT_TRUE(profile);
  EXPECT_EQ(profile->id, 103);  // proposed 101, allocated max+1
  EXPECT_EQ(profile->name, "User Profile");
  EXPECT_TRUE(sb.has_edge(103, 102));
  EXPECT_TRUE(sb.has_edge(51, 103));
  ASSERT_TRUE(sb.find_view("UserDetailsView"));
  EXPECT_TRUE(out.project.skeletons.contains(102));
  EXPECT_TRUE(out.project.skeletons.contains(103));
  EXPECT_FALSE(out.project.skeletons.contains(50));
  EXPECT_TRUE(out.project.data_model.find("UserService"));
  EXPECT_TRUE(out.project.validate().ok()) << out.project.validate().to_text();

  EXPECT_EQ(stages(out.steps), (std::vector<std::string>{"plan:-", "storyboard:-", "data_model:-",
                                                         "skeleton:UserDetailsView", "skeleton:UserProfileView"}));
  EXPECT_EQ(out.project.history, out.steps);
  EXPECT_EQ(provider->remaining(), 0u);
}

TEST(ExecutePlan, AppendixDiffCounts) {
  const auto before = appendix_project();
  auto provider = script(testing::appendix_stage_script());
  const auto after = execute_plan(appendix_plan(), before, *provider, counting()).project;
  const auto diff = diff_project(before, after);
  EXPECT_EQ(diff.skeletons.added, (std::vector<std::string>{"UserDetailsView", "UserProfileView"}));
  EXPECT_EQ(diff.skeletons.removed, (std::vector<std::string>{"OldSettingsView"}));
  EXPECT_EQ(diff.nodes.added, (std::vector<std::string>{"UserProfileView"}));
  EXPECT_EQ(diff.nodes.removed, (std::vector<std::string>{"OldSettingsView"}));
}

TEST(ExecutePlan, EmptyPlanIsIdentity) {
  const auto before = appendix_project();
  llm::ScriptedProvider provider({{std::nullopt, std::nullopt, "unused", 0, std::nullopt, false}});
  // A project whose every node has a valid skeleton, so nothing is pulled in.
  auto project = before;
  project.skeletons.emplace(102, testing::nav_skeleton("UserDetailsView", 102, {}));
  const auto out = execute_plan(ChangePlan{}, project, provider, counting());
  EXPECT_EQ(stages(out.steps), std::vector<std::string>{"plan:-"});
  auto without_history = out.project;
  without_history.history.clear();
  EXPECT_EQ(without_history, project);
  EXPECT_TRUE(diff_project(project, out.project).empty());
  EXPECT_TRUE(provider.received().empty());
}

TEST(ExecutePlan, InjectedFailuresLeaveProjectUntouched) {
  const auto before = appendix_project();
  const auto snapshot = before;

  // Skeleton stage keeps answering with a skeleton that navigates nowhere valid.
  auto bad_skeleton = testing::nav_skeleton("UserProfileView", 103, {"NowhereView"});
  auto s = testing::appendix_stage_script();
  s["responses"][2] = {{"template", "skeleton_mod"}, {"target", "UserProfileView"}, {"json", ir::to_json(bad_skeleton)}};
  s["responses"].push_back(s["responses"][2]);
  s["responses"].push_back(s["responses"][2]);
  auto provider = script(s);
  auto e = capture([&] { execute_plan(appendix_plan(), before, *provider, counting()); });
  EXPECT_EQ(e.code(), "stage_output_invalid");
  EXPECT_EQ(e.detail().at("stage"), "skeleton");
  EXPECT_EQ(e.detail().at("target"), "UserProfileView");
  EXPECT_EQ(before, snapshot);

  // Provider failure in the data model stage.
  s = testing::appendix_stage_script();
  s["responses"][1] = {{"template", "data_model_mod"}, {"errorStatus", 500}};
  provider = script(s);
  e = capture([&] { execute_plan(appendix_plan(), before, *provider, counting()); });
  EXPECT_EQ(e.code(), "provider_error");
  EXPECT_EQ(before, snapshot);

  // A data model that drops a field still referenced by an untouched skeleton.
  s = testing::appendix_stage_script();
  s["responses"][1]["json"]["entities"][0]["sourceText"] = "struct User {\n    var email: String\n}\n";
  provider = script(s);
  e = capture([&] { execute_plan(appendix_plan(), before, *provider, counting()); });
  EXPECT_NE(e.code(), "none");
  EXPECT_EQ(before, snapshot);
}

TEST(ExecutePlan, InvalidPlanIsRejectedBeforeAnyCall) {
  auto plan = appendix_plan();
  plan.skeletons.files_to_delete.clear();
  auto provider = script(testing::appendix_stage_script());
  EXPECT_EQ(capture([&] { execute_plan(plan, appendix_project(), *provider); }).code(), "plan_invalid");
  EXPECT_TRUE(provider->received().empty());
}

TEST(ExecutePlan, DirectSkeletonEditIsKeptVerbatim) {
  auto project = appendix_project();
  project.skeletons.emplace(102, testing::nav_skeleton("UserDetailsView", 102, {}));
  auto edited = testing::nav_skeleton("HomeView", 1, {"SettingsView"}, {"user.email"});
  ExecuteOptions options = counting();
  options.direct_edit = DirectEdit{edited};
  llm::ScriptedProvider provider({{std::nullopt, std::nullopt, "unused", 0, std::nullopt, false}});
  const auto out = execute_plan(ChangePlan{}, project, provider, options);
  EXPECT_EQ(out.project.skeletons.at(1), edited);
  EXPECT_EQ(stages(out.steps), (std::vector<std::string>{"plan:-", "skeleton:HomeView"}));
  EXPECT_TRUE(provider.received().empty());
}

TEST(ExecutePlan, RemovedDestinationPullsInDependentSkeleton) {
  auto project = appendix_project();
  project.skeletons.emplace(102, testing::nav_skeleton("UserDetailsView", 102, {}));
  ChangePlan plan;
  plan.storyboard.remove_screens = {{51, "SettingsView"}};
  plan.skeletons.files_to_delete = {{"SettingsView", 51}};
  // HomeView and OldSettingsView both navigate to SettingsView.
  json s = {{"responses",
             {{{"template", "skeleton_mod"}, {"target", "HomeView"}, {"json", ir::to_json(testing::nav_skeleton("HomeView", 1, {}))}},
              {{"template", "skeleton_mod"},
               {"target", "OldSettingsView"},
               {"json", ir::to_json(testing::nav_skeleton("OldSettingsView", 50, {}))}}}}};
  auto provider = script(s);
  const auto out = execute_plan(plan, project, *provider, counting());
  EXPECT_EQ(stages(out.steps), (std::vector<std::string>{"plan:-", "storyboard:-", "skeleton:HomeView", "skeleton:OldSettingsView"}));
  EXPECT_EQ(out.steps[2].detail.at("reason"), "invalidated");
  EXPECT_TRUE(out.project.validate().ok());
}

// Concurrency: four skeleton calls with injected delays.
json delayed_script(int delay_ms) {
  json responses = json::array();
  const std::vector<std::pair<std::string, ir::NodeId>> views = {
      {"HomeView", 1}, {"OldSettingsView", 50}, {"SettingsView", 51}, {"UserDetailsView", 102}};
  const std::map<std::string, std::vector<std::string>> nav = {
      {"HomeView", {"SettingsView"}}, {"OldSettingsView", {"SettingsView"}}, {"SettingsView", {"UserDetailsView"}}, {"UserDetailsView", {}}};
  for (const auto& [view, id] : views) {
    responses.push_back({{"template", "skeleton_mod"},
                         {"target", view},
                         {"delayMs", delay_ms},
                         {"json", ir::to_json(testing::nav_skeleton(view, id, nav.at(view), {"user.email"}))}});
  }
  return {{"responses", responses}};
}

TEST(ExecutePlan, SkeletonStageRunsConcurrently) {
  const int delay = 300;
  auto project = appendix_project();
  ChangePlan plan;
  for (const auto& n : project.storyboard.nodes) plan.skeletons.files_to_modify.push_back({n.view_name, n.id});

  auto run = [&](bool concurrent, double& ms) {
    auto provider = script(delayed_script(delay));
    ExecuteOptions options = counting();
    options.concurrent_skeletons = concurrent;
    const auto t0 = std::chrono::steady_clock::now();
    auto out = execute_plan(plan, project, *provider, options);
    ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
  };
  double parallel_ms = 0;
  double serial_ms = 0;
  const auto parallel = run(true, parallel_ms);
  const auto serial = run(false, serial_ms);
  EXPECT_LT(parallel_ms, 4 * delay);
  EXPECT_GE(serial_ms, 4 * delay);

  auto strip = [](Project p) {
    p.history.clear();
    return p;
  };
  EXPECT_EQ(strip(parallel.project), strip(serial.project));
  ASSERT_EQ(parallel.steps.size(), serial.steps.size());
  for (std::size_t i = 0; i < serial.steps.size(); ++i) {
    EXPECT_EQ(parallel.steps[i].stage, serial.steps[i].stage);
    EXPECT_EQ(parallel.steps[i].target, serial.steps[i].target);
    EXPECT_EQ(parallel.steps[i].provider_call_id, serial.steps[i].provider_call_id);
  }
}

TEST(Diff, SelfDiffIsEmpty) {
  const auto p = appendix_project();
  EXPECT_TRUE(diff_project(p, p).empty());
  EXPECT_TRUE(describe_edit(p, p).empty());
}

TEST(Diff, SingleConnectionTouchesOneNode) {
  const auto before = appendix_project();
  auto after = before;
  after.storyboard = ir::apply_storyboard_change(after.storyboard, ir::AddConnection{102, 1});
  const auto diff = diff_project(before, after);
  EXPECT_EQ(diff.nodes.modified, std::vector<std::string>{"UserDetailsView"});
  EXPECT_TRUE(diff.nodes.added.empty());
  EXPECT_TRUE(diff.nodes.removed.empty());
  EXPECT_TRUE(diff.entities.empty());
  EXPECT_TRUE(diff.skeletons.empty());
  EXPECT_NE(describe_edit(before, after).find("added connection `UserDetailsView` (id 102) -> `HomeView` (id 1)"),
            std::string::npos);
}

}  // namespace
}  // namespace irforge::plan
