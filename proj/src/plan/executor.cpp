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

#include "irforge/plan/executor.hpp"

#include <algorithm>
#include <exception>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "irforge/error.hpp"
#include "irforge/ir/serialize.hpp"
#include "irforge/ir/validate.hpp"
#include "irforge/llm/complete.hpp"
#include "irforge/plan/planner.hpp"

namespace irforge::plan {

using nlohmann::json;

namespace {

const llm::TemplateLibrary& library(const ExecuteOptions& options) {
  static const auto fallback = llm::TemplateLibrary::defaults();
  return options.templates ? *options.templates : fallback;
}

llm::CompletionOptions completion_options(const ExecuteOptions& options, std::string target = {}) {
  llm::CompletionOptions out;
  out.target = std::move(target);
  out.max_reprompts = options.max_reprompts;
  return out;
}

[[noreturn]] void stage_invalid(const std::string& stage, const json& report, const std::string& target = {}) {
  json detail = {{"stage", stage}, {"report", report}};
  if (!target.empty()) detail["target"] = target;
  throw Error("stage_output_invalid", stage + " stage produced invalid output", detail);
}

// Runs a stage call, translating exhausted schema retries into stage_output_invalid.
template <class F>
auto guarded(const std::string& stage, const std::string& target, F&& call) {
  try {
    return call();
  } catch (const Error& e) {
    if (e.code() != "schema_error_after_retries") throw;
    stage_invalid(stage, e.detail().value("report", json::object()), target);
  }
}

std::string change_text(const ChangePlan& plan, const std::string& request) {
  std::string out;
  if (!request.empty()) out += "User request:\n" + request + "\n\n";
  out += "Planned changes:\n" + describe(plan);
  return out;
}

// Copies from the model's storyboard only what it may decide: names and
// descriptions of added screens, edges touching them, and the entry node.
ir::Storyboard merge_storyboard(ir::Storyboard local, const ir::Storyboard& reply, const std::set<ir::NodeId>& added) {
  auto locate = [&](const ir::StoryboardNode& node) -> const ir::StoryboardNode* {
    if (const auto* r = reply.find(node.id); r != nullptr && r->view_name == node.view_name) return r;
    if (const auto* r = reply.find_view(node.view_name)) return r;
    return reply.find(node.id);
  };
  // Reply ids may not match ours; translate through view names.
  std::map<ir::NodeId, ir::NodeId> to_local;
  for (const auto& r : reply.nodes) {
    if (const auto* n = local.find_view(r.view_name)) to_local[r.id] = n->id;
  }
  for (auto& node : local.nodes) {
    if (!added.contains(node.id)) continue;
    const auto* r = locate(node);
    if (r == nullptr) continue;
    if (!r->name.empty()) node.name = r->name;
    if (!r->description.empty()) node.description = r->description;
  }
  for (const auto& r : reply.nodes) {
    auto from = to_local.find(r.id);
    if (from == to_local.end()) continue;
    for (auto target : r.outgoing_edges) {
      auto to = to_local.find(target);
      if (to == to_local.end() || from->second == to->second) continue;
      if (!added.contains(from->second) && !added.contains(to->second)) continue;
      if (local.has_edge(from->second, to->second)) continue;
      for (auto& n : local.nodes) {
        if (n.id == from->second) n.outgoing_edges.push_back(to->second);
      }
    }
  }
  if (reply.entry_node_id) {
    if (auto e = to_local.find(*reply.entry_node_id); e != to_local.end() && !added.empty()) local.entry_node_id = e->second;
  }
  return local;
}

}  // namespace

std::vector<SkeletonResult> run_skeleton_jobs(const std::vector<SkeletonJob>& jobs, const SkeletonStage& stage,
                                              llm::Provider& provider, const ExecuteOptions& options) {
  const auto& tmpl = library(options).get(llm::TemplateId::SkeletonMod);
  const auto storyboard_text = ir::serialize(*stage.storyboard);
  const auto data_model_text = ir::serialize(*stage.data_model);

  auto run = [&](const SkeletonJob& job) {
    const auto* node = stage.storyboard->find(job.node_id);
    std::ostringstream change;
    change << stage.change << "\nThis call writes the skeleton of `" << job.view_name << "` (screen id " << job.node_id
           << ")";
    if (node != nullptr && !node->name.empty()) change << ", screen \"" << node->name << "\"";
    if (node != nullptr && !node->description.empty()) change << ": " << node->description;
    change << ".";
    const auto prompt = llm::render_prompt(
        tmpl, {{"currentStoryboard", storyboard_text},
               {"currentDataModel", data_model_text},
               {"currentSkeleton", job.current ? ir::serialize(*job.current) : "(new screen, no skeleton yet)"},
               {"navigationPlan", stage.navigation_plan},
               {"change", change.str()}});
    auto read = [&](const json& value) {
      auto s = ir::skeleton_from_json(value);
      s.node_id = job.node_id;
      s.view_name = job.view_name;
      return s;
    };
    auto check = llm::make_check<ir::GuiSkeleton>(read, [&](const ir::GuiSkeleton& s) {
      auto report = ir::validate_skeleton(s);
      report.merge(ir::validate_skeleton_in_context(s, *stage.storyboard, *stage.data_model));
      return report;
    });
    SkeletonResult result;
    result.step = {"skeleton", job.view_name, options.clock(), {}, std::nullopt, nullptr};
    if (!job.reason.empty()) result.step.detail = {{"reason", job.reason}};
    auto out = guarded("skeleton", job.view_name,
                       [&] { return llm::complete_json(provider, prompt, check, completion_options(options, job.view_name)); });
    result.step.ended_at = options.clock();
    result.step.provider_call_id = out.call_id();
    result.skeleton = read(out.value);
    return result;
  };

  std::vector<SkeletonResult> results;
  if (!options.concurrent_skeletons || jobs.size() < 2) {
    for (const auto& job : jobs) results.push_back(run(job));
    return results;
  }
  std::vector<std::future<SkeletonResult>> pending;
  pending.reserve(jobs.size());
  for (const auto& job : jobs) pending.push_back(std::async(std::launch::async, run, std::cref(job)));
  for (auto& f : pending) f.wait();
  std::exception_ptr first;
  for (auto& f : pending) {
    try {
      results.push_back(f.get());
    } catch (...) {
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
  return results;
}

Execution execute_plan(const ChangePlan& plan, const Project& project, llm::Provider& provider,
                       const ExecuteOptions& options) {
  if (const auto report = validate_plan(plan, project); !report.ok()) {
    throw Error("plan_invalid", "plan does not apply to this project", {{"report", ir::to_json(report)}});
  }
  const auto& lib = library(options);
  const auto change = change_text(plan, options.request);
  const auto* edit_sb = options.direct_edit ? std::get_if<ir::Storyboard>(&options.direct_edit->value) : nullptr;
  const auto* edit_dm = options.direct_edit ? std::get_if<ir::DataModel>(&options.direct_edit->value) : nullptr;
  const auto* edit_sk = options.direct_edit ? std::get_if<ir::GuiSkeleton>(&options.direct_edit->value) : nullptr;

  std::vector<ExecutedStep> steps;
  auto log = [&](ExecutedStep step) {
    if (options.on_step) options.on_step(step);
    steps.push_back(std::move(step));
  };
  if (options.plan_step) {
    log(*options.plan_step);
  } else {
    const auto now = options.clock();
    log({"plan", "-", now, now, std::nullopt, nullptr});
  }

  // Storyboard: structural atoms locally, then one call to fill in content.
  ir::Storyboard sb = project.storyboard;
  std::map<ir::NodeId, ir::NodeId> remap;  // proposed id -> allocated id
  std::set<ir::NodeId> added;
  if (edit_sb != nullptr) {
    const auto now = options.clock();
    sb = *edit_sb;
    log({"storyboard", "-", now, options.clock(), std::nullopt, {{"directEdit", true}}});
  } else if (!plan.storyboard.empty()) {
    ExecutedStep step{"storyboard", "-", options.clock(), {}, std::nullopt, nullptr};
    const auto& c = plan.storyboard;
    try {
      for (const auto& r : c.remove_connections) {
        if (sb.has_edge(r.from, r.to)) sb = ir::apply_storyboard_change(sb, ir::RemoveConnection{r.from, r.to});
      }
      for (const auto& r : c.remove_screens) sb = ir::apply_storyboard_change(sb, ir::RemoveScreen{r.id});
      for (const auto& s : c.add_screens) {
        sb = ir::apply_storyboard_change(sb, ir::AddScreen{s.name, s.description, planned_view_name(s)});
        const auto id = sb.nodes.back().id;
        added.insert(id);
        if (s.id != 0 && !project.storyboard.contains(s.id)) remap[s.id] = id;
      }
      auto local = [&](ir::NodeId id) {
        auto it = remap.find(id);
        return it == remap.end() ? id : it->second;
      };
      for (const auto& a : c.add_connections) {
        const auto from = local(a.from);
        const auto to = local(a.to);
        if (!sb.has_edge(from, to)) sb = ir::apply_storyboard_change(sb, ir::AddConnection{from, to});
      }
      if (c.entry_node_id) sb.entry_node_id = local(*c.entry_node_id);
    } catch (const Error& e) {
      ir::ValidationReport report;
      report.error(e.code(), "storyboardChanges", e.what());
      stage_invalid("storyboard", ir::to_json(report));
    }
    if (!added.empty()) {
      const auto prompt = llm::render_prompt(lib.get(llm::TemplateId::StoryboardMod),
                                             {{"currentStoryboard", ir::serialize(sb)}, {"change", change}});
      auto check = llm::make_check<ir::Storyboard>(ir::storyboard_from_json, ir::validate_storyboard);
      auto out = guarded("storyboard", "",
                         [&] { return llm::complete_json(provider, prompt, check, completion_options(options)); });
      sb = merge_storyboard(std::move(sb), ir::storyboard_from_json(out.value), added);
      step.provider_call_id = out.call_id();
    }
    if (const auto report = ir::validate_storyboard(sb); !report.ok()) stage_invalid("storyboard", ir::to_json(report));
    step.ended_at = options.clock();
    log(std::move(step));
  }

  // Data model: one call for all requested entity changes.
  ir::DataModel dm = project.data_model;
  if (edit_dm != nullptr) {
    const auto now = options.clock();
    dm = *edit_dm;
    log({"data_model", "-", now, options.clock(), std::nullopt, {{"directEdit", true}}});
  } else if (!plan.data_model.empty()) {
    ExecutedStep step{"data_model", "-", options.clock(), {}, std::nullopt, nullptr};
    std::string entities;
    for (const auto& f : plan.data_model.files_to_modify) entities += (entities.empty() ? "" : ", ") + f.name;
    const auto prompt = llm::render_prompt(lib.get(llm::TemplateId::DataModelMod),
                                           {{"currentStoryboard", ir::serialize(sb)},
                                            {"currentDataModel", ir::serialize(dm)},
                                            {"change", change + "\nEntities to update: " + entities + "."}});
    auto check = llm::make_check<ir::DataModel>(ir::data_model_from_json, ir::validate_data_model);
    auto out =
        guarded("data_model", "", [&] { return llm::complete_json(provider, prompt, check, completion_options(options)); });
    dm = ir::data_model_from_json(out.value);
    step.provider_call_id = out.call_id();
    step.ended_at = options.clock();
    log(std::move(step));
  }

  // Skeletons: drop the ones whose screen is gone, then regenerate the planned
  // ones plus any left missing or invalidated by the earlier stages.
  std::map<ir::NodeId, ir::GuiSkeleton> skeletons = project.skeletons;
  auto resolve = [&](const FileRef& f) -> const ir::StoryboardNode* {
    if (auto it = remap.find(f.id); it != remap.end()) return sb.find(it->second);
    if (const auto* n = sb.find(f.id); n != nullptr && (f.name.empty() || n->view_name == f.name || !sb.find_view(f.name))) {
      return n;
    }
    return sb.find_view(f.name);
  };
  for (const auto& f : plan.skeletons.files_to_delete) {
    if (project.storyboard.contains(f.id) && !sb.contains(f.id)) {
      skeletons.erase(f.id);
    } else if (const auto* n = project.storyboard.find_view(f.name); n != nullptr && !sb.contains(n->id)) {
      skeletons.erase(n->id);
    }
  }
  std::erase_if(skeletons, [&](const auto& entry) { return !sb.contains(entry.first); });

  std::optional<ir::NodeId> edited_node;
  if (edit_sk != nullptr) {
    const auto* n = sb.find(edit_sk->node_id);
    if (n == nullptr || n->view_name != edit_sk->view_name) n = sb.find_view(edit_sk->view_name);
    if (n == nullptr) {
      ir::ValidationReport report;
      report.error("orphan_skeleton", "skeleton", "`" + edit_sk->view_name + "` is not a screen in the storyboard");
      stage_invalid("skeleton", ir::to_json(report), edit_sk->view_name);
    }
    auto s = *edit_sk;
    s.node_id = n->id;
    skeletons[n->id] = s;
    edited_node = n->id;
    const auto now = options.clock();
    log({"skeleton", n->view_name, now, options.clock(), std::nullopt, {{"directEdit", true}}});
  }

  std::map<ir::NodeId, std::string> wanted;  // node -> reason
  for (const auto* list : {&plan.skeletons.files_to_modify, &plan.skeletons.new_files_to_create}) {
    for (const auto& f : *list) {
      if (const auto* n = resolve(f)) wanted.emplace(n->id, "");
    }
  }
  for (const auto& node : sb.nodes) {
    if (wanted.contains(node.id)) continue;
    auto it = skeletons.find(node.id);
    if (it == skeletons.end()) {
      wanted.emplace(node.id, "missing");
    } else if (it->second.view_name != node.view_name ||
               !ir::validate_skeleton_in_context(it->second, sb, dm).ok() ||
               !ir::validate_skeleton(it->second).ok()) {
      wanted.emplace(node.id, "invalidated");
    }
  }
  if (edited_node) wanted.erase(*edited_node);

  std::vector<SkeletonJob> jobs;
  for (const auto& [id, reason] : wanted) {
    const auto* node = sb.find(id);
    std::optional<ir::GuiSkeleton> current;
    if (auto it = skeletons.find(id); it != skeletons.end()) current = it->second;
    jobs.push_back({id, node->view_name, std::move(current), reason});
  }
  SkeletonStage stage{&sb, &dm, change, "(none)"};
  for (auto& result : run_skeleton_jobs(jobs, stage, provider, options)) {
    skeletons[result.skeleton.node_id] = std::move(result.skeleton);
    log(std::move(result.step));
  }

  Project next{std::move(sb), std::move(dm), std::move(skeletons), project.design_scaffold, project.history};
  if (auto report = next.validate(); !report.ok()) {
    std::string stage_name = "skeleton";
    for (const auto& f : report.findings) {
      if (f.severity != ir::Severity::Error) continue;
      if (f.path.rfind("storyboard.", 0) == 0) {
        stage_name = "storyboard";
        break;
      }
      if (f.path.rfind("dataModel.", 0) == 0) stage_name = "data_model";
    }
    stage_invalid(stage_name, ir::to_json(report));
  }
  next.history.insert(next.history.end(), steps.begin(), steps.end());
  return {std::move(next), std::move(steps)};
}

}  // namespace irforge::plan
