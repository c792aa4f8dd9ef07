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

#include "irforge/plan/planner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "irforge/error.hpp"
#include "irforge/ir/serialize.hpp"
#include "irforge/llm/complete.hpp"

namespace irforge::plan {

namespace {

std::string at(std::string_view list, std::size_t i) {
  return std::string(list) + "[" + std::to_string(i) + "]";
}

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

std::string planned_view_name(const PlannedScreen& screen) {
  if (screen.view_name && ir::is_type_identifier(*screen.view_name)) return *screen.view_name;
  return ir::derive_view_name(screen.view_name ? *screen.view_name : screen.name);
}

ir::ValidationReport validate_plan(const ChangePlan& plan, const Project& project) {
  ir::ValidationReport report;
  const auto& sb = project.storyboard;
  const auto& changes = plan.storyboard;

  std::set<NodeId> removed;
  for (std::size_t i = 0; i < changes.remove_screens.size(); ++i) {
    const auto& r = changes.remove_screens[i];
    const auto path = at("storyboardChanges.removeScreens", i);
    const auto* node = sb.find(r.id);
    if (node == nullptr) {
      report.error("unknown_node", path + ".id", "no screen with id " + std::to_string(r.id));
      continue;
    }
    removed.insert(r.id);
    if (!r.name.empty() && r.name != node->view_name && r.name != node->name) {
      report.warning("name_mismatch", path + ".name",
                     "screen " + std::to_string(r.id) + " is `" + node->view_name + "`, not `" + r.name + "`");
    }
  }

  // Proposed id -> view name of each added screen.
  std::map<NodeId, std::string> added;
  std::set<std::string> added_views;
  for (std::size_t i = 0; i < changes.add_screens.size(); ++i) {
    const auto& s = changes.add_screens[i];
    const auto view = planned_view_name(s);
    if (s.id != 0 && !sb.contains(s.id)) added.emplace(s.id, view);
    added_views.insert(view);
    const auto* clash = sb.find_view(view);
    if (clash != nullptr && !removed.contains(clash->id)) {
      report.warning("view_name_taken", at("storyboardChanges.addScreens", i),
                     "`" + view + "` already exists; the new screen will be renamed");
    }
  }

  auto live = [&](NodeId id) { return added.contains(id) || (sb.contains(id) && !removed.contains(id)); };

  for (std::size_t i = 0; i < changes.remove_connections.size(); ++i) {
    const auto& c = changes.remove_connections[i];
    if (!sb.has_edge(c.from, c.to)) {
      report.error("unknown_edge", at("storyboardChanges.removeConnections", i),
                   "no connection " + std::to_string(c.from) + " -> " + std::to_string(c.to));
    }
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::size_t i = 0; i < changes.add_connections.size(); ++i) {
    const auto& c = changes.add_connections[i];
    const auto path = at("storyboardChanges.addConnections", i);
    bool ok = true;
    for (auto [id, field] : {std::pair{c.from, ".from"}, std::pair{c.to, ".to"}}) {
      if (!live(id)) {
        report.error("unknown_node", path + field, "no screen with id " + std::to_string(id) + " after this change");
        ok = false;
      }
    }
    if (!ok) continue;
    if (c.from == c.to) {
      report.error("self_edge", path, "a screen cannot connect to itself");
      continue;
    }
    const bool removed_edge = std::any_of(changes.remove_connections.begin(), changes.remove_connections.end(),
                                          [&](const Connection& r) { return r == c; });
    if ((sb.has_edge(c.from, c.to) && !removed_edge) || !seen.insert({c.from, c.to}).second) {
      report.warning("duplicate_edge", path, "connection already present");
    }
  }
  if (changes.entry_node_id && !live(*changes.entry_node_id)) {
    report.error("unknown_node", "storyboardChanges.entryNodeId",
                 "no screen with id " + std::to_string(*changes.entry_node_id) + " after this change");
  }

  // Resolves a skeleton file reference to a node key: the id when it names a
  // live or added node, otherwise the view name.
  struct Resolved {
    bool found = false;
    bool is_added = false;
    NodeId id = 0;
    std::string view;
  };
  auto resolve = [&](const FileRef& f) {
    Resolved r;
    if (auto it = added.find(f.id); it != added.end()) return Resolved{true, true, f.id, it->second};
    if (const auto* n = sb.find(f.id)) return Resolved{true, false, n->id, n->view_name};
    if (const auto* n = sb.find_view(f.name)) return Resolved{true, false, n->id, n->view_name};
    if (added_views.contains(f.name)) return Resolved{true, true, 0, f.name};
    return r;
  };

  const auto& gs = plan.skeletons;
  std::set<std::string> covered;  // view names created or modified
  std::set<NodeId> deleted;
  std::set<std::string> deleted_views;
  auto check_list = [&](const std::vector<FileRef>& files, std::string_view list, bool deleting) {
    for (std::size_t i = 0; i < files.size(); ++i) {
      const auto& f = files[i];
      const auto path = at(list, i);
      const auto r = resolve(f);
      if (!r.found) {
        report.error("unknown_view", path, "`" + f.name + "` is not a screen in the storyboard or this plan");
        continue;
      }
      if (!f.name.empty() && f.name != r.view) {
        report.warning("name_mismatch", path + ".swiftUIViewName", "id " + std::to_string(f.id) + " is `" + r.view + "`");
      }
      if (deleting) {
        if (r.is_added || !removed.contains(r.id)) {
          report.error("closure_violation", path, "skeleton `" + r.view + "` is deleted but its screen stays");
        }
        deleted.insert(r.id);
        deleted_views.insert(r.view);
      } else {
        if (!r.is_added && removed.contains(r.id)) {
          report.error("closure_violation", path, "skeleton `" + r.view + "` belongs to a removed screen");
        }
        covered.insert(r.view);
      }
    }
  };
  check_list(gs.files_to_modify, "guiSkeletonChanges.filesToModify", false);
  check_list(gs.new_files_to_create, "guiSkeletonChanges.newFilesToCreate", false);
  check_list(gs.files_to_delete, "guiSkeletonChanges.filesToDelete", true);

  for (std::size_t i = 0; i < gs.new_files_to_create.size(); ++i) {
    const auto& name = gs.new_files_to_create[i].name;
    const bool conflict = std::any_of(gs.files_to_delete.begin(), gs.files_to_delete.end(),
                                      [&](const FileRef& d) { return d.name == name; });
    if (conflict) {
      report.error("create_delete_conflict", at("guiSkeletonChanges.newFilesToCreate", i),
                   "`" + name + "` is both created and deleted");
    }
  }

  for (std::size_t i = 0; i < changes.remove_screens.size(); ++i) {
    const auto* node = sb.find(changes.remove_screens[i].id);
    if (node == nullptr) continue;
    if (!deleted.contains(node->id) && !deleted_views.contains(node->view_name)) {
      report.error("closure_violation", at("storyboardChanges.removeScreens", i),
                   "removed screen `" + node->view_name + "` is missing from filesToDelete");
    }
  }
  for (std::size_t i = 0; i < changes.add_screens.size(); ++i) {
    const auto view = planned_view_name(changes.add_screens[i]);
    if (!covered.contains(view)) {
      report.error("closure_violation", at("storyboardChanges.addScreens", i),
                   "added screen `" + view + "` has no skeleton in newFilesToCreate or filesToModify");
    }
  }
  return report;
}

std::string skeleton_index(const Project& project) {
  std::ostringstream out;
  for (const auto& node : project.storyboard.nodes) {
    out << "- " << node.view_name << " (id " << node.id << ")"
        << (project.skeletons.contains(node.id) ? "" : " [no skeleton yet]") << "\n";
  }
  return out.str();
}

ChangePlan plan_request(std::string_view request, const Project& project, llm::Provider& provider,
                        const PlanOptions& options, ExecutedStep* step) {
  if (is_blank(request)) throw Error("empty_request", "request text is empty");
  const auto& lib = options.templates ? *options.templates : llm::TemplateLibrary::defaults();
  const auto prompt = llm::render_prompt(lib.get(llm::TemplateId::Plan),
                                         {{"currentStoryboard", ir::serialize(project.storyboard)},
                                          {"currentDataModel", ir::serialize(project.data_model)},
                                          {"skeletonIndex", skeleton_index(project)},
                                          {"request", std::string(request)}});
  auto check = llm::make_check<ChangePlan>(plan_from_json, [&](const ChangePlan& plan) { return validate_plan(plan, project); });

  ExecutedStep record{"plan", "-", options.clock(), {}, std::nullopt, nullptr};
  llm::CompletionOptions copts;
  copts.max_reprompts = options.max_reprompts;
  try {
    auto out = llm::complete_json(provider, prompt, check, copts);
    record.ended_at = options.clock();
    record.provider_call_id = out.call_id();
    if (step != nullptr) *step = record;
    return plan_from_json(out.value);
  } catch (const Error& e) {
    if (e.code() != "schema_error_after_retries") throw;
    throw Error("plan_invalid", std::string("plan rejected: ") + e.what(), e.detail());
  }
}

}  // namespace irforge::plan
