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

#include "irforge/plan/diff.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "irforge/ir/skeleton.hpp"

namespace irforge::plan {

using nlohmann::json;

namespace {

json set_json(const ChangeSet& s) { return {{"added", s.added}, {"removed", s.removed}, {"modified", s.modified}}; }

template <class Map, class Label>
ChangeSet compare(const Map& before, const Map& after, Label label) {
  ChangeSet out;
  for (const auto& [key, value] : before) {
    auto it = after.find(key);
    if (it == after.end()) {
      out.removed.push_back(label(value));
    } else if (!(it->second == value)) {
      out.modified.push_back(label(it->second));
    }
  }
  for (const auto& [key, value] : after) {
    if (!before.contains(key)) out.added.push_back(label(value));
  }
  return out;
}

std::map<ir::NodeId, ir::StoryboardNode> nodes_by_id(const ir::Storyboard& sb) {
  std::map<ir::NodeId, ir::StoryboardNode> out;
  for (const auto& n : sb.nodes) out.emplace(n.id, n);
  return out;
}

std::map<std::string, ir::DataEntity> entities_by_name(const ir::DataModel& dm) {
  std::map<std::string, ir::DataEntity> out;
  for (const auto& e : dm.entities) out.emplace(e.name, e);
  return out;
}

std::map<std::string, ir::GuiSkeleton> skeletons_by_view(const Project& p) {
  std::map<std::string, ir::GuiSkeleton> out;
  for (const auto& [id, s] : p.skeletons) out.emplace(s.view_name, s);
  return out;
}

std::string label(const ir::Storyboard& sb, ir::NodeId id) {
  const auto* n = sb.find(id);
  return n ? "`" + n->view_name + "` (id " + std::to_string(id) + ")" : "screen " + std::to_string(id);
}

}  // namespace

ProjectDiff diff_project(const Project& before, const Project& after) {
  ProjectDiff diff;
  diff.nodes = compare(nodes_by_id(before.storyboard), nodes_by_id(after.storyboard),
                       [](const ir::StoryboardNode& n) { return n.view_name; });
  diff.entities = compare(entities_by_name(before.data_model), entities_by_name(after.data_model),
                          [](const ir::DataEntity& e) { return e.name; });
  diff.skeletons = compare(skeletons_by_view(before), skeletons_by_view(after),
                           [](const ir::GuiSkeleton& s) { return s.view_name; });
  diff.entry_changed = before.storyboard.effective_entry() != after.storyboard.effective_entry();
  return diff;
}

json to_json(const ProjectDiff& diff) {
  return {{"nodes", set_json(diff.nodes)},
          {"entities", set_json(diff.entities)},
          {"skeletons", set_json(diff.skeletons)},
          {"entryChanged", diff.entry_changed}};
}

std::string describe_edit(const Project& before, const Project& after) {
  std::ostringstream out;
  const auto& b = before.storyboard;
  const auto& a = after.storyboard;
  for (const auto& n : b.nodes) {
    if (!a.contains(n.id)) out << "- removed screen " << label(b, n.id) << "\n";
  }
  for (const auto& n : a.nodes) {
    const auto* old = b.find(n.id);
    if (old == nullptr) {
      out << "- added screen " << label(a, n.id) << " \"" << n.name << "\"";
      if (!n.description.empty()) out << ": " << n.description;
      out << "\n";
      continue;
    }
    if (old->view_name != n.view_name) out << "- renamed view " << old->view_name << " to " << n.view_name << "\n";
    if (old->name != n.name) out << "- renamed screen " << label(a, n.id) << " to \"" << n.name << "\"\n";
    if (old->description != n.description) {
      out << "- changed description of " << label(a, n.id) << " to \"" << n.description << "\"\n";
    }
  }
  for (const auto& n : a.nodes) {
    for (auto to : n.outgoing_edges) {
      if (!b.has_edge(n.id, to)) out << "- added connection " << label(a, n.id) << " -> " << label(a, to) << "\n";
    }
  }
  for (const auto& n : b.nodes) {
    for (auto to : n.outgoing_edges) {
      if (!a.has_edge(n.id, to)) out << "- removed connection " << label(b, n.id) << " -> " << label(b, to) << "\n";
    }
  }
  if (b.effective_entry() != a.effective_entry() && a.effective_entry()) {
    out << "- entry screen is now " << label(a, *a.effective_entry()) << "\n";
  }

  const auto eb = entities_by_name(before.data_model);
  const auto ea = entities_by_name(after.data_model);
  for (const auto& [name, e] : eb) {
    if (!ea.contains(name)) out << "- removed entity " << name << "\n";
  }
  for (const auto& [name, e] : ea) {
    auto it = eb.find(name);
    if (it == eb.end()) {
      out << "- added entity:\n" << e.source_text << "\n";
    } else if (!(it->second == e)) {
      out << "- changed entity " << name << " to:\n" << e.source_text << "\n";
    }
  }

  const auto sb_ = skeletons_by_view(before);
  const auto sa = skeletons_by_view(after);
  for (const auto& [view, s] : sb_) {
    if (!sa.contains(view)) out << "- removed skeleton " << view << "\n";
  }
  for (const auto& [view, s] : sa) {
    auto it = sb_.find(view);
    if (it == sb_.end() || !(it->second == s)) {
      out << "- " << (it == sb_.end() ? "added" : "edited") << " skeleton " << view << ":\n" << ir::to_pseudocode(s);
    }
  }
  return out.str();
}

}  // namespace irforge::plan
