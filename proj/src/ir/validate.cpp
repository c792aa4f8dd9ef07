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

#include "irforge/ir/validate.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace irforge::ir {

namespace {

void prefix_paths(ValidationReport& report, const std::string& prefix) {
  for (auto& f : report.findings) f.path = prefix + f.path;
}

bool icontains(std::string_view haystack, std::string_view needle) {
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(), [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
  });
  return it != haystack.end();
}

// Symbol names such as "person.circle" look like data references but are not.
bool is_symbol_attribute(const SkeletonElement& e, std::string_view key) {
  return e.kind == ElementKind::Image || icontains(key, "icon") || icontains(key, "symbol") ||
         icontains(key, "system");
}

}  // namespace

ValidationReport validate_skeleton_in_context(const GuiSkeleton& skeleton, const Storyboard& sb, const DataModel& dm) {
  ValidationReport report = validate_skeleton(skeleton);
  const std::string base = "skeletons[" + skeleton.view_name + "]";

  const StoryboardNode* owner = sb.find(skeleton.node_id);
  if (owner == nullptr) {
    report.error("orphan_skeleton", base + ".id",
                 "skeleton belongs to node " + std::to_string(skeleton.node_id) + " which is not in the storyboard");
  } else if (owner->view_name != skeleton.view_name) {
    report.error("view_name_mismatch", base + ".viewName",
                 "skeleton is named `" + skeleton.view_name + "` but node " + std::to_string(owner->id) + " is `" +
                     owner->view_name + "`");
  }

  std::vector<std::string> destinations;
  for_each_element(skeleton.layout, [&](const SkeletonElement& e, const std::string& path) {
    const std::string where = base + "." + path;
    if (e.action && e.action->navigate()) {
      const auto& dest = e.action->navigate()->destination;
      destinations.push_back(dest);
      const StoryboardNode* target = sb.find_view(dest);
      if (!dest.empty() && target == nullptr) {
        report.error("unknown_destination", where, "Navigate destination `" + dest + "` is not a storyboard view");
      } else if (target != nullptr && owner != nullptr && !sb.has_edge(owner->id, target->id)) {
        report.error("navigate_not_edge", where,
                     "`" + owner->view_name + "` has no storyboard edge to `" + dest + "`");
      }
    }
    for (const auto& [key, value] : e.attributes) {
      if (is_symbol_attribute(e, key)) continue;
      auto ref = parse_data_ref(value);
      if (!ref) continue;
      const DataEntity* entity = dm.find_instance(ref->first);
      if (entity == nullptr) {
        report.error("unresolved_data_ref", where + "." + key, "`" + value + "` names no data model entity");
      } else if (entity->field(ref->second) == nullptr) {
        report.error("unresolved_data_ref", where + "." + key,
                     "`" + value + "`: entity `" + entity->name + "` has no field `" + ref->second + "`");
      }
    }
  });

  if (owner != nullptr) {
    for (NodeId target : owner->outgoing_edges) {
      const StoryboardNode* t = sb.find(target);
      if (t == nullptr) continue;
      if (std::find(destinations.begin(), destinations.end(), t->view_name) == destinations.end()) {
        report.warning("edge_without_nav", base,
                       "storyboard edge to `" + t->view_name + "` has no Navigate in `" + owner->view_name + "`");
      }
    }
  }
  return report;
}

ValidationReport validate_project(const Storyboard& sb, const DataModel& dm, std::span<const GuiSkeleton> skeletons) {
  ValidationReport report;
  auto storyboard_report = validate_storyboard(sb);
  prefix_paths(storyboard_report, "storyboard.");
  report.merge(storyboard_report);
  auto data_report = validate_data_model(dm);
  prefix_paths(data_report, "dataModel.");
  report.merge(data_report);

  std::map<NodeId, const GuiSkeleton*> by_node;
  for (const auto& skeleton : skeletons) {
    if (!by_node.emplace(skeleton.node_id, &skeleton).second) {
      report.error("duplicate_skeleton", "skeletons[" + skeleton.view_name + "]",
                   "node " + std::to_string(skeleton.node_id) + " has more than one skeleton");
    }
    report.merge(validate_skeleton_in_context(skeleton, sb, dm));
  }
  for (const auto& node : sb.nodes) {
    if (!by_node.contains(node.id)) {
      report.error("missing_skeleton", "skeletons[" + node.view_name + "]",
                   "screen `" + node.view_name + "` has no GUI skeleton");
    }
  }
  return report;
}

}  // namespace irforge::ir
