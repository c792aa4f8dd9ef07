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

#include <string>
#include <vector>

#include <json.hpp>

#include "irforge/plan/project.hpp"

namespace irforge::plan {

struct ChangeSet {
  std::vector<std::string> added;
  std::vector<std::string> removed;
  std::vector<std::string> modified;

  bool empty() const { return added.empty() && removed.empty() && modified.empty(); }
  bool operator==(const ChangeSet&) const = default;
};

// Nodes and skeleton files are labelled by view name, entities by type name.
struct ProjectDiff {
  ChangeSet nodes;
  ChangeSet entities;
  ChangeSet skeletons;
  bool entry_changed = false;

  bool empty() const { return nodes.empty() && entities.empty() && skeletons.empty() && !entry_changed; }
  bool operator==(const ProjectDiff&) const = default;
};

ProjectDiff diff_project(const Project& before, const Project& after);

nlohmann::json to_json(const ProjectDiff& diff);

// Line-oriented account of what a hand edit changed, phrased as a request for
// the planner. Empty when the two projects hold identical IRs.
std::string describe_edit(const Project& before, const Project& after);

}  // namespace irforge::plan
