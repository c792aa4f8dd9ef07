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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "irforge/ir/storyboard.hpp"

namespace irforge::plan {

using ir::NodeId;

enum class ChangeType { Storyboard, DataModel, GuiSkeleton, Mixed };

std::string_view to_string(ChangeType type);

// Screen proposed by the planner. `id` is only a proposal; execution allocates
// the real one and remaps references.
struct PlannedScreen {
  NodeId id = 0;
  std::string name;
  std::string description;
  std::optional<std::string> view_name;

  bool operator==(const PlannedScreen&) const = default;
};

struct ScreenRef {
  NodeId id = 0;
  std::string name;

  bool operator==(const ScreenRef&) const = default;
};

struct Connection {
  NodeId from = 0;
  NodeId to = 0;

  bool operator==(const Connection&) const = default;
};

// Names a skeleton or data-model file. Data-model refs carry entity names.
struct FileRef {
  std::string name;
  NodeId id = 0;

  bool operator==(const FileRef&) const = default;
};

struct StoryboardChanges {
  std::vector<PlannedScreen> add_screens;
  std::vector<ScreenRef> remove_screens;
  std::vector<Connection> add_connections;
  std::vector<Connection> remove_connections;
  std::optional<NodeId> entry_node_id;

  bool empty() const;
  bool operator==(const StoryboardChanges&) const = default;
};

struct SkeletonChanges {
  std::vector<FileRef> files_to_modify;
  std::vector<FileRef> new_files_to_create;
  std::vector<FileRef> files_to_delete;

  bool empty() const;
  bool operator==(const SkeletonChanges&) const = default;
};

struct DataModelChanges {
  std::vector<FileRef> files_to_modify;

  bool empty() const { return files_to_modify.empty(); }
  bool operator==(const DataModelChanges&) const = default;
};

struct ChangePlan {
  ChangeType change_type = ChangeType::Mixed;
  StoryboardChanges storyboard;
  SkeletonChanges skeletons;
  DataModelChanges data_model;
  std::string summary;

  bool empty() const { return storyboard.empty() && skeletons.empty() && data_model.empty(); }
  bool operator==(const ChangePlan&) const = default;
};

nlohmann::json to_json(const ChangePlan& plan);
// Missing sections read as empty. Throws Error{schema_error}.
ChangePlan plan_from_json(const nlohmann::json& value);

// Plain-text rendering of the atoms, used as the change text in stage prompts.
std::string describe(const ChangePlan& plan);

}  // namespace irforge::plan
