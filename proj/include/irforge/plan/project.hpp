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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "irforge/ir/data_model.hpp"
#include "irforge/ir/design_scaffold.hpp"
#include "irforge/ir/report.hpp"
#include "irforge/ir/skeleton.hpp"
#include "irforge/ir/storyboard.hpp"

namespace irforge::plan {

struct ExecutedStep {
  std::string stage;  // plan | storyboard | data_model | skeleton | codegen
  std::string target = "-";
  std::string started_at;
  std::string ended_at;
  std::optional<std::string> provider_call_id;
  nlohmann::json detail;  // null unless the stage has something worth auditing

  bool operator==(const ExecutedStep&) const = default;
};

nlohmann::json to_json(const ExecutedStep& step);
ExecutedStep step_from_json(const nlohmann::json& value);

struct Project {
  ir::Storyboard storyboard;
  ir::DataModel data_model;
  std::map<ir::NodeId, ir::GuiSkeleton> skeletons;
  std::optional<ir::DesignScaffold> design_scaffold;
  std::vector<ExecutedStep> history;

  std::vector<ir::GuiSkeleton> skeleton_list() const;
  const ir::GuiSkeleton* skeleton_for_view(const std::string& view_name) const;
  ir::ValidationReport validate() const;

  bool operator==(const Project&) const = default;
};

// Timestamp source for step records; tests substitute a counter.
using Clock = std::function<std::string()>;

// ISO-8601 UTC with milliseconds.
std::string utc_now();

}  // namespace irforge::plan
