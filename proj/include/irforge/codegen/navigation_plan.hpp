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

#include "irforge/codegen/design.hpp"
#include "irforge/ir/storyboard.hpp"

namespace irforge::codegen {

struct Transition {
  std::string destination;
  std::string type = "push";  // push | sheet | fullScreen
  std::string trigger;
  std::vector<std::string> data_pass;  // entity.field items

  bool operator==(const Transition&) const = default;
};

struct ViewTransitions {
  ir::NodeId id = 0;
  std::string name;
  std::string view_name;
  std::vector<Transition> transitions;

  bool operator==(const ViewTransitions&) const = default;
};

// Transient: guides initial skeleton generation, then only the step log keeps it.
struct NavigationPlan {
  std::vector<ViewTransitions> views;

  bool operator==(const NavigationPlan&) const = default;
};

nlohmann::json to_json(const NavigationPlan& plan);
NavigationPlan navigation_plan_from_json(const nlohmann::json& value);

// unknown_view, unknown_destination, invalid_transition_type, plan_edge_mismatch.
ir::ValidationReport validate_navigation_plan(const NavigationPlan& plan, const ir::Storyboard& sb);

// One repair re-prompt, then Error{plan_edge_mismatch} whose detail lists the
// offending "Source -> Destination" pairs.
NavigationPlan generate_navigation_plan(llm::Provider& provider, const ir::Storyboard& sb,
                                        const StageOptions& options = {}, plan::ExecutedStep* step = nullptr);

}  // namespace irforge::codegen
