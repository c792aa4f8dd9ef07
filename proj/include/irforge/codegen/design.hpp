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

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "irforge/ir/design_scaffold.hpp"
#include "irforge/ir/report.hpp"
#include "irforge/llm/complete.hpp"
#include "irforge/plan/project.hpp"

namespace irforge::codegen {

struct StageOptions {
  const llm::TemplateLibrary* templates = nullptr;
  plan::Clock clock = plan::utc_now;
  std::optional<int> max_reprompts;
};

const llm::TemplateLibrary& templates_or_default(const StageOptions& options);

// Throws Error{empty_request | provider_error | timeout | schema_error_after_retries}.
ir::DesignScaffold generate_design_scaffold(llm::Provider& provider, std::string_view request,
                                            const StageOptions& options = {}, plan::ExecutedStep* step = nullptr);

// Per-view design notes. All fields are free text.
struct ViewDesignSpec {
  std::string purpose;
  std::string layout;
  std::map<std::string, std::string> interactions;  // gestures, feedback, keyboard
  std::string entry_point;
  std::string primary_action;
  std::string secondary_action;
  nlohmann::json visual = nlohmann::json::object();  // colors, typography, animations
  std::map<std::string, std::string> inputs;          // style, validation
  std::map<std::string, std::string> errors;          // message, visual
  std::string loading_indicator;

  bool operator==(const ViewDesignSpec&) const = default;
};

nlohmann::json to_json(const ViewDesignSpec& spec);
ViewDesignSpec view_design_from_json(const nlohmann::json& value);
// empty_purpose when purpose is blank.
ir::ValidationReport validate_view_design(const ViewDesignSpec& spec);

// One view_design call per screen, in storyboard order. Keys are view names.
std::map<std::string, ViewDesignSpec> generate_view_designs(llm::Provider& provider, const plan::Project& project,
                                                            const StageOptions& options = {});

}  // namespace irforge::codegen
