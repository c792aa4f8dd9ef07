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

#include "irforge/ir/data_model.hpp"
#include "irforge/ir/design_scaffold.hpp"
#include "irforge/ir/report.hpp"
#include "irforge/ir/storyboard.hpp"

namespace irforge::codegen {

struct GeneratedView {
  ir::NodeId id = 0;
  std::string name;
  std::string view_name;
  std::string view_code;

  bool operator==(const GeneratedView&) const = default;
};

struct SourceFile {
  std::string name;
  std::string code;

  bool operator==(const SourceFile&) const = default;
};

struct Metrics {
  int view_count = 0;
  int lines_of_code = 0;  // views + utilities

  bool operator==(const Metrics&) const = default;
};

struct GeneratedProject {
  std::string app_name = "GeneratedApp";
  std::vector<GeneratedView> views;
  std::vector<SourceFile> utilities;
  std::vector<SourceFile> models;  // one per entity, from the data model
  std::optional<ir::DesignScaffold> scaffold_used;
  Metrics metrics;

  const GeneratedView* find_view(std::string_view view_name) const;
  bool operator==(const GeneratedProject&) const = default;
};

// Newline count, plus one for a non-empty unterminated last line.
int count_lines(std::string_view text);

Metrics compute_metrics(const GeneratedProject& gp);

// Model files for every entity, named after the entity.
std::vector<SourceFile> model_files(const ir::DataModel& dm);

nlohmann::json to_json(const GeneratedProject& gp);
GeneratedProject generated_from_json(const nlohmann::json& value);

// Reads a model reply ({"views": [...], "utilities": [...]}). Views with id 0
// take the id of the storyboard node carrying the same view name.
GeneratedProject parse_codegen_reply(const nlohmann::json& value, const ir::Storyboard& sb);

// True when `code` declares struct/class/enum `type_name`.
bool declares_type(std::string_view code, std::string_view type_name);

// Coverage and naming: missing_view, extra_view, duplicate_view, type_name_mismatch.
ir::ValidationReport validate_generated(const GeneratedProject& gp, const ir::Storyboard& sb);

}  // namespace irforge::codegen
