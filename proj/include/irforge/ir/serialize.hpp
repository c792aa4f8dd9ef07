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
#include <string_view>

#include <json.hpp>

#include "irforge/ir/data_model.hpp"
#include "irforge/ir/skeleton.hpp"
#include "irforge/ir/storyboard.hpp"

namespace irforge::ir {

inline constexpr int kSchemaVersion = 1;

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_text(const nlohmann::json& value);

// Throws Error{parse_error} with detail {offset, path}.
nlohmann::json parse_json_text(std::string_view text);

nlohmann::json to_json(const Storyboard& sb);
nlohmann::json to_json(const DataModel& dm);
nlohmann::json to_json(const GuiSkeleton& skeleton);

// The *_from_json readers throw Error{schema_error} naming the first bad field.
// Storyboards may also arrive wrapped as {"storyboard": {...}, "explanation": ...}.
// Node ids of 0 are treated as unassigned and receive max+1 in document order.
Storyboard storyboard_from_json(const nlohmann::json& value);
DataModel data_model_from_json(const nlohmann::json& value);
GuiSkeleton skeleton_from_json(const nlohmann::json& value);

std::string serialize(const Storyboard& sb);
std::string serialize(const DataModel& dm);
std::string serialize(const GuiSkeleton& skeleton);

Storyboard parse_storyboard(std::string_view text);
DataModel parse_data_model(std::string_view text);
GuiSkeleton parse_skeleton(std::string_view text);

}  // namespace irforge::ir
