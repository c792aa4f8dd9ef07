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
#include <vector>

#include "irforge/ir/report.hpp"

namespace irforge::ir {

struct EntityField {
  std::string name;
  std::string type;  // target-language type syntax, e.g. "[Episode]" or "Double?"

  bool operator==(const EntityField&) const = default;
};

struct DataEntity {
  std::string name;
  std::string doc;
  std::vector<EntityField> fields;
  std::string source_text;

  const EntityField* field(std::string_view field_name) const;

  bool operator==(const DataEntity&) const = default;
};

struct DataModel {
  std::vector<DataEntity> entities;

  const DataEntity* find(std::string_view name) const;
  // Case-insensitive match, used to resolve `note.title` against `Note`.
  const DataEntity* find_instance(std::string_view instance_name) const;

  bool operator==(const DataModel&) const = default;
};

// Renders a Swift struct declaration for the entity's fields.
std::string render_entity_source(const DataEntity& entity);

// Extracts `let`/`var` stored properties from a Swift struct declaration.
// Computed properties (those followed by `{`) are skipped.
std::vector<EntityField> parse_entity_fields(std::string_view source_text);

ValidationReport validate_data_model(const DataModel& dm);

}  // namespace irforge::ir
