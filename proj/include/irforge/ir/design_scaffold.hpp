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
#include <vector>

#include <json.hpp>

#include "irforge/ir/report.hpp"

namespace irforge::ir {

struct TypeStyle {
  std::string weight;
  double size = 0;

  bool operator==(const TypeStyle&) const = default;
};

// App-wide style record handed to code generation.
struct DesignScaffold {
  std::string primary;
  std::string secondary;
  std::string accent;
  std::string neutral_dark;
  std::string neutral_medium;
  std::string neutral_light;

  std::string font;
  TypeStyle h1;
  TypeStyle h2;
  TypeStyle body;
  TypeStyle caption;

  // Free-form style records (button, navBar, tabBar, card); colour and size
  // leaves are still checked by validate_scaffold.
  nlohmann::json components = nlohmann::json::object();

  std::string icon_style;
  std::vector<double> icon_sizes;
  std::vector<std::string> system_icons;

  std::string animation_duration;
  std::string animation_easing;
  std::string animation_style;

  bool operator==(const DesignScaffold&) const = default;
};

bool is_hex_color(const std::string& text);

nlohmann::json to_json(const DesignScaffold& scaffold);
// Throws Error{schema_error}.
DesignScaffold scaffold_from_json(const nlohmann::json& value);

// invalid_color for anything not #RRGGBB, nonpositive_size for sizes <= 0.
ValidationReport validate_scaffold(const DesignScaffold& scaffold);

}  // namespace irforge::ir
