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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irforge/codegen/generated_project.hpp"
#include "irforge/ir/storyboard.hpp"
#include <json.hpp>

namespace irforge::analysis {

enum class NavigationCategory {
  MissingNavigationLink,
  NavigationComment,
  NavigationClosureEmpty,
  MissingNavigationView,
  APIMisuse,
  NoNavigationLogic,
  WrongDestinationView,
};

inline constexpr std::array kNavigationCategories = {
    NavigationCategory::MissingNavigationLink,  NavigationCategory::NavigationComment,
    NavigationCategory::NavigationClosureEmpty, NavigationCategory::MissingNavigationView,
    NavigationCategory::APIMisuse,              NavigationCategory::NoNavigationLogic,
    NavigationCategory::WrongDestinationView,
};

std::string_view to_string(NavigationCategory c);
// Row label as printed in error tables, e.g. "Missing Navigation Link".
std::string_view label(NavigationCategory c);
std::optional<NavigationCategory> navigation_category_from_string(std::string_view s);

struct NavigationFinding {
  NavigationCategory category{};
  std::string source_view;
  std::optional<std::string> expected_destination;
  std::optional<int> line;
  std::string evidence;

  bool operator==(const NavigationFinding&) const = default;
};

nlohmann::json to_json(const NavigationFinding& f);
NavigationFinding finding_from_json(const nlohmann::json& j);

// Lexical check of every storyboard edge A -> B against A's view code.
// An edge is satisfied when B's view name appears inside the argument list or
// trailing closures of a navigation construct in A. Each unsatisfied edge
// yields one finding, chosen in this order:
//   NavigationComment       a comment with a navigation verb naming B
//   WrongDestinationView    a construct in A that targets a storyboard view
//                           that is not a destination of A
//   APIMisuse               B's name used in A's code outside any construct
//                           while A has other navigation tokens
//   NavigationClosureEmpty  an empty Button/action/onTapGesture closure
//   MissingNavigationLink   A has a navigation container
//   MissingNavigationView   A has constructs but no container
//   NoNavigationLogic       otherwise
// Each piece of evidence is consumed by at most one edge. Views with no
// generated code are skipped. Output is ordered by (source_view, line).
std::vector<NavigationFinding> check_navigation(const codegen::GeneratedProject& gp, const ir::Storyboard& sb);

}  // namespace irforge::analysis
