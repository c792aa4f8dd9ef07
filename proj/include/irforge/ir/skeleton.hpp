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
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "irforge/ir/storyboard.hpp"

namespace irforge::ir {

enum class ElementKind {
  Layout,  // synthetic root holding the entries of the "Layout" object
  MainContainer,
  List,
  HStack,
  VStack,
  Navigation,
  Text,
  Button,
  Image,
  TextField,
  Custom,
};

std::string_view kind_name(ElementKind kind);
std::optional<ElementKind> builtin_kind(std::string_view name);
bool is_leaf_kind(ElementKind kind);

struct Navigate {
  std::string destination;

  bool operator==(const Navigate&) const = default;
};

// Handlers are descriptive text or a navigation record, never code.
struct Action {
  std::string trigger = "OnTap";
  std::variant<std::string, Navigate> handler;

  const Navigate* navigate() const { return std::get_if<Navigate>(&handler); }

  bool operator==(const Action&) const = default;
};

struct SkeletonElement {
  ElementKind kind = ElementKind::Custom;
  std::string custom_kind;  // set only when kind == Custom
  std::map<std::string, std::string> attributes;
  std::optional<Action> action;
  std::vector<SkeletonElement> children;

  std::string kind_text() const;

  bool operator==(const SkeletonElement&) const = default;
};

struct GuiSkeleton {
  std::string view_name;
  NodeId node_id = 0;
  std::vector<std::string> state_variables;
  SkeletonElement layout{ElementKind::Layout, {}, {}, {}, {}};

  bool operator==(const GuiSkeleton&) const = default;
};

GuiSkeleton empty_skeleton(std::string view_name, NodeId node_id);

// Pre-order walk. `path` reads like "Layout/MainContainer[0]/List[0]".
void for_each_element(const SkeletonElement& root,
                      const std::function<void(const SkeletonElement&, const std::string& path)>& visit);

// Navigate destinations in tree order, duplicates kept.
std::vector<std::string> navigate_destinations(const GuiSkeleton& skeleton);

// `note.title` -> {"note", "title"}; anything else -> nullopt.
std::optional<std::pair<std::string, std::string>> parse_data_ref(std::string_view value);

// Indented SwiftUI-like text for reading and hand editing.
std::string to_pseudocode(const GuiSkeleton& skeleton);

// Per-skeleton structural checks (leaf children, List data source, empty names).
ValidationReport validate_skeleton(const GuiSkeleton& skeleton);

}  // namespace irforge::ir
