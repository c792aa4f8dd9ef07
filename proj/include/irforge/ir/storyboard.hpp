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

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "irforge/ir/report.hpp"

namespace irforge::ir {

using NodeId = std::int64_t;

struct StoryboardNode {
  NodeId id = 0;
  std::string name;
  std::string description;
  std::string view_name;
  std::vector<NodeId> outgoing_edges;

  bool operator==(const StoryboardNode&) const = default;
};

// Directed graph of screens. Edges live only on their source node.
struct Storyboard {
  std::string description;
  std::vector<StoryboardNode> nodes;
  std::optional<NodeId> entry_node_id;

  const StoryboardNode* find(NodeId id) const;
  const StoryboardNode* find_view(std::string_view view_name) const;
  bool contains(NodeId id) const { return find(id) != nullptr; }
  bool has_edge(NodeId from, NodeId to) const;
  std::vector<NodeId> incoming(NodeId id) const;
  std::size_t edge_count() const;
  // 0 when empty.
  NodeId max_id() const;
  // The stored entry node, or the lowest id when none is stored.
  std::optional<NodeId> effective_entry() const;

  bool operator==(const Storyboard&) const = default;
};

// Letters, digits and underscore; no leading digit.
bool is_type_identifier(std::string_view text);

// "Product Detail" -> "ProductDetailView". Never returns an invalid identifier.
std::string derive_view_name(std::string_view screen_name);

// Appends 2, 3, ... to `base` until it is not taken by any node in `sb`.
std::string unique_view_name(const std::string& base, const Storyboard& sb);

// Renames repeated view names in node order (second `HomeView` becomes
// `HomeView2`), returning one renamed_duplicate_view warning per rename.
// Applied to model-authored storyboards; hand edits are validated instead.
ValidationReport dedupe_view_names(Storyboard& sb);

struct AddScreen {
  std::string name;
  std::string description;
  std::optional<std::string> view_name;
};
struct RemoveScreen {
  NodeId id = 0;
};
struct AddConnection {
  NodeId from = 0;
  NodeId to = 0;
};
struct RemoveConnection {
  NodeId from = 0;
  NodeId to = 0;
};

using StoryboardChange = std::variant<AddScreen, RemoveScreen, AddConnection, RemoveConnection>;

// Returns a new storyboard with one atom applied.
// Throws Error{unknown_node | unknown_edge | duplicate_edge | self_edge}.
Storyboard apply_storyboard_change(const Storyboard& sb, const StoryboardChange& change);

// Transitive closure along outgoing edges, including `start`.
// Throws Error{unknown_node}.
std::set<NodeId> reachable_nodes(const Storyboard& sb, NodeId start);

// Findings are ordered storyboard-level first, then by node id, then code.
ValidationReport validate_storyboard(const Storyboard& sb);

}  // namespace irforge::ir
