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

#include "irforge/ir/storyboard.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <unordered_set>

#include "irforge/error.hpp"

namespace irforge::ir {

const StoryboardNode* Storyboard::find(NodeId id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const StoryboardNode& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

const StoryboardNode* Storyboard::find_view(std::string_view view_name) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const StoryboardNode& n) { return n.view_name == view_name; });
  return it == nodes.end() ? nullptr : &*it;
}

bool Storyboard::has_edge(NodeId from, NodeId to) const {
  const auto* node = find(from);
  return node != nullptr && std::find(node->outgoing_edges.begin(), node->outgoing_edges.end(), to) !=
                                node->outgoing_edges.end();
}

std::vector<NodeId> Storyboard::incoming(NodeId id) const {
  std::vector<NodeId> out;
  for (const auto& n : nodes) {
    if (std::find(n.outgoing_edges.begin(), n.outgoing_edges.end(), id) != n.outgoing_edges.end()) out.push_back(n.id);
  }
  return out;
}

std::size_t Storyboard::edge_count() const {
  std::size_t total = 0;
  for (const auto& n : nodes) total += n.outgoing_edges.size();
  return total;
}

NodeId Storyboard::max_id() const {
  NodeId best = 0;
  for (const auto& n : nodes) best = std::max(best, n.id);
  return best;
}

std::optional<NodeId> Storyboard::effective_entry() const {
  if (entry_node_id) return entry_node_id;
  if (nodes.empty()) return std::nullopt;
  return std::min_element(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.id < b.id; })->id;
}

bool is_type_identifier(std::string_view text) {
  if (text.empty() || std::isdigit(static_cast<unsigned char>(text.front()))) return false;
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string derive_view_name(std::string_view screen_name) {
  std::string out;
  bool start_word = true;
  for (char c : screen_name) {
    const auto uc = static_cast<unsigned char>(c);
    if (!std::isalnum(uc)) {
      start_word = true;
      continue;
    }
    if (out.empty() && std::isdigit(uc)) continue;
    out.push_back(start_word ? static_cast<char>(std::toupper(uc)) : c);
    start_word = false;
  }
  if (out.empty()) out = "Screen";
  if (out.size() < 4 || out.compare(out.size() - 4, 4, "View") != 0) out += "View";
  return out;
}

std::string unique_view_name(const std::string& base, const Storyboard& sb) {
  if (sb.find_view(base) == nullptr) return base;
  for (int suffix = 2;; ++suffix) {
    auto candidate = base + std::to_string(suffix);
    if (sb.find_view(candidate) == nullptr) return candidate;
  }
}

ValidationReport dedupe_view_names(Storyboard& sb) {
  ValidationReport report;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < sb.nodes.size(); ++i) {
    auto& node = sb.nodes[i];
    if (seen.insert(node.view_name).second) continue;
    std::string candidate;
    for (int suffix = 2;; ++suffix) {
      candidate = node.view_name + std::to_string(suffix);
      if (!seen.contains(candidate) && sb.find_view(candidate) == nullptr) break;
    }
    report.warning("renamed_duplicate_view", "nodes[" + std::to_string(i) + "].swiftUIViewName",
                   "`" + node.view_name + "` renamed to `" + candidate + "`");
    node.view_name = candidate;
    seen.insert(candidate);
  }
  return report;
}

namespace {

[[noreturn]] void unknown_node(NodeId id) {
  throw Error("unknown_node", "no node with id " + std::to_string(id), {{"id", id}});
}

StoryboardNode& node_ref(Storyboard& sb, NodeId id) {
  for (auto& n : sb.nodes) {
    if (n.id == id) return n;
  }
  unknown_node(id);
}

struct Applier {
  Storyboard& sb;

  void operator()(const AddScreen& atom) const {
    StoryboardNode node;
    node.id = sb.max_id() + 1;
    node.name = atom.name;
    node.description = atom.description;
    std::string base;
    if (atom.view_name && !atom.view_name->empty()) {
      base = is_type_identifier(*atom.view_name) ? *atom.view_name : derive_view_name(*atom.view_name);
    } else {
      base = derive_view_name(atom.name);
    }
    node.view_name = unique_view_name(base, sb);
    if (node.name.empty()) node.name = node.view_name;
    sb.nodes.push_back(std::move(node));
  }

  void operator()(const RemoveScreen& atom) const {
    auto it = std::find_if(sb.nodes.begin(), sb.nodes.end(), [&](const auto& n) { return n.id == atom.id; });
    if (it == sb.nodes.end()) unknown_node(atom.id);
    sb.nodes.erase(it);
    for (auto& n : sb.nodes) std::erase(n.outgoing_edges, atom.id);
    if (sb.entry_node_id == atom.id) sb.entry_node_id.reset();
  }

  void operator()(const AddConnection& atom) const {
    if (!sb.contains(atom.to)) unknown_node(atom.to);
    auto& from = node_ref(sb, atom.from);
    if (atom.from == atom.to) {
      throw Error("self_edge", "self edges are not allowed (node " + std::to_string(atom.from) + ")",
                  {{"from", atom.from}, {"to", atom.to}});
    }
    if (std::find(from.outgoing_edges.begin(), from.outgoing_edges.end(), atom.to) != from.outgoing_edges.end()) {
      throw Error("duplicate_edge",
                  "edge " + std::to_string(atom.from) + "->" + std::to_string(atom.to) + " already exists",
                  {{"from", atom.from}, {"to", atom.to}});
    }
    from.outgoing_edges.push_back(atom.to);
  }

  void operator()(const RemoveConnection& atom) const {
    if (!sb.contains(atom.to)) unknown_node(atom.to);
    auto& from = node_ref(sb, atom.from);
    auto it = std::find(from.outgoing_edges.begin(), from.outgoing_edges.end(), atom.to);
    if (it == from.outgoing_edges.end()) {
      throw Error("unknown_edge", "edge " + std::to_string(atom.from) + "->" + std::to_string(atom.to) + " not found",
                  {{"from", atom.from}, {"to", atom.to}});
    }
    from.outgoing_edges.erase(it);
  }
};

}  // namespace

Storyboard apply_storyboard_change(const Storyboard& sb, const StoryboardChange& change) {
  Storyboard next = sb;
  std::visit(Applier{next}, change);
  return next;
}

std::set<NodeId> reachable_nodes(const Storyboard& sb, NodeId start) {
  if (!sb.contains(start)) unknown_node(start);
  std::set<NodeId> seen{start};
  std::deque<NodeId> queue{start};
  while (!queue.empty()) {
    const auto* node = sb.find(queue.front());
    queue.pop_front();
    if (node == nullptr) continue;  // dangling edge target
    for (NodeId next : node->outgoing_edges) {
      if (sb.contains(next) && seen.insert(next).second) queue.push_back(next);
    }
  }
  return seen;
}

ValidationReport validate_storyboard(const Storyboard& sb) {
  ValidationReport report;
  if (sb.nodes.empty()) report.warning("empty_storyboard", "nodes", "storyboard has no screens");

  if (sb.entry_node_id && !sb.contains(*sb.entry_node_id)) {
    report.error("unknown_entry_node", "entryNodeId",
                 "entry node " + std::to_string(*sb.entry_node_id) + " does not exist");
  }

  std::set<NodeId> reachable;
  const bool entry_ok = sb.effective_entry() && sb.contains(*sb.effective_entry());
  if (entry_ok) reachable = reachable_nodes(sb, *sb.effective_entry());

  // Indices ordered by id; ties keep document order.
  std::vector<std::size_t> order(sb.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sb.nodes[a].id < sb.nodes[b].id; });

  std::map<NodeId, std::size_t> first_id;
  std::map<std::string, std::size_t> first_view;
  for (std::size_t i = 0; i < sb.nodes.size(); ++i) {
    first_id.emplace(sb.nodes[i].id, i);
    first_view.emplace(sb.nodes[i].view_name, i);
  }

  for (std::size_t i : order) {
    const auto& node = sb.nodes[i];
    const std::string path = "nodes[" + std::to_string(i) + "]";
    ValidationReport local;

    if (node.id <= 0) local.error("invalid_node_id", path + ".id", "node ids must be positive");
    if (first_id.at(node.id) != i) {
      local.error("duplicate_node_id", path + ".id", "node id " + std::to_string(node.id) + " is used more than once");
    }
    if (node.name.empty()) local.warning("empty_name", path + ".name", "screen has no name");
    if (node.view_name.empty()) {
      local.error("empty_view_name", path + ".swiftUIViewName", "swiftUIViewName is empty");
    } else if (!is_type_identifier(node.view_name)) {
      local.error("invalid_view_name", path + ".swiftUIViewName",
                  "`" + node.view_name + "` is not a valid type identifier");
    }
    if (!node.view_name.empty() && first_view.at(node.view_name) != i) {
      local.error("duplicate_view_name", path + ".swiftUIViewName",
                  "view name `" + node.view_name + "` is used by more than one screen");
    }

    std::unordered_set<NodeId> seen_targets;
    for (std::size_t e = 0; e < node.outgoing_edges.size(); ++e) {
      const NodeId target = node.outgoing_edges[e];
      const std::string epath = path + ".outgoingEdges[" + std::to_string(e) + "]";
      if (target == node.id) {
        local.error("self_edge", epath, "screen links to itself");
      } else if (!sb.contains(target)) {
        local.error("dangling_edge", epath, "edge target " + std::to_string(target) + " does not exist");
      }
      if (!seen_targets.insert(target).second) {
        local.error("duplicate_edge", epath, "edge to " + std::to_string(target) + " is listed twice");
      }
    }

    if (entry_ok && !reachable.contains(node.id)) {
      local.warning("unreachable_screen", path, "`" + node.view_name + "` cannot be reached from the entry screen");
    }

    std::stable_sort(local.findings.begin(), local.findings.end(),
                     [](const Finding& a, const Finding& b) { return a.code < b.code; });
    report.merge(local);
  }
  return report;
}

}  // namespace irforge::ir
