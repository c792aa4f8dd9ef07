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

#include "irforge/ir/skeleton.hpp"

#include <array>
#include <regex>
#include <sstream>

namespace irforge::ir {

namespace {

constexpr std::array<std::pair<ElementKind, std::string_view>, 10> kBuiltinKinds{{
    {ElementKind::Layout, "Layout"},
    {ElementKind::MainContainer, "MainContainer"},
    {ElementKind::List, "List"},
    {ElementKind::HStack, "HStack"},
    {ElementKind::VStack, "VStack"},
    {ElementKind::Navigation, "Navigation"},
    {ElementKind::Text, "Text"},
    {ElementKind::Button, "Button"},
    {ElementKind::Image, "Image"},
    {ElementKind::TextField, "TextField"},
}};

void walk(const SkeletonElement& element, const std::string& path,
          const std::function<void(const SkeletonElement&, const std::string&)>& visit) {
  visit(element, path);
  for (std::size_t i = 0; i < element.children.size(); ++i) {
    const auto& child = element.children[i];
    walk(child, path + "/" + child.kind_text() + "[" + std::to_string(i) + "]", visit);
  }
}

std::string quote_if_needed(const std::string& value) {
  if (parse_data_ref(value) || value.find_first_of(" \t\"") == std::string::npos) return value;
  return "\"" + value + "\"";
}

void print(const SkeletonElement& element, int depth, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  out << pad << element.kind_text();
  if (!element.attributes.empty()) {
    out << "(";
    bool first = true;
    for (const auto& [key, value] : element.attributes) {
      out << (first ? "" : ", ") << key << ": " << quote_if_needed(value);
      first = false;
    }
    out << ")";
  }
  if (element.action) {
    out << " " << element.action->trigger << ": ";
    if (const auto* nav = element.action->navigate()) {
      out << "Navigate(" << nav->destination << ")";
    } else {
      out << "\"" << std::get<std::string>(element.action->handler) << "\"";
    }
  }
  if (!element.children.empty()) {
    out << " {\n";
    for (const auto& child : element.children) print(child, depth + 1, out);
    out << pad << "}";
  }
  out << "\n";
}

}  // namespace

std::string_view kind_name(ElementKind kind) {
  for (const auto& [k, name] : kBuiltinKinds) {
    if (k == kind) return name;
  }
  return "Custom";
}

std::optional<ElementKind> builtin_kind(std::string_view name) {
  for (const auto& [k, n] : kBuiltinKinds) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool is_leaf_kind(ElementKind kind) {
  switch (kind) {
    case ElementKind::Text:
    case ElementKind::Button:
    case ElementKind::Image:
    case ElementKind::TextField:
      return true;
    default:
      return false;
  }
}

std::string SkeletonElement::kind_text() const {
  return kind == ElementKind::Custom ? custom_kind : std::string(kind_name(kind));
}

GuiSkeleton empty_skeleton(std::string view_name, NodeId node_id) {
  GuiSkeleton skeleton;
  skeleton.view_name = std::move(view_name);
  skeleton.node_id = node_id;
  skeleton.layout.children.push_back(SkeletonElement{ElementKind::MainContainer, {}, {}, {}, {}});
  return skeleton;
}

void for_each_element(const SkeletonElement& root,
                      const std::function<void(const SkeletonElement&, const std::string&)>& visit) {
  walk(root, root.kind_text(), visit);
}

std::vector<std::string> navigate_destinations(const GuiSkeleton& skeleton) {
  std::vector<std::string> out;
  for_each_element(skeleton.layout, [&](const SkeletonElement& e, const std::string&) {
    if (e.action && e.action->navigate()) out.push_back(e.action->navigate()->destination);
  });
  return out;
}

std::optional<std::pair<std::string, std::string>> parse_data_ref(std::string_view value) {
  static const std::regex ref(R"(^([a-z][A-Za-z0-9_]*)\.([A-Za-z_][A-Za-z0-9_]*)$)");
  std::cmatch m;
  if (!std::regex_match(value.begin(), value.end(), m, ref)) return std::nullopt;
  return std::make_pair(m[1].str(), m[2].str());
}

std::string to_pseudocode(const GuiSkeleton& skeleton) {
  std::ostringstream out;
  out << "// " << skeleton.view_name << " (node " << skeleton.node_id << ")\n";
  for (const auto& state : skeleton.state_variables) out << "@State " << state << "\n";
  for (const auto& child : skeleton.layout.children) print(child, 0, out);
  return out.str();
}

ValidationReport validate_skeleton(const GuiSkeleton& skeleton) {
  ValidationReport report;
  const std::string base = "skeletons[" + skeleton.view_name + "]";
  if (skeleton.view_name.empty()) report.error("empty_view_name", base + ".viewName", "skeleton has no view name");
  if (skeleton.layout.kind != ElementKind::Layout) {
    report.error("invalid_layout_root", base + ".Layout", "layout root must be the Layout element");
  }
  for_each_element(skeleton.layout, [&](const SkeletonElement& e, const std::string& path) {
    const std::string where = base + "." + path;
    if (e.kind == ElementKind::Layout && &e != &skeleton.layout) {
      report.error("misplaced_layout", where, "Layout may only appear at the root");
    }
    if (e.kind == ElementKind::Custom && e.custom_kind.empty()) {
      report.error("empty_element_kind", where, "element has no kind");
    }
    if (is_leaf_kind(e.kind) && !e.children.empty()) {
      report.error("leaf_with_children", where, e.kind_text() + " cannot contain child elements");
    }
    if (e.kind == ElementKind::List && !e.attributes.contains("DataSource")) {
      report.error("list_without_datasource", where, "List requires a DataSource attribute");
    }
    if (e.action && e.action->navigate() && e.action->navigate()->destination.empty()) {
      report.error("empty_destination", where, "Navigate has no Destination");
    }
  });
  return report;
}

}  // namespace irforge::ir
