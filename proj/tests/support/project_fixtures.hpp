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

#include <atomic>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "irforge/ir/serialize.hpp"
#include "irforge/plan/project.hpp"

namespace irforge::testing {

using nlohmann::json;

// MainContainer with a title, optional data-bound texts and one button per destination.
inline ir::GuiSkeleton nav_skeleton(const std::string& view, ir::NodeId id, const std::vector<std::string>& destinations,
                                    const std::vector<std::string>& data_refs = {}) {
  ir::GuiSkeleton s = ir::empty_skeleton(view, id);
  auto& main = s.layout.children.front();
  ir::SkeletonElement title{ir::ElementKind::Text, {}, {{"Value", view}}, {}, {}};
  main.children.push_back(title);
  for (const auto& ref : data_refs) main.children.push_back({ir::ElementKind::Text, {}, {{"Value", ref}}, {}, {}});
  for (const auto& d : destinations) {
    ir::SkeletonElement button{ir::ElementKind::Button, {}, {{"Label", "Open " + d}}, ir::Action{"OnTap", ir::Navigate{d}}, {}};
    main.children.push_back(button);
  }
  return s;
}

// Skeletons navigating along every outgoing edge.
inline std::map<ir::NodeId, ir::GuiSkeleton> edge_skeletons(const ir::Storyboard& sb) {
  std::map<ir::NodeId, ir::GuiSkeleton> out;
  for (const auto& n : sb.nodes) {
    std::vector<std::string> dest;
    for (auto to : n.outgoing_edges) dest.push_back(sb.find(to)->view_name);
    out.emplace(n.id, nav_skeleton(n.view_name, n.id, dest));
  }
  return out;
}

inline constexpr const char* kAppendixBeforeStoryboard = R"({
  "description": "Account app with a legacy settings screen.",
  "entryNodeId": 1,
  "nodes": [
    {"id": 1, "name": "Home", "description": "Landing screen.", "swiftUIViewName": "HomeView", "outgoingEdges": [51]},
    {"id": 50, "name": "Old Settings", "description": "Legacy settings.", "swiftUIViewName": "OldSettingsView", "outgoingEdges": [51]},
    {"id": 51, "name": "Settings", "description": "Account settings.", "swiftUIViewName": "SettingsView", "outgoingEdges": [102]},
    {"id": 102, "name": "User Details", "description": "Details about the user.", "swiftUIViewName": "UserDetailsView", "outgoingEdges": []}
  ]
})";

inline constexpr const char* kAppendixBeforeDataModel = R"({
  "entities": [
    {"name": "User", "doc": "An account holder.", "sourceText": "struct User {\n    var name: String\n    var email: String\n}\n"}
  ]
})";

// Project the appendix plan applies to: OldSettingsView id 50 with edge 50->51,
// node 102 still without a skeleton.
inline plan::Project appendix_project() {
  plan::Project p;
  p.storyboard = ir::storyboard_from_json(json::parse(kAppendixBeforeStoryboard));
  p.data_model = ir::data_model_from_json(json::parse(kAppendixBeforeDataModel));
  p.skeletons.emplace(1, nav_skeleton("HomeView", 1, {"SettingsView"}));
  p.skeletons.emplace(50, nav_skeleton("OldSettingsView", 50, {"SettingsView"}));
  p.skeletons.emplace(51, nav_skeleton("SettingsView", 51, {"UserDetailsView"}, {"user.name"}));
  return p;
}

inline json skeleton_reply(const ir::GuiSkeleton& s) { return ir::to_json(s); }

// Stage replies for executing the appendix plan on appendix_project().
// UserProfileView receives id 103; the model also links Settings to it.
inline json appendix_stage_script() {
  json storyboard = json::parse(kAppendixBeforeStoryboard);
  storyboard["nodes"].erase(1);
  storyboard["nodes"][1]["outgoingEdges"] = {102, 103};
  storyboard["nodes"].push_back({{"id", 103},
                                 {"name", "User Profile"},
                                 {"description", "Shows the user's name and age."},
                                 {"swiftUIViewName", "UserProfileView"},
                                 {"outgoingEdges", {102}}});
  const json data_model = {
      {"entities",
       {{{"name", "User"},
         {"doc", "An account holder."},
         {"sourceText", "struct User {\n    var name: String\n    var email: String\n    var age: Int\n}\n"}},
        {{"name", "UserService"},
         {"doc", "Loads and saves users."},
         {"sourceText", "struct UserService {\n    var endpoint: String\n}\n"}}}}};
  const auto profile = nav_skeleton("UserProfileView", 103, {"UserDetailsView"}, {"user.name", "user.age"});
  const auto details = nav_skeleton("UserDetailsView", 102, {}, {"user.email"});
  return {{"responses",
           {{{"template", "storyboard_mod"}, {"json", {{"storyboard", storyboard}}}},
            {{"template", "data_model_mod"}, {"json", data_model}},
            {{"template", "skeleton_mod"}, {"target", "UserProfileView"}, {"text", "```json\n" + skeleton_reply(profile).dump(2) + "\n```"}},
            {{"template", "skeleton_mod"}, {"target", "UserDetailsView"}, {"json", skeleton_reply(details)}}}}};
}

// Monotone fake clock so step timestamps are reproducible.
struct CountingClock {
  std::shared_ptr<std::atomic<int>> ticks = std::make_shared<std::atomic<int>>(0);
  std::string operator()() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "t%06d", (*ticks)++);
    return buf;
  }
};

}  // namespace irforge::testing

namespace irforge::testing {

// Home -> Product Detail -> Purchase, the screens of the appendix codegen output.
inline constexpr const char* kShopStoryboard = R"({
  "description": "Fashion-forward shoe marketplace app.",
  "nodes": [
    {"id": 1, "name": "Home", "description": "Featured shoes.", "swiftUIViewName": "HomeView", "outgoingEdges": [2]},
    {"id": 2, "name": "Product Detail", "description": "One shoe.", "swiftUIViewName": "ProductDetailView", "outgoingEdges": [3, 1]},
    {"id": 3, "name": "Purchase", "description": "Checkout.", "swiftUIViewName": "PurchaseView", "outgoingEdges": [1]}
  ]
})";

inline plan::Project shop_project() {
  plan::Project p;
  p.storyboard = ir::storyboard_from_json(json::parse(kShopStoryboard));
  ir::DataEntity product{"Product", "A shoe for sale.", {{"name", "String"}, {"price", "Double"}}, ""};
  product.source_text = ir::render_entity_source(product);
  p.data_model.entities.push_back(product);
  p.skeletons = edge_skeletons(p.storyboard);
  p.design_scaffold = ir::scaffold_from_json(json::parse(kDesignSystemJson));
  return p;
}

inline std::string swift_view(const std::string& name, const std::vector<std::string>& destinations) {
  std::string code = "import SwiftUI\n\nstruct " + name + ": View {\n    var body: some View {\n        VStack {\n";
  code += "            Text(\"" + name + "\")\n";
  for (const auto& d : destinations) {
    code += "            NavigationLink(\"Open\", destination: " + d + "())\n";
  }
  code += "        }\n    }\n}\n";
  return code;
}

// Appendix view-generation output shape with compilable-looking bodies. The
// Purchase view keeps the appendix's "id": 0.
inline json shop_codegen_reply() {
  return {{"views",
           {{{"id", 1}, {"name", "Home"}, {"swiftUIViewName", "HomeView"}, {"viewCode", swift_view("HomeView", {"ProductDetailView"})}},
            {{"id", 2},
             {"name", "ProductDetail"},
             {"swiftUIViewName", "ProductDetailView"},
             {"viewCode", swift_view("ProductDetailView", {"PurchaseView", "HomeView"})}},
            {{"id", 0}, {"name", "Purchase"}, {"swiftUIViewName", "PurchaseView"}, {"viewCode", swift_view("PurchaseView", {"HomeView"})}}}},
          {"utilities",
           {{{"name", "Color+Extension"},
             {"code", "import SwiftUI\n\nextension Color {\n    static let brand = Color(red: 0.11, green: 0.73, blue: 0.33)\n}\n"}}}}};
}

}  // namespace irforge::testing
