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

#include <random>
#include <string>

#include "irforge/ir/data_model.hpp"
#include "irforge/ir/skeleton.hpp"
#include "irforge/ir/storyboard.hpp"

namespace irforge::testing {

// Storyboard from the appendix wireframe: Home (1) <-> Product Detail (2).
inline constexpr const char* kWireframeJson = R"({
  "storyboard": {
    "description": "Fashion-forward shoe marketplace app.",
    "nodes": [
      {
        "id": 1,
        "name": "Home",
        "description": "This is the home screen...",
        "swiftUIViewName": "HomeView",
        "outgoingEdges": [
          2
        ]
      },
      {
        "id": 2,
        "name": "Product Detail",
        "description": "This screen shows...",
        "swiftUIViewName": "ProductDetailView",
        "outgoingEdges": [
          1
        ]
      }
    ]
  },
  "explanation": "The storyboard represents..."
})";

// Appendix GUI skeleton for a notes list.
inline constexpr const char* kNotesSkeletonJson = R"({
  "viewName": "NotesListView",
  "id": 1,
  "guiSkeleton": {
    "StateVariables": ["notes"],
    "Layout": {
      "MainContainer": {
        "Elements": [
          {
            "List": {
              "DataSource": "notes",
              "Elements": [
                {
                  "HStack": {
                    "Elements": [
                      { "Text": { "Value": "note.title" } },
                      {
                          "Button": {
                            "Label": "Edit",
                            "OnTap": {  "Navigate": { "Destination": "EditNoteView" }}
                        }
                     }
                    ]
                  }
                }
              ]
            }
          },
          {
            "Button": {
                "Label": "Add Note",
                "OnTap": {
                    "Navigate": {
                        "Destination": "AddNoteView"
                    }
                }
            }
          }
        ]
      },
      "Navigation": { "NavigationBar": { "Title": "My Notes" } }
    }
  }
})";

// Appendix plan response.
inline constexpr const char* kAppendixPlanJson = R"({
  "changeType": "guiSkeleton",
  "storyboardChanges": {
    "addScreens": [{"id":101,"name":"UserProfileView"}],
    "removeScreens": [{"id":50,"name":"OldSettingsView"}],
    "addConnections": [{"from":101,"to":102}],
    "removeConnections": [{"from":50,"to":51}]
  },
  "guiSkeletonChanges": {
    "filesToModify": [{"swiftUIViewName":"UserProfileView","id":101}],
    "newFilesToCreate": [{"swiftUIViewName":"UserDetailsView","id":102}],
    "filesToDelete": [{"swiftUIViewName":"OldSettingsView","id":50}]
  },
  "dataModelChanges": {
    "filesToModify": [
      {"swiftUIViewName":"UserModel","id":201},
      {"swiftUIViewName":"UserService","id":202}
    ]
  },
  "technicalDescription": {
    "summary": "Added user age support; Removed OldSettingsView."
  }
})";

// Appendix application design system.
inline constexpr const char* kDesignSystemJson = R"({
  "colors": {
    "primary": "#F0F0F0",
    "secondary": "#1DB954",
    "accent": "#FF5733",
    "neutral": { "dark": "#333333", "medium": "#777777", "light": "#BBBBBB" }
  },
  "typography": {
    "font": "SF Pro Display",
    "h1": { "weight": "Bold", "size": 36 },
    "h2": { "weight": "SemiBold", "size": 28 },
    "body": { "weight": "Regular", "size": 16 },
    "caption": { "weight": "Regular", "size": 12 }
  },
  "components": {
    "button": {
      "standard": { "bgColor": "#1DB954", "textColor": "#FFFFFF", "radius": 8 },
      "primary": { "bgColor": "#FF5733", "textColor": "#FFFFFF", "radius": 12 }
    },
    "navBar": {
      "bgColor": "#F0F0F0",
      "title": { "fontSize": 18, "color": "#333333" },
      "button": { "fontSize": 16, "color": "#1DB954" }
    },
    "tabBar": { "bgColor": "#F0F0F0", "iconColor": "#777777", "selectedColor": "#1DB954", "labelFontSize": 12 },
    "card": {
      "bgColor": "#FFFFFF",
      "radius": 10,
      "shadow": { "color": "#000000", "opacity": 0.1, "offsetY": 4, "blur": 6 }
    }
  },
  "icons": { "style": "Minimal line icons", "sizes": [24, 32], "system": ["play.circle", "pause.circle", "gear", "music.note"] },
  "animations": { "duration": "0.25s", "easing": "ease-in-out", "style": "slide screens, fade content" }
})";

// Random IR values that satisfy every structural invariant.
class IrGenerator {
 public:
  explicit IrGenerator(std::uint32_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937& rng() { return rng_; }

  std::string word() {
    static const char* words[] = {"home",  "profile", "detail", "list",    "settings", "cart",   "search",
                                  "feed",  "player",  "board",  "payment", "review",   "signup", "login",
                                  "inbox", "map",     "pin",    "course",  "episode",  "member"};
    return words[uniform(0, 19)];
  }

  std::string text() {
    std::string out = word();
    for (int i = uniform(0, 4); i > 0; --i) out += " " + word();
    if (coin(0.2)) out += " \"quoted\" \\ unicode \xc3\xa9";
    return out;
  }

  ir::Storyboard storyboard(int max_nodes = 10) {
    ir::Storyboard sb;
    sb.description = text();
    const int n = uniform(0, max_nodes);
    for (int i = 0; i < n; ++i) {
      ir::AddScreen add{text(), text(), std::nullopt};
      sb = ir::apply_storyboard_change(sb, add);
    }
    for (auto& from : sb.nodes) {
      for (const auto& to : sb.nodes) {
        if (from.id != to.id && coin(0.3)) from.outgoing_edges.push_back(to.id);
      }
    }
    if (!sb.nodes.empty() && coin()) sb.entry_node_id = sb.nodes[uniform(0, n - 1)].id;
    return sb;
  }

  ir::DataModel data_model() {
    ir::DataModel dm;
    const int n = uniform(0, 5);
    for (int i = 0; i < n; ++i) {
      ir::DataEntity e;
      e.name = ir::derive_view_name(word()) + "Entity" + std::to_string(i);
      e.doc = text();
      const int fields = uniform(1, 5);
      for (int j = 0; j < fields; ++j) {
        static const char* types[] = {"String", "Int", "Double?", "[String]", "Date", "Bool"};
        e.fields.push_back({word() + std::to_string(j), types[uniform(0, 5)]});
      }
      e.source_text = ir::render_entity_source(e);
      dm.entities.push_back(std::move(e));
    }
    return dm;
  }

  ir::SkeletonElement element(int depth) {
    using ir::ElementKind;
    static const ElementKind containers[] = {ElementKind::MainContainer, ElementKind::HStack, ElementKind::VStack,
                                             ElementKind::List, ElementKind::Navigation};
    static const ElementKind leaves[] = {ElementKind::Text, ElementKind::Button, ElementKind::Image,
                                         ElementKind::TextField};
    ir::SkeletonElement e;
    if (depth > 0 && coin(0.5)) {
      e.kind = containers[uniform(0, 4)];
      if (e.kind == ElementKind::List) e.attributes["DataSource"] = word() + "s";
      for (int i = uniform(0, 3); i > 0; --i) e.children.push_back(element(depth - 1));
    } else if (coin(0.15)) {
      e.kind = ElementKind::Custom;
      e.custom_kind = "Custom" + ir::derive_view_name(word());
    } else {
      e.kind = leaves[uniform(0, 3)];
    }
    if (coin(0.6)) e.attributes["Label"] = text();
    if (coin(0.3)) e.attributes["Title"] = text();
    if (coin(0.3)) {
      ir::Action a;
      a.trigger = coin() ? "OnTap" : "OnSubmit";
      if (coin()) {
        a.handler = ir::Navigate{ir::derive_view_name(word())};
      } else {
        a.handler = text();
      }
      e.action = a;
    }
    return e;
  }

  ir::GuiSkeleton skeleton() {
    ir::GuiSkeleton s;
    s.view_name = ir::derive_view_name(word());
    s.node_id = uniform(1, 50);
    for (int i = uniform(0, 3); i > 0; --i) s.state_variables.push_back(word());
    // Layout children in random order and with possibly repeated kinds.
    for (int i = uniform(0, 3); i > 0; --i) s.layout.children.push_back(element(3));
    return s;
  }

 private:
  std::mt19937 rng_;
};

}  // namespace irforge::testing
