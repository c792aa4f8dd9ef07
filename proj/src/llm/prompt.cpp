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

#include "irforge/llm/prompt.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "irforge/error.hpp"

namespace irforge::llm {

namespace {

struct TemplateInfo {
  TemplateId id;
  std::string_view name;
  OutputSchema schema;
};

constexpr std::array<TemplateInfo, 9> kTemplates{{
    {TemplateId::Plan, "plan", OutputSchema::ChangePlan},
    {TemplateId::StoryboardMod, "storyboard_mod", OutputSchema::Storyboard},
    {TemplateId::DataModelMod, "data_model_mod", OutputSchema::DataModel},
    {TemplateId::SkeletonMod, "skeleton_mod", OutputSchema::GuiSkeleton},
    {TemplateId::NavigationPlan, "navigation_plan", OutputSchema::NavigationPlan},
    {TemplateId::DesignScaffold, "design_scaffold", OutputSchema::DesignScaffold},
    {TemplateId::CodeGen, "code_gen", OutputSchema::GeneratedProject},
    {TemplateId::InitialStoryboard, "initial_storyboard", OutputSchema::Storyboard},
    {TemplateId::ViewDesign, "view_design", OutputSchema::ViewDesignSpec},
}};

constexpr std::string_view kSystem =
    "You are an expert iOS engineer designing multi-screen SwiftUI apps. "
    "Answer with a single JSON value and nothing else.";

constexpr std::string_view kStoryboardShape = R"({"description": "...", "entryNodeId": 1, "nodes": [{"id": 1, "name": "Home", "description": "...", "swiftUIViewName": "HomeView", "outgoingEdges": [2]}]})";

constexpr std::string_view kSkeletonShape = R"({"viewName": "NotesListView", "id": 1, "guiSkeleton": {"StateVariables": ["notes"], "Layout": {"MainContainer": {"Elements": [{"List": {"DataSource": "notes", "Elements": [{"Text": {"Value": "note.title"}}]}}, {"Button": {"Label": "Add Note", "OnTap": {"Navigate": {"Destination": "AddNoteView"}}}}]}}}})";

std::string default_text(TemplateId id) {
  std::ostringstream t;
  switch (id) {
    case TemplateId::Plan:
      t << "Decompose the user's request into atomic operations that create, update or delete storyboard "
           "screens, connections between screens, data model entities and GUI skeleton files.\n"
           "Every removed screen must also appear in guiSkeletonChanges.filesToDelete, and every added screen "
           "in newFilesToCreate or filesToModify. Any skeleton that navigates to a removed screen must be modified.\n\n"
           "Current storyboard:\n{{currentStoryboard}}\n\nCurrent data model:\n{{currentDataModel}}\n\n"
           "GUI skeleton files:\n{{skeletonIndex}}\n\nRequest:\n{{request}}\n\n"
           "Respond with JSON shaped like {\"changeType\": \"storyboard|dataModel|guiSkeleton|mixed\", "
           "\"storyboardChanges\": {\"addScreens\": [{\"id\", \"name\", \"description\"}], \"removeScreens\": [{\"id\", "
           "\"name\"}], \"addConnections\": [{\"from\", \"to\"}], \"removeConnections\": [{\"from\", \"to\"}]}, "
           "\"guiSkeletonChanges\": {\"filesToModify\": [{\"swiftUIViewName\", \"id\"}], \"newFilesToCreate\": [...], "
           "\"filesToDelete\": [...]}, \"dataModelChanges\": {\"filesToModify\": [{\"swiftUIViewName\", \"id\"}]}, "
           "\"technicalDescription\": {\"summary\": \"...\"}}.";
      break;
    case TemplateId::StoryboardMod:
      t << "Update the storyboard to carry out the requested change. Structural edits have already been applied; "
           "fill in names and descriptions for new screens and connect them where the change requires. "
           "Keep every other screen exactly as it is.\n\nCurrent storyboard:\n{{currentStoryboard}}\n\n"
           "Requested change:\n{{change}}\n\nRespond with the complete storyboard as JSON shaped like "
           << kStoryboardShape << ".";
      break;
    case TemplateId::DataModelMod:
      t << "Update the data model for this app. Each entity is a Swift struct; list its stored properties as "
           "fields with Swift type syntax.\n\nCurrent storyboard:\n{{currentStoryboard}}\n\nCurrent data model:\n"
           "{{currentDataModel}}\n\nRequested change:\n{{change}}\n\nRespond with the complete data model as JSON "
           "shaped like {\"entities\": [{\"name\": \"Note\", \"doc\": \"...\", \"fields\": [{\"name\": \"title\", "
           "\"type\": \"String\"}], \"sourceText\": \"struct Note { ... }\"}]}.";
      break;
    case TemplateId::SkeletonMod:
      t << "Write the GUI skeleton for one screen as SwiftUI pseudocode in JSON. Action handlers are short "
           "descriptions or Navigate records, never code. Only Navigate to screens this screen has storyboard "
           "edges to, and only reference data as instance.field where the entity exists in the data model.\n\n"
           "Current storyboard:\n{{currentStoryboard}}\n\nCurrent data model:\n{{currentDataModel}}\n\n"
           "Current skeleton:\n{{currentSkeleton}}\n\nNavigation plan:\n{{navigationPlan}}\n\n"
           "Requested change:\n{{change}}\n\nRespond with JSON shaped like "
           << kSkeletonShape << ".";
      break;
    case TemplateId::NavigationPlan:
      t << "Describe the navigation design for this app: for every screen, list one transition per outgoing "
           "storyboard edge with its presentation type (push, sheet or fullScreen), the triggering event, and the "
           "data passed as instance.field items.\n\nStoryboard:\n{{currentStoryboard}}\n\n"
           "Respond with JSON shaped like {\"views\": [{\"id\": 2, \"name\": \"Product Detail\", \"swiftUIViewName\": "
           "\"ProductDetailView\", \"transitions\": [{\"destination\": \"WriteReviewView\", \"type\": \"sheet\", "
           "\"trigger\": \"onWriteReviewButtonTap\", \"dataPass\": {\"items\": [\"product.id\"]}}]}]}.";
      break;
    case TemplateId::DesignScaffold:
      t << "Create an application design system suited to the app described below: colors as #RRGGBB hex, "
           "typography roles h1, h2, body and caption, component styles for button, navBar, tabBar and card, "
           "icon style and animation guidance.\n\nApp request:\n{{request}}\n\nRespond with JSON only.";
      break;
    case TemplateId::CodeGen:
      t << "Generate the complete SwiftUI source for this app. Produce one view per storyboard screen; each "
           "view's code must declare a type named exactly its swiftUIViewName. Implement every storyboard edge "
           "with working navigation code.\n\nStoryboard:\n{{currentStoryboard}}\n\nData model:\n"
           "{{currentDataModel}}\n\nGUI skeletons:\n{{skeletons}}\n\nDesign scaffold:\n{{designScaffold}}\n\n"
           "View design notes:\n{{viewDesigns}}\n\nScope:\n{{scope}}\n\nRespond with JSON shaped like "
           "{\"views\": [{\"id\": 1, \"name\": \"Home\", \"swiftUIViewName\": \"HomeView\", \"viewCode\": \"...\"}], "
           "\"utilities\": [{\"name\": \"Color+Extension\", \"code\": \"...\"}]}.";
      break;
    case TemplateId::InitialStoryboard:
      t << "Design the storyboard for a new multi-screen app: a directed graph with one node per screen and "
           "an edge for each navigation path.\n\nApp request:\n{{request}}\n\nRespond with JSON shaped like "
           << kStoryboardShape << ".";
      break;
    case TemplateId::ViewDesign:
      t << "Write the design notes for one screen: purpose, layout, interactions, navigation, actions, visual "
           "style, inputs, errors and loading.\n\nStoryboard:\n{{currentStoryboard}}\n\nSkeleton:\n"
           "{{currentSkeleton}}\n\nDesign scaffold:\n{{designScaffold}}\n\nRespond with JSON only.";
      break;
  }
  return t.str();
}

bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Calls `on_placeholder(name, begin, end)` for each {{name}} occurrence.
template <class F>
void scan(const std::string& text, F&& on_placeholder) {
  std::size_t pos = 0;
  while ((pos = text.find("{{", pos)) != std::string::npos) {
    const auto close = text.find("}}", pos + 2);
    if (close == std::string::npos) return;
    const auto name = text.substr(pos + 2, close - pos - 2);
    const bool valid = !name.empty() && std::all_of(name.begin(), name.end(), is_name_char);
    if (valid) {
      on_placeholder(name, pos, close + 2);
      pos = close + 2;
    } else {
      pos += 2;
    }
  }
}

}  // namespace

std::string_view to_string(TemplateId id) {
  for (const auto& t : kTemplates) {
    if (t.id == id) return t.name;
  }
  return "unknown";
}

std::optional<TemplateId> template_from_string(std::string_view name) {
  for (const auto& t : kTemplates) {
    if (t.name == name) return t.id;
  }
  return std::nullopt;
}

std::string_view to_string(OutputSchema schema) {
  switch (schema) {
    case OutputSchema::ChangePlan: return "ChangePlan";
    case OutputSchema::Storyboard: return "Storyboard";
    case OutputSchema::DataModel: return "DataModel";
    case OutputSchema::GuiSkeleton: return "GuiSkeleton";
    case OutputSchema::NavigationPlan: return "NavigationPlan";
    case OutputSchema::DesignScaffold: return "DesignScaffold";
    case OutputSchema::GeneratedProject: return "GeneratedProject";
    case OutputSchema::ViewDesignSpec: return "ViewDesignSpec";
  }
  return "unknown";
}

OutputSchema expected_schema(TemplateId id) {
  for (const auto& t : kTemplates) {
    if (t.id == id) return t.schema;
  }
  throw Error("unknown_template", "unknown template id");
}

const std::vector<TemplateId>& all_templates() {
  static const std::vector<TemplateId> ids = [] {
    std::vector<TemplateId> out;
    for (const auto& t : kTemplates) out.push_back(t.id);
    return out;
  }();
  return ids;
}

std::vector<std::string> PromptTemplate::placeholders() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  scan(text, [&](const std::string& name, std::size_t, std::size_t) {
    if (seen.insert(name).second) out.push_back(name);
  });
  return out;
}

RenderedPrompt render_prompt(const PromptTemplate& tmpl, const std::map<std::string, std::string>& bindings) {
  RenderedPrompt out;
  out.id = tmpl.id;
  out.system = tmpl.system;
  std::set<std::string> used;
  std::size_t copied = 0;
  scan(tmpl.text, [&](const std::string& name, std::size_t begin, std::size_t end) {
    auto it = bindings.find(name);
    if (it == bindings.end()) {
      throw Error("unbound_placeholder", "template " + std::string(to_string(tmpl.id)) + " needs `" + name + "`",
                  {{"name", name}});
    }
    out.text.append(tmpl.text, copied, begin - copied);
    out.text += it->second;
    copied = end;
    used.insert(name);
  });
  out.text.append(tmpl.text, copied, std::string::npos);
  for (const auto& [name, value] : bindings) {
    if (!used.contains(name)) out.warnings.push_back("unused binding `" + name + "`");
  }
  return out;
}

TemplateLibrary TemplateLibrary::defaults() {
  TemplateLibrary lib;
  for (const auto& t : kTemplates) lib.templates_[t.id] = PromptTemplate{t.id, std::string(kSystem), default_text(t.id)};
  return lib;
}

void TemplateLibrary::load_overrides(const std::filesystem::path& dir) {
  for (const auto& t : kTemplates) {
    const auto file = dir / (std::string(t.name) + ".txt");
    std::ifstream in(file);
    if (!in) continue;
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    auto& tmpl = templates_[t.id];
    tmpl.id = t.id;
    if (auto sep = text.find("\n---\n"); sep != std::string::npos) {
      tmpl.system = text.substr(0, sep);
      tmpl.text = text.substr(sep + 5);
    } else {
      tmpl.text = text;
    }
  }
}

const PromptTemplate& TemplateLibrary::get(TemplateId id) const { return templates_.at(id); }

}  // namespace irforge::llm
