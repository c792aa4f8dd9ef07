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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irforge::llm {

enum class TemplateId {
  Plan,
  StoryboardMod,
  DataModelMod,
  SkeletonMod,
  NavigationPlan,
  DesignScaffold,
  CodeGen,
  InitialStoryboard,
  ViewDesign,
};

enum class OutputSchema {
  ChangePlan,
  Storyboard,
  DataModel,
  GuiSkeleton,
  NavigationPlan,
  DesignScaffold,
  GeneratedProject,
  ViewDesignSpec,
};

std::string_view to_string(TemplateId id);
std::optional<TemplateId> template_from_string(std::string_view name);
std::string_view to_string(OutputSchema schema);
OutputSchema expected_schema(TemplateId id);
const std::vector<TemplateId>& all_templates();

struct PromptTemplate {
  TemplateId id = TemplateId::Plan;
  std::string system;
  std::string text;  // placeholders are written {{name}}

  OutputSchema expected() const { return expected_schema(id); }
  // Distinct placeholder names in order of first appearance.
  std::vector<std::string> placeholders() const;
};

struct RenderedPrompt {
  TemplateId id = TemplateId::Plan;
  std::string system;
  std::string text;
  std::vector<std::string> warnings;
};

// Single-pass substitution: bound values are never re-expanded.
// Throws Error{unbound_placeholder}; unused bindings become warnings.
RenderedPrompt render_prompt(const PromptTemplate& tmpl, const std::map<std::string, std::string>& bindings);

class TemplateLibrary {
 public:
  static TemplateLibrary defaults();

  // Replaces templates with `<dir>/<id>.txt` where present. A file may start
  // with a system section terminated by a line containing only "---".
  void load_overrides(const std::filesystem::path& dir);

  const PromptTemplate& get(TemplateId id) const;

 private:
  std::map<TemplateId, PromptTemplate> templates_;
};

}  // namespace irforge::llm
