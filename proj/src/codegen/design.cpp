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

#include "irforge/codegen/design.hpp"

#include <algorithm>
#include <cctype>

#include "irforge/error.hpp"
#include "irforge/ir/serialize.hpp"
#include "irforge/json_schema.hpp"

namespace irforge::codegen {

namespace sc = irforge::schema;
using nlohmann::json;

namespace {

std::map<std::string, std::string> string_map(const json& obj, std::string_view key, const std::string& path) {
  std::map<std::string, std::string> out;
  const json* m = sc::optional_member(obj, key);
  if (m == nullptr) return out;
  const auto p = sc::join(path, key);
  sc::require_object(*m, p);
  for (const auto& [k, v] : m->items()) {
    if (!v.is_string()) sc::fail(sc::join(p, k), "expected a string");
    out[k] = v.get<std::string>();
  }
  return out;
}

std::string nested(const json& obj, std::string_view key, std::string_view inner, const std::string& path) {
  const json* m = sc::optional_member(obj, key);
  if (m == nullptr) return {};
  const auto p = sc::join(path, key);
  sc::require_object(*m, p);
  return sc::get_string_or(*m, inner, p, "");
}

}  // namespace

const llm::TemplateLibrary& templates_or_default(const StageOptions& options) {
  static const auto fallback = llm::TemplateLibrary::defaults();
  return options.templates ? *options.templates : fallback;
}

ir::DesignScaffold generate_design_scaffold(llm::Provider& provider, std::string_view request,
                                            const StageOptions& options, plan::ExecutedStep* step) {
  if (std::all_of(request.begin(), request.end(), [](unsigned char c) { return std::isspace(c) != 0; })) {
    throw Error("empty_request", "request text is empty");
  }
  plan::ExecutedStep record{"codegen", "design_scaffold", options.clock(), {}, std::nullopt, nullptr};
  const auto prompt = llm::render_prompt(templates_or_default(options).get(llm::TemplateId::DesignScaffold),
                                         {{"request", std::string(request)}});
  llm::CompletionOptions copts;
  copts.max_reprompts = options.max_reprompts;
  auto out = llm::complete_json(provider, prompt,
                                llm::make_check<ir::DesignScaffold>(ir::scaffold_from_json, ir::validate_scaffold), copts);
  record.ended_at = options.clock();
  record.provider_call_id = out.call_id();
  if (step != nullptr) *step = record;
  return ir::scaffold_from_json(out.value);
}

json to_json(const ViewDesignSpec& s) {
  return {{"purpose", s.purpose},
          {"layout", s.layout},
          {"interactions", s.interactions},
          {"navigation", {{"entryPoint", s.entry_point}}},
          {"actions", {{"primary", s.primary_action}, {"secondary", s.secondary_action}}},
          {"visual", s.visual},
          {"inputs", s.inputs},
          {"errors", s.errors},
          {"loading", {{"indicator", s.loading_indicator}}}};
}

ViewDesignSpec view_design_from_json(const json& value) {
  const std::string root;
  sc::require_object(value, root);
  ViewDesignSpec s;
  s.purpose = sc::get_string(value, "purpose", root);
  s.layout = sc::get_string_or(value, "layout", root, "");
  s.interactions = string_map(value, "interactions", root);
  s.entry_point = nested(value, "navigation", "entryPoint", root);
  s.primary_action = nested(value, "actions", "primary", root);
  s.secondary_action = nested(value, "actions", "secondary", root);
  if (const json* v = sc::optional_member(value, "visual")) {
    sc::require_object(*v, "visual");
    s.visual = *v;
  }
  s.inputs = string_map(value, "inputs", root);
  s.errors = string_map(value, "errors", root);
  s.loading_indicator = nested(value, "loading", "indicator", root);
  return s;
}

ir::ValidationReport validate_view_design(const ViewDesignSpec& spec) {
  ir::ValidationReport report;
  if (std::all_of(spec.purpose.begin(), spec.purpose.end(), [](unsigned char c) { return std::isspace(c) != 0; })) {
    report.error("empty_purpose", "purpose", "purpose must not be empty");
  }
  return report;
}

std::map<std::string, ViewDesignSpec> generate_view_designs(llm::Provider& provider, const plan::Project& project,
                                                            const StageOptions& options) {
  std::map<std::string, ViewDesignSpec> out;
  const auto& tmpl = templates_or_default(options).get(llm::TemplateId::ViewDesign);
  const auto storyboard = ir::serialize(project.storyboard);
  const auto scaffold = project.design_scaffold ? ir::canonical_text(ir::to_json(*project.design_scaffold)) : "(none)";
  for (const auto& node : project.storyboard.nodes) {
    auto it = project.skeletons.find(node.id);
    const auto prompt = llm::render_prompt(
        tmpl, {{"currentStoryboard", storyboard},
               {"currentSkeleton", it == project.skeletons.end() ? "(none)" : ir::serialize(it->second)},
               {"designScaffold", scaffold}});
    llm::CompletionOptions copts;
    copts.target = node.view_name;
    copts.max_reprompts = options.max_reprompts;
    auto reply = llm::complete_json(
        provider, prompt, llm::make_check<ViewDesignSpec>(view_design_from_json, validate_view_design), copts);
    out.emplace(node.view_name, view_design_from_json(reply.value));
  }
  return out;
}

}  // namespace irforge::codegen
