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

#include "irforge/codegen/generate.hpp"

#include <cctype>
#include <set>

#include "irforge/error.hpp"
#include "irforge/ir/serialize.hpp"

namespace irforge::codegen {

using nlohmann::json;

namespace {

std::string violation_class(const std::string& code) {
  if (code == "type_name_mismatch") return "naming";
  if (code == "missing_view" || code == "extra_view" || code == "duplicate_view") return "coverage";
  return code;
}

std::string skeletons_text(const plan::Project& project) {
  std::string out;
  for (const auto& [id, s] : project.skeletons) out += ir::serialize(s);
  return out;
}

std::string designs_text(const CodegenOptions& options) {
  if (options.view_designs == nullptr || options.view_designs->empty()) return "(none)";
  json all = json::object();
  for (const auto& [view, spec] : *options.view_designs) all[view] = to_json(spec);
  return ir::canonical_text(all);
}

}  // namespace

std::string app_identifier(std::string_view name) {
  std::string out;
  bool upper = true;
  for (char c : name) {
    const auto uc = static_cast<unsigned char>(c);
    if (!std::isalnum(uc)) {
      upper = true;
      continue;
    }
    if (out.empty() && std::isdigit(uc)) continue;
    out.push_back(upper ? static_cast<char>(std::toupper(uc)) : c);
    upper = false;
  }
  return out.empty() ? "GeneratedApp" : out;
}

GeneratedProject generate_code(llm::Provider& provider, const plan::Project& project, const CodegenOptions& options,
                               std::vector<plan::ExecutedStep>* steps) {
  if (const auto report = project.validate(); !report.ok()) {
    throw Error("project_invalid", "project has validation errors", {{"report", ir::to_json(report)}});
  }
  if (!project.design_scaffold) throw Error("scaffold_missing", "no design scaffold on the project");
  const auto& sb = project.storyboard;
  const auto& tmpl = templates_or_default(options.stage).get(llm::TemplateId::CodeGen);
  std::map<std::string, std::string> bindings{
      {"currentStoryboard", ir::serialize(sb)},
      {"currentDataModel", ir::serialize(project.data_model)},
      {"skeletons", skeletons_text(project)},
      {"designScaffold", ir::canonical_text(ir::to_json(*project.design_scaffold))},
      {"viewDesigns", designs_text(options)},
      {"scope", "All screens in the storyboard."}};

  auto call = [&](const std::string& target, const llm::SchemaCheck& check) {
    std::set<std::string> reprompted;
    llm::CompletionOptions copts;
    copts.target = target;
    copts.max_reprompts = options.stage.max_reprompts.value_or(2);
    copts.allow_reprompt = [&reprompted](const ir::ValidationReport& report, int) {
      bool fresh = false;
      for (const auto& f : report.findings) {
        if (f.severity == ir::Severity::Error && reprompted.insert(violation_class(f.code)).second) fresh = true;
      }
      return fresh;
    };
    plan::ExecutedStep step{"codegen", target.empty() ? "-" : target, options.stage.clock(), {}, std::nullopt, nullptr};
    try {
      auto out = llm::complete_json(provider, llm::render_prompt(tmpl, bindings), check, copts);
      step.ended_at = options.stage.clock();
      step.provider_call_id = out.call_id();
      if (steps != nullptr) steps->push_back(step);
      return out.value;
    } catch (const Error& e) {
      if (e.code() != "schema_error_after_retries") throw;
      std::string message = "generated code rejected";
      if (e.detail().contains("report")) {
        for (const auto& f : ir::report_from_json(e.detail().at("report")).findings) {
          if (f.severity == ir::Severity::Error) message += "; " + f.message;
        }
      }
      throw Error("codegen_invalid", message, e.detail());
    }
  };

  GeneratedProject gp;
  if (!options.per_view) {
    auto check = llm::make_check<GeneratedProject>([&](const json& v) { return parse_codegen_reply(v, sb); },
                                                   [&](const GeneratedProject& g) { return validate_generated(g, sb); });
    gp = parse_codegen_reply(call("", check), sb);
  } else {
    std::set<std::string> utility_names;
    for (const auto& node : sb.nodes) {
      ir::Storyboard single;
      single.nodes.push_back(node);
      single.nodes.back().outgoing_edges.clear();
      bindings["scope"] = "Only the screen `" + node.view_name + "` (id " + std::to_string(node.id) +
                          "). Return exactly one entry in views plus any utilities it needs.";
      auto check = llm::make_check<GeneratedProject>([&](const json& v) { return parse_codegen_reply(v, single); },
                                                     [&](const GeneratedProject& g) { return validate_generated(g, single); });
      auto part = parse_codegen_reply(call(node.view_name, check), single);
      part.views.front().id = node.id;
      gp.views.push_back(part.views.front());
      for (auto& u : part.utilities) {
        if (utility_names.insert(u.name).second) gp.utilities.push_back(std::move(u));
      }
    }
  }
  gp.app_name = app_identifier(options.app_name);
  gp.models = model_files(project.data_model);
  gp.scaffold_used = project.design_scaffold;
  gp.metrics = compute_metrics(gp);
  return gp;
}

}  // namespace irforge::codegen
