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

#include "irforge/codegen/generated_project.hpp"

#include <map>
#include <regex>

#include "irforge/json_schema.hpp"

namespace irforge::codegen {

namespace sc = irforge::schema;
using nlohmann::json;

namespace {

json files_json(const std::vector<SourceFile>& files) {
  json out = json::array();
  for (const auto& f : files) out.push_back({{"name", f.name}, {"code", f.code}});
  return out;
}

std::vector<SourceFile> read_files(const json& obj, std::string_view key, const std::string& path,
                                   std::string_view code_key = "code") {
  std::vector<SourceFile> out;
  const json* list = sc::optional_member(obj, key);
  if (list == nullptr) return out;
  const auto p = sc::join(path, key);
  if (!list->is_array()) sc::fail(p, "expected an array");
  for (std::size_t i = 0; i < list->size(); ++i) {
    const auto ip = sc::index(p, i);
    sc::require_object((*list)[i], ip);
    out.push_back({sc::get_string((*list)[i], "name", ip), sc::get_string((*list)[i], code_key, ip)});
  }
  return out;
}

std::vector<GeneratedView> read_views(const json& obj, const std::string& path) {
  std::vector<GeneratedView> out;
  const json& list = sc::get_array(obj, "views", path);
  const auto p = sc::join(path, "views");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto ip = sc::index(p, i);
    sc::require_object(list[i], ip);
    GeneratedView v;
    v.id = sc::optional_member(list[i], "id") ? sc::get_int(list[i], "id", ip) : 0;
    v.name = sc::get_string_or(list[i], "name", ip, "");
    v.view_name = sc::get_string(list[i], "swiftUIViewName", ip);
    v.view_code = sc::get_string(list[i], "viewCode", ip);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

const GeneratedView* GeneratedProject::find_view(std::string_view view_name) const {
  for (const auto& v : views) {
    if (v.view_name == view_name) return &v;
  }
  return nullptr;
}

int count_lines(std::string_view text) {
  int n = 0;
  for (char c : text) n += c == '\n';
  if (!text.empty() && text.back() != '\n') ++n;
  return n;
}

Metrics compute_metrics(const GeneratedProject& gp) {
  Metrics m;
  m.view_count = static_cast<int>(gp.views.size());
  for (const auto& v : gp.views) m.lines_of_code += count_lines(v.view_code);
  for (const auto& u : gp.utilities) m.lines_of_code += count_lines(u.code);
  return m;
}

std::vector<SourceFile> model_files(const ir::DataModel& dm) {
  std::vector<SourceFile> out;
  for (const auto& e : dm.entities) {
    out.push_back({e.name, e.source_text.empty() ? ir::render_entity_source(e) : e.source_text});
  }
  return out;
}

json to_json(const GeneratedProject& gp) {
  json views = json::array();
  for (const auto& v : gp.views) {
    views.push_back({{"id", v.id}, {"name", v.name}, {"swiftUIViewName", v.view_name}, {"viewCode", v.view_code}});
  }
  json out = {{"appName", gp.app_name},
              {"views", views},
              {"utilities", files_json(gp.utilities)},
              {"models", files_json(gp.models)},
              {"metrics", {{"viewCount", gp.metrics.view_count}, {"linesOfCode", gp.metrics.lines_of_code}}}};
  if (gp.scaffold_used) out["scaffoldUsed"] = ir::to_json(*gp.scaffold_used);
  return out;
}

GeneratedProject generated_from_json(const json& value) {
  const std::string root;
  sc::require_object(value, root);
  GeneratedProject gp;
  gp.app_name = sc::get_string_or(value, "appName", root, gp.app_name);
  gp.views = read_views(value, root);
  gp.utilities = read_files(value, "utilities", root);
  gp.models = read_files(value, "models", root);
  if (const json* s = sc::optional_member(value, "scaffoldUsed")) gp.scaffold_used = ir::scaffold_from_json(*s);
  gp.metrics = compute_metrics(gp);
  return gp;
}

GeneratedProject parse_codegen_reply(const json& value, const ir::Storyboard& sb) {
  const std::string root;
  sc::require_object(value, root);
  GeneratedProject gp;
  gp.views = read_views(value, root);
  for (auto& v : gp.views) {
    const auto* node = sb.find_view(v.view_name);
    if (node != nullptr && (v.id == 0 || !sb.contains(v.id))) v.id = node->id;
  }
  gp.utilities = read_files(value, "utilities", root);
  gp.metrics = compute_metrics(gp);
  return gp;
}

bool declares_type(std::string_view code, std::string_view type_name) {
  const std::regex re("\\b(struct|class|enum)\\s+" + std::string(type_name) + "\\b");
  return std::regex_search(code.begin(), code.end(), re);
}

ir::ValidationReport validate_generated(const GeneratedProject& gp, const ir::Storyboard& sb) {
  ir::ValidationReport report;
  std::map<std::string, int> seen;
  for (std::size_t i = 0; i < gp.views.size(); ++i) {
    const auto& v = gp.views[i];
    const auto path = "views[" + std::to_string(i) + "]";
    if (++seen[v.view_name] > 1) {
      report.error("duplicate_view", path, "`" + v.view_name + "` is generated more than once");
      continue;
    }
    if (sb.find_view(v.view_name) == nullptr) {
      report.error("extra_view", path + ".swiftUIViewName", "`" + v.view_name + "` is not a screen in the storyboard");
      continue;
    }
    if (!ir::is_type_identifier(v.view_name) || !declares_type(v.view_code, v.view_name)) {
      report.error("type_name_mismatch", path + ".viewCode", "viewCode does not declare `" + v.view_name + "`");
    }
  }
  for (const auto& node : sb.nodes) {
    if (!seen.contains(node.view_name)) {
      report.error("missing_view", "views", "missing_view(" + node.view_name + "): no code for `" + node.view_name + "`");
    }
  }
  return report;
}

}  // namespace irforge::codegen
