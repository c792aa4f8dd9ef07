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

#include "irforge/plan/change_plan.hpp"

#include <sstream>

#include "irforge/json_schema.hpp"

namespace irforge::plan {
namespace sc = irforge::schema;
using nlohmann::json;

namespace {

const json* section(const json& obj, std::string_view key, const std::string& path) {
  const json* s = sc::optional_member(obj, key);
  if (s != nullptr) sc::require_object(*s, sc::join(path, key));
  return s;
}

template <class F>
void each(const json& obj, std::string_view key, const std::string& path, F&& f) {
  const json* list = sc::optional_member(obj, key);
  if (list == nullptr) return;
  const auto p = sc::join(path, key);
  if (!list->is_array()) sc::fail(p, "expected an array");
  for (std::size_t i = 0; i < list->size(); ++i) {
    const auto ip = sc::index(p, i);
    sc::require_object((*list)[i], ip);
    f((*list)[i], ip);
  }
}

FileRef read_file(const json& item, const std::string& path) {
  FileRef ref;
  if (sc::optional_member(item, "swiftUIViewName")) {
    ref.name = sc::get_string(item, "swiftUIViewName", path);
  } else {
    ref.name = sc::get_string(item, "name", path);
  }
  if (sc::optional_member(item, "id")) ref.id = sc::get_int(item, "id", path);
  return ref;
}

json file_json(const FileRef& f) { return {{"swiftUIViewName", f.name}, {"id", f.id}}; }

json files_json(const std::vector<FileRef>& files) {
  json out = json::array();
  for (const auto& f : files) out.push_back(file_json(f));
  return out;
}

json connections_json(const std::vector<Connection>& list) {
  json out = json::array();
  for (const auto& c : list) out.push_back({{"from", c.from}, {"to", c.to}});
  return out;
}

}  // namespace

std::string_view to_string(ChangeType type) {
  switch (type) {
    case ChangeType::Storyboard: return "storyboard";
    case ChangeType::DataModel: return "dataModel";
    case ChangeType::GuiSkeleton: return "guiSkeleton";
    case ChangeType::Mixed: return "mixed";
  }
  return "mixed";
}

bool StoryboardChanges::empty() const {
  return add_screens.empty() && remove_screens.empty() && add_connections.empty() && remove_connections.empty() &&
         !entry_node_id;
}

bool SkeletonChanges::empty() const {
  return files_to_modify.empty() && new_files_to_create.empty() && files_to_delete.empty();
}

json to_json(const ChangePlan& plan) {
  json add = json::array();
  for (const auto& s : plan.storyboard.add_screens) {
    json item = {{"id", s.id}, {"name", s.name}};
    if (!s.description.empty()) item["description"] = s.description;
    if (s.view_name) item["swiftUIViewName"] = *s.view_name;
    add.push_back(std::move(item));
  }
  json remove = json::array();
  for (const auto& s : plan.storyboard.remove_screens) remove.push_back({{"id", s.id}, {"name", s.name}});
  json sb = {{"addScreens", add},
             {"removeScreens", remove},
             {"addConnections", connections_json(plan.storyboard.add_connections)},
             {"removeConnections", connections_json(plan.storyboard.remove_connections)}};
  if (plan.storyboard.entry_node_id) sb["entryNodeId"] = *plan.storyboard.entry_node_id;
  return {
      {"changeType", to_string(plan.change_type)},
      {"storyboardChanges", sb},
      {"guiSkeletonChanges",
       {{"filesToModify", files_json(plan.skeletons.files_to_modify)},
        {"newFilesToCreate", files_json(plan.skeletons.new_files_to_create)},
        {"filesToDelete", files_json(plan.skeletons.files_to_delete)}}},
      {"dataModelChanges", {{"filesToModify", files_json(plan.data_model.files_to_modify)}}},
      {"technicalDescription", {{"summary", plan.summary}}},
  };
}

ChangePlan plan_from_json(const json& value) {
  const std::string root;
  sc::require_object(value, root);
  const json& body = value.contains("plan") && value.at("plan").is_object() ? value.at("plan") : value;
  const std::string base = &body == &value ? "" : "plan";

  ChangePlan plan;
  const auto type = sc::get_string_or(body, "changeType", base, "mixed");
  if (type == "storyboard") {
    plan.change_type = ChangeType::Storyboard;
  } else if (type == "dataModel") {
    plan.change_type = ChangeType::DataModel;
  } else if (type == "guiSkeleton") {
    plan.change_type = ChangeType::GuiSkeleton;
  } else if (type == "mixed") {
    plan.change_type = ChangeType::Mixed;
  } else {
    sc::fail(sc::join(base, "changeType"), "unknown change type `" + type + "`");
  }

  if (const json* sb = section(body, "storyboardChanges", base)) {
    const auto p = sc::join(base, "storyboardChanges");
    each(*sb, "addScreens", p, [&](const json& item, const std::string& ip) {
      PlannedScreen s;
      if (sc::optional_member(item, "id")) s.id = sc::get_int(item, "id", ip);
      s.name = sc::get_string(item, "name", ip);
      s.description = sc::get_string_or(item, "description", ip, "");
      if (sc::optional_member(item, "swiftUIViewName")) s.view_name = sc::get_string(item, "swiftUIViewName", ip);
      plan.storyboard.add_screens.push_back(std::move(s));
    });
    each(*sb, "removeScreens", p, [&](const json& item, const std::string& ip) {
      plan.storyboard.remove_screens.push_back({sc::get_int(item, "id", ip), sc::get_string_or(item, "name", ip, "")});
    });
    each(*sb, "addConnections", p, [&](const json& item, const std::string& ip) {
      plan.storyboard.add_connections.push_back({sc::get_int(item, "from", ip), sc::get_int(item, "to", ip)});
    });
    each(*sb, "removeConnections", p, [&](const json& item, const std::string& ip) {
      plan.storyboard.remove_connections.push_back({sc::get_int(item, "from", ip), sc::get_int(item, "to", ip)});
    });
    if (sc::optional_member(*sb, "entryNodeId")) plan.storyboard.entry_node_id = sc::get_int(*sb, "entryNodeId", p);
  }
  if (const json* gs = section(body, "guiSkeletonChanges", base)) {
    const auto p = sc::join(base, "guiSkeletonChanges");
    each(*gs, "filesToModify", p,
         [&](const json& item, const std::string& ip) { plan.skeletons.files_to_modify.push_back(read_file(item, ip)); });
    each(*gs, "newFilesToCreate", p, [&](const json& item, const std::string& ip) {
      plan.skeletons.new_files_to_create.push_back(read_file(item, ip));
    });
    each(*gs, "filesToDelete", p,
         [&](const json& item, const std::string& ip) { plan.skeletons.files_to_delete.push_back(read_file(item, ip)); });
  }
  if (const json* dm = section(body, "dataModelChanges", base)) {
    each(*dm, "filesToModify", sc::join(base, "dataModelChanges"),
         [&](const json& item, const std::string& ip) { plan.data_model.files_to_modify.push_back(read_file(item, ip)); });
  }
  if (const json* td = sc::optional_member(body, "technicalDescription")) {
    const auto p = sc::join(base, "technicalDescription");
    if (td->is_string()) {
      plan.summary = td->get<std::string>();
    } else {
      sc::require_object(*td, p);
      plan.summary = sc::get_string_or(*td, "summary", p, "");
    }
  }
  return plan;
}

std::string describe(const ChangePlan& plan) {
  std::ostringstream out;
  if (!plan.summary.empty()) out << plan.summary << "\n";
  const auto& sb = plan.storyboard;
  for (const auto& s : sb.add_screens) {
    out << "- add screen " << s.id << " `" << s.name << "`";
    if (!s.description.empty()) out << ": " << s.description;
    out << "\n";
  }
  for (const auto& s : sb.remove_screens) out << "- remove screen " << s.id << " `" << s.name << "`\n";
  for (const auto& c : sb.add_connections) out << "- connect " << c.from << " -> " << c.to << "\n";
  for (const auto& c : sb.remove_connections) out << "- disconnect " << c.from << " -> " << c.to << "\n";
  if (sb.entry_node_id) out << "- make screen " << *sb.entry_node_id << " the entry screen\n";
  for (const auto& f : plan.data_model.files_to_modify) out << "- update data model `" << f.name << "`\n";
  for (const auto& f : plan.skeletons.new_files_to_create) out << "- create skeleton `" << f.name << "`\n";
  for (const auto& f : plan.skeletons.files_to_modify) out << "- modify skeleton `" << f.name << "`\n";
  for (const auto& f : plan.skeletons.files_to_delete) out << "- delete skeleton `" << f.name << "`\n";
  return out.str();
}

}  // namespace irforge::plan
