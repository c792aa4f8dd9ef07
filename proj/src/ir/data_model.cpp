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

#include "irforge/ir/data_model.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

#include "irforge/ir/storyboard.hpp"

namespace irforge::ir {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

const EntityField* DataEntity::field(std::string_view field_name) const {
  auto it = std::find_if(fields.begin(), fields.end(), [&](const auto& f) { return f.name == field_name; });
  return it == fields.end() ? nullptr : &*it;
}

const DataEntity* DataModel::find(std::string_view name) const {
  auto it = std::find_if(entities.begin(), entities.end(), [&](const auto& e) { return e.name == name; });
  return it == entities.end() ? nullptr : &*it;
}

const DataEntity* DataModel::find_instance(std::string_view instance_name) const {
  auto it = std::find_if(entities.begin(), entities.end(), [&](const auto& e) { return iequals(e.name, instance_name); });
  return it == entities.end() ? nullptr : &*it;
}

std::string render_entity_source(const DataEntity& entity) {
  std::ostringstream out;
  if (!entity.doc.empty()) out << "/// " << entity.doc << "\n";
  out << "struct " << entity.name << " {\n";
  for (const auto& f : entity.fields) out << "    var " << f.name << ": " << f.type << "\n";
  out << "}\n";
  return out.str();
}

std::vector<EntityField> parse_entity_fields(std::string_view source_text) {
  static const std::regex property(
      R"(^\s*(?:@\w+(?:\([^)]*\))?\s+)*(?:(?:public|private|internal|fileprivate)\s+)?(let|var)\s+([A-Za-z_]\w*)\s*:\s*([^={]+?)\s*(=.*)?$)");
  std::vector<EntityField> fields;
  std::istringstream in{std::string(source_text)};
  std::string line;
  int depth = 0;
  while (std::getline(in, line)) {
    if (auto comment = line.find("//"); comment != std::string::npos) line.erase(comment);
    const int depth_before = depth;
    for (char c : line) {
      if (c == '{') ++depth;
      if (c == '}') --depth;
    }
    if (depth_before != 1 || line.find('{') != std::string::npos) continue;
    if (line.find("static ") != std::string::npos) continue;
    std::smatch m;
    if (std::regex_match(line, m, property)) fields.push_back({m[2].str(), trim(m[3].str())});
  }
  return fields;
}

ValidationReport validate_data_model(const DataModel& dm) {
  ValidationReport report;
  std::set<std::string> names;
  for (std::size_t i = 0; i < dm.entities.size(); ++i) {
    const auto& entity = dm.entities[i];
    const std::string path = "entities[" + std::to_string(i) + "]";
    if (entity.name.empty()) {
      report.error("empty_entity_name", path + ".name", "entity has no name");
    } else if (!is_type_identifier(entity.name)) {
      report.error("invalid_entity_name", path + ".name", "`" + entity.name + "` is not a valid type identifier");
    }
    if (!names.insert(entity.name).second) {
      report.error("duplicate_entity", path + ".name", "entity `" + entity.name + "` is declared more than once");
    }
    if (entity.fields.empty()) report.warning("empty_entity", path + ".fields", "entity has no fields");

    std::set<std::string> field_names;
    for (std::size_t j = 0; j < entity.fields.size(); ++j) {
      const auto& f = entity.fields[j];
      const std::string fpath = path + ".fields[" + std::to_string(j) + "]";
      if (f.name.empty()) report.error("empty_field_name", fpath + ".name", "field has no name");
      if (!field_names.insert(f.name).second) {
        report.error("duplicate_field", fpath + ".name",
                     "field `" + f.name + "` appears twice in `" + entity.name + "`");
      }
      if (trim(f.type).empty()) report.error("empty_field_type", fpath + ".type", "field `" + f.name + "` has no type");
    }
  }
  return report;
}

}  // namespace irforge::ir
