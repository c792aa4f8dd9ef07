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

#include "irforge/ir/serialize.hpp"

#include <algorithm>
#include <cctype>

#include "irforge/error.hpp"
#include "irforge/json_schema.hpp"

namespace irforge::ir {

using nlohmann::json;
namespace sc = irforge::schema;

namespace {

// SAX consumer that only tracks where the parser currently is, so a syntax
// error can be reported with a JSON path as well as a byte offset.
class PathTracker : public nlohmann::json_sax<json> {
 public:
  std::string path() const {
    std::string out = "$";
    for (const auto& f : frames_) {
      if (f.is_array) {
        out += "[" + std::to_string(f.index) + "]";
      } else if (!f.key.empty()) {
        out += "." + f.key;
      }
    }
    return out;
  }

  bool null() override { return value(); }
  bool boolean(bool) override { return value(); }
  bool number_integer(number_integer_t) override { return value(); }
  bool number_unsigned(number_unsigned_t) override { return value(); }
  bool number_float(number_float_t, const string_t&) override { return value(); }
  bool string(string_t&) override { return value(); }
  bool binary(binary_t&) override { return value(); }
  bool start_object(std::size_t) override {
    frames_.push_back({false, 0, {}});
    return true;
  }
  bool key(string_t& k) override {
    frames_.back().key = k;
    return true;
  }
  bool end_object() override {
    frames_.pop_back();
    return value();
  }
  bool start_array(std::size_t) override {
    frames_.push_back({true, 0, {}});
    return true;
  }
  bool end_array() override {
    frames_.pop_back();
    return value();
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }

 private:
  struct Frame {
    bool is_array;
    std::size_t index;
    std::string key;
  };

  bool value() {
    if (!frames_.empty() && frames_.back().is_array) ++frames_.back().index;
    return true;
  }

  std::vector<Frame> frames_;
};

bool is_action_key(const std::string& key) {
  return key.size() > 2 && key.compare(0, 2, "On") == 0 && std::isupper(static_cast<unsigned char>(key[2]));
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

Action action_from_json(const std::string& trigger, const json& v, const std::string& path) {
  Action action;
  action.trigger = trigger;
  if (v.is_string()) {
    action.handler = v.get<std::string>();
    return action;
  }
  sc::require_object(v, path);
  if (const json* nav = sc::optional_member(v, "Navigate")) {
    const std::string npath = sc::join(path, "Navigate");
    if (nav->is_string()) {
      action.handler = Navigate{nav->get<std::string>()};
    } else {
      action.handler = Navigate{sc::get_string(*nav, "Destination", npath)};
    }
    return action;
  }
  if (const json* desc = sc::optional_member(v, "Action"); desc != nullptr && desc->is_string()) {
    action.handler = desc->get<std::string>();
    return action;
  }
  sc::fail(path, "action must be a description string or a Navigate record");
}

SkeletonElement element_from_json(const json& v, const std::string& path);

SkeletonElement element_body(const std::string& kind, const json& body, const std::string& path) {
  SkeletonElement e;
  if (auto k = builtin_kind(kind)) {
    e.kind = *k;
  } else {
    e.kind = ElementKind::Custom;
    e.custom_kind = kind;
  }
  if (!body.is_object()) {
    if (body.is_array()) sc::fail(path, "element body must be an object");
    if (!body.is_null()) e.attributes["Value"] = scalar_text(body);
    return e;
  }
  if (const json* elements = sc::optional_member(body, "Elements")) {
    const std::string epath = sc::join(path, "Elements");
    if (!elements->is_array()) sc::fail(epath, "expected an array of elements");
    for (std::size_t i = 0; i < elements->size(); ++i) {
      e.children.push_back(element_from_json((*elements)[i], sc::index(epath, i)));
    }
  }
  for (const auto& [key, value] : body.items()) {
    if (key == "Elements") continue;
    const std::string kpath = sc::join(path, key);
    if (is_action_key(key)) {
      if (e.action) sc::fail(kpath, "element has more than one action handler");
      e.action = action_from_json(key, value, kpath);
    } else if (value.is_object()) {
      e.children.push_back(element_body(key, value, kpath));
    } else if (value.is_array()) {
      sc::fail(kpath, "unexpected array; child elements belong in `Elements`");
    } else if (!value.is_null()) {
      e.attributes[key] = scalar_text(value);
    }
  }
  return e;
}

SkeletonElement element_from_json(const json& v, const std::string& path) {
  sc::require_object(v, path);
  if (v.size() != 1) sc::fail(path, "an element is an object with exactly one kind key");
  const auto& [kind, body] = *v.items().begin();
  return element_body(kind, body, sc::join(path, kind));
}

json element_body_json(const SkeletonElement& e) {
  json body = json::object();
  for (const auto& [key, value] : e.attributes) body[key] = value;
  if (e.action) {
    if (const auto* nav = e.action->navigate()) {
      body[e.action->trigger] = {{"Navigate", {{"Destination", nav->destination}}}};
    } else {
      body[e.action->trigger] = std::get<std::string>(e.action->handler);
    }
  }
  if (!e.children.empty()) {
    json children = json::array();
    for (const auto& c : e.children) children.push_back({{c.kind_text(), element_body_json(c)}});
    body["Elements"] = std::move(children);
  }
  return body;
}

json layout_json(const SkeletonElement& layout) {
  // Keyed form only when it parses back in the same order.
  bool keyed = true;
  for (std::size_t i = 1; i < layout.children.size(); ++i) {
    if (!(layout.children[i - 1].kind_text() < layout.children[i].kind_text())) keyed = false;
  }
  if (keyed) {
    json out = json::object();
    for (const auto& c : layout.children) out[c.kind_text()] = element_body_json(c);
    return out;
  }
  json out = json::array();
  for (const auto& c : layout.children) out.push_back({{c.kind_text(), element_body_json(c)}});
  return out;
}

}  // namespace

std::string canonical_text(const json& value) { return value.dump(2) + "\n"; }

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    PathTracker tracker;
    json::sax_parse(text.begin(), text.end(), &tracker, nlohmann::detail::input_format_t::json, false);
    throw Error("parse_error", e.what(), {{"offset", e.byte}, {"path", tracker.path()}});
  }
}

json to_json(const Storyboard& sb) {
  json nodes = json::array();
  for (const auto& n : sb.nodes) {
    nodes.push_back({{"id", n.id},
                     {"name", n.name},
                     {"description", n.description},
                     {"swiftUIViewName", n.view_name},
                     {"outgoingEdges", n.outgoing_edges}});
  }
  json out = {{"schemaVersion", kSchemaVersion}, {"description", sb.description}, {"nodes", std::move(nodes)}};
  if (sb.entry_node_id) out["entryNodeId"] = *sb.entry_node_id;
  return out;
}

Storyboard storyboard_from_json(const json& value) {
  sc::require_object(value, "$");
  const json* body = &value;
  std::string root;
  if (!value.contains("nodes") && value.contains("storyboard")) {
    body = &value.at("storyboard");
    root = "storyboard";
  }
  sc::check_schema_version(*body, root);
  Storyboard sb;
  sb.description = sc::get_string_or(*body, "description", root, "");
  const auto nodes_path = sc::join(root, "nodes");
  const auto& nodes = sc::get_array(*body, "nodes", root);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto path = sc::index(nodes_path, i);
    const auto& n = nodes[i];
    StoryboardNode node;
    node.id = sc::get_int(n, "id", path);
    node.name = sc::get_string(n, "name", path);
    node.description = sc::get_string_or(n, "description", path, "");
    node.view_name = sc::get_string(n, "swiftUIViewName", path);
    if (const json* edges = sc::optional_member(n, "outgoingEdges")) {
      const auto epath = sc::join(path, "outgoingEdges");
      if (!edges->is_array()) sc::fail(epath, "expected an array of node ids");
      for (std::size_t e = 0; e < edges->size(); ++e) {
        if (!(*edges)[e].is_number_integer()) sc::fail(sc::index(epath, e), "expected an integer node id");
        node.outgoing_edges.push_back((*edges)[e].get<NodeId>());
      }
    }
    sb.nodes.push_back(std::move(node));
  }
  if (const json* entry = sc::optional_member(*body, "entryNodeId")) {
    if (!entry->is_number_integer()) sc::fail(sc::join(root, "entryNodeId"), "expected an integer node id");
    sb.entry_node_id = entry->get<NodeId>();
  }
  NodeId next = sb.max_id();
  for (auto& n : sb.nodes) {
    if (n.id == 0) n.id = ++next;
  }
  return sb;
}

json to_json(const DataModel& dm) {
  json entities = json::array();
  for (const auto& e : dm.entities) {
    json fields = json::array();
    for (const auto& f : e.fields) fields.push_back({{"name", f.name}, {"type", f.type}});
    entities.push_back({{"name", e.name}, {"doc", e.doc}, {"fields", std::move(fields)}, {"sourceText", e.source_text}});
  }
  return {{"schemaVersion", kSchemaVersion}, {"entities", std::move(entities)}};
}

DataModel data_model_from_json(const json& value) {
  sc::require_object(value, "$");
  const json* body = &value;
  std::string root;
  if (!value.contains("entities") && value.contains("dataModel")) {
    body = &value.at("dataModel");
    root = "dataModel";
  }
  sc::check_schema_version(*body, root);
  DataModel dm;
  const auto entities_path = sc::join(root, "entities");
  const auto& entities = sc::get_array(*body, "entities", root);
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const auto path = sc::index(entities_path, i);
    const auto& e = entities[i];
    DataEntity entity;
    entity.name = sc::get_string(e, "name", path);
    entity.doc = sc::get_string_or(e, "doc", path, "");
    entity.source_text = sc::get_string_or(e, "sourceText", path, "");
    if (const json* fields = sc::optional_member(e, "fields")) {
      const auto fpath = sc::join(path, "fields");
      if (!fields->is_array()) sc::fail(fpath, "expected an array of fields");
      for (std::size_t j = 0; j < fields->size(); ++j) {
        const auto p = sc::index(fpath, j);
        entity.fields.push_back({sc::get_string((*fields)[j], "name", p), sc::get_string((*fields)[j], "type", p)});
      }
    } else if (!entity.source_text.empty()) {
      entity.fields = parse_entity_fields(entity.source_text);
    } else {
      sc::fail(sc::join(path, "fields"), "missing required field `fields` (or `sourceText`)");
    }
    if (entity.source_text.empty()) entity.source_text = render_entity_source(entity);
    dm.entities.push_back(std::move(entity));
  }
  return dm;
}

json to_json(const GuiSkeleton& skeleton) {
  return {{"schemaVersion", kSchemaVersion},
          {"viewName", skeleton.view_name},
          {"id", skeleton.node_id},
          {"guiSkeleton", {{"StateVariables", skeleton.state_variables}, {"Layout", layout_json(skeleton.layout)}}}};
}

GuiSkeleton skeleton_from_json(const json& value) {
  sc::require_object(value, "$");
  sc::check_schema_version(value, "");
  GuiSkeleton skeleton;
  skeleton.view_name = sc::get_string(value, "viewName", "");
  if (const json* id = sc::optional_member(value, "id")) {
    if (!id->is_number_integer()) sc::fail("id", "expected an integer node id");
    skeleton.node_id = id->get<NodeId>();
  }
  const auto& body = sc::get_object(value, "guiSkeleton", "");
  skeleton.state_variables = sc::get_string_list(body, "StateVariables", "guiSkeleton");
  const auto& layout = sc::member(body, "Layout", "guiSkeleton");
  const std::string lpath = "guiSkeleton.Layout";
  if (layout.is_object()) {
    for (const auto& [kind, child] : layout.items()) {
      skeleton.layout.children.push_back(element_body(kind, child, sc::join(lpath, kind)));
    }
  } else if (layout.is_array()) {
    for (std::size_t i = 0; i < layout.size(); ++i) {
      skeleton.layout.children.push_back(element_from_json(layout[i], sc::index(lpath, i)));
    }
  } else {
    sc::fail(lpath, "expected an object or array");
  }
  return skeleton;
}

std::string serialize(const Storyboard& sb) { return canonical_text(to_json(sb)); }
std::string serialize(const DataModel& dm) { return canonical_text(to_json(dm)); }
std::string serialize(const GuiSkeleton& skeleton) { return canonical_text(to_json(skeleton)); }

Storyboard parse_storyboard(std::string_view text) { return storyboard_from_json(parse_json_text(text)); }
DataModel parse_data_model(std::string_view text) { return data_model_from_json(parse_json_text(text)); }
GuiSkeleton parse_skeleton(std::string_view text) { return skeleton_from_json(parse_json_text(text)); }

}  // namespace irforge::ir
