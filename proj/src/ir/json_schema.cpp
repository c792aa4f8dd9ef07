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

#include "irforge/json_schema.hpp"

#include "irforge/error.hpp"

namespace irforge::schema {

void fail(const std::string& path, const std::string& what) {
  throw Error("schema_error", path + ": " + what, {{"path", path}});
}

std::string join(const std::string& path, std::string_view key) {
  if (path.empty() || path == "$") return std::string(key);
  return path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const json& value, const std::string& path) {
  if (!value.is_object()) fail(path.empty() ? "$" : path, "expected an object");
}

const json& member(const json& obj, std::string_view key, const std::string& path) {
  require_object(obj, path);
  auto it = obj.find(key);
  if (it == obj.end()) fail(join(path, key), "missing required field `" + std::string(key) + "`");
  return *it;
}

const json* optional_member(const json& obj, std::string_view key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string get_string(const json& obj, std::string_view key, const std::string& path) {
  const auto& v = member(obj, key, path);
  if (!v.is_string()) fail(join(path, key), "expected a string");
  return v.get<std::string>();
}

std::string get_string_or(const json& obj, std::string_view key, const std::string& path, std::string fallback) {
  const json* v = optional_member(obj, key);
  if (v == nullptr) return fallback;
  if (!v->is_string()) fail(join(path, key), "expected a string");
  return v->get<std::string>();
}

std::int64_t get_int(const json& obj, std::string_view key, const std::string& path) {
  const auto& v = member(obj, key, path);
  if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
  return v.get<std::int64_t>();
}

double get_number(const json& obj, std::string_view key, const std::string& path) {
  const auto& v = member(obj, key, path);
  if (!v.is_number()) fail(join(path, key), "expected a number");
  return v.get<double>();
}

const json& get_array(const json& obj, std::string_view key, const std::string& path) {
  const auto& v = member(obj, key, path);
  if (!v.is_array()) fail(join(path, key), "expected an array");
  return v;
}

const json& get_object(const json& obj, std::string_view key, const std::string& path) {
  const auto& v = member(obj, key, path);
  if (!v.is_object()) fail(join(path, key), "expected an object");
  return v;
}

std::vector<std::string> get_string_list(const json& obj, std::string_view key, const std::string& path) {
  std::vector<std::string> out;
  const json* v = optional_member(obj, key);
  if (v == nullptr) return out;
  const auto p = join(path, key);
  if (!v->is_array()) fail(p, "expected an array of strings");
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_string()) fail(index(p, i), "expected a string");
    out.push_back((*v)[i].get<std::string>());
  }
  return out;
}

void check_schema_version(const json& obj, const std::string& path) {
  const json* v = optional_member(obj, "schemaVersion");
  if (v == nullptr) return;
  if (!v->is_number_integer() || v->get<int>() != 1) fail(join(path, "schemaVersion"), "unsupported schema version");
}

}  // namespace irforge::schema
