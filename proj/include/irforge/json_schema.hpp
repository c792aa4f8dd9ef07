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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

// Small helpers for reading model output with precise schema_error paths.
namespace irforge::schema {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what);

std::string join(const std::string& path, std::string_view key);
std::string index(const std::string& path, std::size_t i);

void require_object(const json& value, const std::string& path);
const json& member(const json& obj, std::string_view key, const std::string& path);
const json* optional_member(const json& obj, std::string_view key);

std::string get_string(const json& obj, std::string_view key, const std::string& path);
std::string get_string_or(const json& obj, std::string_view key, const std::string& path, std::string fallback);
std::int64_t get_int(const json& obj, std::string_view key, const std::string& path);
double get_number(const json& obj, std::string_view key, const std::string& path);
const json& get_array(const json& obj, std::string_view key, const std::string& path);
const json& get_object(const json& obj, std::string_view key, const std::string& path);
std::vector<std::string> get_string_list(const json& obj, std::string_view key, const std::string& path);

// Accepts an absent key or schemaVersion == 1.
void check_schema_version(const json& obj, const std::string& path);

}  // namespace irforge::schema
