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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "irforge/codegen/generated_project.hpp"
#include "irforge/plan/project.hpp"

namespace irforge::service {

enum class Phase { Empty, Editing, Generated };

std::string_view to_string(Phase p);

struct ChatEntry {
  std::string role;  // user | assistant
  std::string text;
  std::string timestamp;

  bool operator==(const ChatEntry&) const = default;
};

struct Session {
  std::string id;
  std::string created_at;
  plan::Project project;
  std::vector<ChatEntry> chat;
  std::optional<codegen::GeneratedProject> generated;
  std::optional<std::string> compile_log;  // external compiler output, for reports

  // Empty while the storyboard has no screens, Generated while code exists.
  Phase phase() const;
  bool operator==(const Session&) const = default;
};

nlohmann::json to_json(const ChatEntry& e);
ChatEntry chat_entry_from_json(const nlohmann::json& j);

// Summary used by GET /sessions/{id}.
nlohmann::json summary_json(const Session& s);

// Letters, digits and '-' only, 1..64 chars. Guards directory lookups.
bool is_valid_session_id(std::string_view id);
std::string new_session_id();

// One directory per session under `root`:
//   session.json storyboard.json datamodel.json scaffold.json
//   skeletons/<View>.json chat.jsonl session.log.jsonl generated.json compile.log
// A save writes <id>.new completely, then swaps it in for <id>. Recovery on
// open finishes or discards an interrupted swap.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path dir(const std::string& id) const { return root_ / id; }

  // Throws Error{io_error}.
  void save(const Session& s) const;
  // Throws Error{unknown_session | io_error | schema_error}.
  Session load(const std::string& id) const;
  bool exists(const std::string& id) const;
  std::vector<std::string> list() const;

 private:
  void recover() const;
  std::filesystem::path root_;
};

}  // namespace irforge::service
