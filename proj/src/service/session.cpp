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

#include "irforge/service/session.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

#include "irforge/error.hpp"
#include "irforge/ir/serialize.hpp"

namespace irforge::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kNewSuffix = ".new";
constexpr const char* kOldSuffix = ".old";

[[noreturn]] void io_fail(const fs::path& path, const std::string& what) {
  throw Error("io_error", what + ": " + path.string(), {{"path", path.string()}});
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) io_fail(path, "cannot write");
  out << text;
  if (!out.flush()) io_fail(path, "cannot write");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail(path, "cannot read");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

json read_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw Error("schema_error", path.filename().string() + ": " + e.what(), {{"path", path.string()}});
  }
}

std::vector<json> read_jsonl(const fs::path& path) {
  std::vector<json> out;
  if (!fs::exists(path)) return out;
  std::istringstream in(read_text(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

}  // namespace

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Empty: return "empty";
    case Phase::Editing: return "editing";
    case Phase::Generated: return "generated";
  }
  return "empty";
}

Phase Session::phase() const {
  if (project.storyboard.nodes.empty()) return Phase::Empty;
  return generated ? Phase::Generated : Phase::Editing;
}

json to_json(const ChatEntry& e) { return {{"role", e.role}, {"text", e.text}, {"timestamp", e.timestamp}}; }

ChatEntry chat_entry_from_json(const json& j) {
  return {j.at("role").get<std::string>(), j.at("text").get<std::string>(), j.value("timestamp", "")};
}

json summary_json(const Session& s) {
  json chat = json::array();
  for (const auto& c : s.chat) chat.push_back(to_json(c));
  json out = {{"id", s.id},
              {"createdAt", s.created_at},
              {"phase", to_string(s.phase())},
              {"nodeCount", s.project.storyboard.nodes.size()},
              {"edgeCount", s.project.storyboard.edge_count()},
              {"entityCount", s.project.data_model.entities.size()},
              {"skeletonCount", s.project.skeletons.size()},
              {"stepCount", s.project.history.size()},
              {"chat", chat},
              {"generated", nullptr}};
  if (s.generated) {
    out["generated"] = {{"appName", s.generated->app_name},
                        {"viewCount", s.generated->metrics.view_count},
                        {"linesOfCode", s.generated->metrics.lines_of_code}};
  }
  return out;
}

bool is_valid_session_id(std::string_view id) {
  return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '-';
  });
}

std::string new_session_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  static const char* hex = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 16; ++i) id.push_back(hex[rng() % 16]);
  return id;
}

SessionStore::SessionStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) io_fail(root_, "cannot create data directory");
  recover();
}

void SessionStore::recover() const {
  for (const auto& entry : fs::directory_iterator(root_)) {
    const auto name = entry.path().filename().string();
    auto strip = [&](const std::string& suffix) -> std::optional<std::string> {
      if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return name.substr(0, name.size() - suffix.size());
      }
      return std::nullopt;
    };
    if (auto id = strip(kNewSuffix)) {
      // A complete .new is only ever renamed after the live copy moved aside.
      if (!fs::exists(root_ / *id) && fs::exists(root_ / (*id + kOldSuffix))) {
        fs::rename(entry.path(), root_ / *id);
      } else {
        fs::remove_all(entry.path());
      }
    }
  }
  for (const auto& entry : fs::directory_iterator(root_)) {
    const auto name = entry.path().filename().string();
    if (name.size() > 4 && name.compare(name.size() - 4, 4, kOldSuffix) == 0) {
      const auto id = name.substr(0, name.size() - 4);
      if (!fs::exists(root_ / id)) {
        fs::rename(entry.path(), root_ / id);
      } else {
        fs::remove_all(entry.path());
      }
    }
  }
}

void SessionStore::save(const Session& s) const {
  if (!is_valid_session_id(s.id)) throw Error("unknown_session", "invalid session id", {{"id", s.id}});
  const auto live = dir(s.id);
  const auto staged = root_ / (s.id + kNewSuffix);
  const auto old = root_ / (s.id + kOldSuffix);
  std::error_code ec;
  fs::remove_all(staged, ec);
  fs::create_directories(staged / "skeletons", ec);
  if (ec) io_fail(staged, "cannot create");

  const auto& p = s.project;
  write_text(staged / "session.json",
             ir::canonical_text({{"id", s.id}, {"createdAt", s.created_at}, {"phase", to_string(s.phase())}}));
  write_text(staged / "storyboard.json", ir::serialize(p.storyboard));
  write_text(staged / "datamodel.json", ir::serialize(p.data_model));
  for (const auto& [id, sk] : p.skeletons) write_text(staged / "skeletons" / (sk.view_name + ".json"), ir::serialize(sk));
  if (p.design_scaffold) write_text(staged / "scaffold.json", ir::canonical_text(ir::to_json(*p.design_scaffold)));
  std::string chat;
  for (const auto& c : s.chat) chat += to_json(c).dump() + "\n";
  write_text(staged / "chat.jsonl", chat);
  std::string log;
  for (const auto& step : p.history) log += plan::to_json(step).dump() + "\n";
  write_text(staged / "session.log.jsonl", log);
  if (s.generated) write_text(staged / "generated.json", ir::canonical_text(codegen::to_json(*s.generated)));
  if (s.compile_log) write_text(staged / "compile.log", *s.compile_log);

  fs::remove_all(old, ec);
  if (fs::exists(live)) {
    fs::rename(live, old, ec);
    if (ec) io_fail(live, "cannot move aside");
  }
  fs::rename(staged, live, ec);
  if (ec) io_fail(live, "cannot commit");
  fs::remove_all(old, ec);
}

bool SessionStore::exists(const std::string& id) const {
  return is_valid_session_id(id) && fs::exists(dir(id) / "session.json");
}

Session SessionStore::load(const std::string& id) const {
  if (!exists(id)) throw Error("unknown_session", "no session " + id, {{"id", id}});
  const auto d = dir(id);
  Session s;
  const auto meta = read_json(d / "session.json");
  s.id = meta.at("id").get<std::string>();
  s.created_at = meta.value("createdAt", "");
  s.project.storyboard = ir::storyboard_from_json(read_json(d / "storyboard.json"));
  s.project.data_model = ir::data_model_from_json(read_json(d / "datamodel.json"));
  if (fs::is_directory(d / "skeletons")) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(d / "skeletons")) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      auto sk = ir::skeleton_from_json(read_json(f));
      s.project.skeletons[sk.node_id] = std::move(sk);
    }
  }
  if (fs::exists(d / "scaffold.json")) s.project.design_scaffold = ir::scaffold_from_json(read_json(d / "scaffold.json"));
  for (const auto& j : read_jsonl(d / "chat.jsonl")) s.chat.push_back(chat_entry_from_json(j));
  for (const auto& j : read_jsonl(d / "session.log.jsonl")) s.project.history.push_back(plan::step_from_json(j));
  if (fs::exists(d / "generated.json")) s.generated = codegen::generated_from_json(read_json(d / "generated.json"));
  if (fs::exists(d / "compile.log")) s.compile_log = read_text(d / "compile.log");
  return s;
}

std::vector<std::string> SessionStore::list() const {
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(root_)) {
    const auto name = entry.path().filename().string();
    if (entry.is_directory() && exists(name)) out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace irforge::service
