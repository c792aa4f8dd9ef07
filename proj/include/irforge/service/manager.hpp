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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "irforge/analysis/report.hpp"
#include "irforge/llm/prompt.hpp"
#include "irforge/llm/provider.hpp"
#include "irforge/service/session.hpp"

namespace irforge::service {

struct ServiceOptions {
  plan::Clock clock = plan::utc_now;
  const llm::TemplateLibrary* templates = nullptr;
  bool concurrent_skeletons = true;
};

struct Event {
  std::uint64_t seq = 0;  // 1-based, per session
  nlohmann::json data;    // {"type": "step"|"done"|"error", ...}
};

// Append-only per-session event list with blocking reads.
class EventLog {
 public:
  void append(nlohmann::json data);
  // Events with seq > after; waits up to `timeout` when none are ready yet.
  std::vector<Event> since(std::uint64_t after, std::chrono::milliseconds timeout);

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  std::vector<Event> events_;
};

// IR kinds addressable over HTTP: "storyboard", "datamodel", "skeletons/<View>".
struct IrKind {
  enum { Storyboard, DataModel, Skeleton } kind;
  std::string view;  // skeletons only
};
// Throws Error{unknown_ir_kind}.
IrKind parse_ir_kind(const std::string& text);

// Sessions, their on-disk state and the one-operation-at-a-time rule.
// Mutating calls throw Error{busy} while another mutation of the same
// session is running; reads always see the last committed state.
class SessionManager {
 public:
  SessionManager(std::filesystem::path data_dir, std::shared_ptr<llm::Provider> provider, ServiceOptions options = {});

  Session create_session();
  std::shared_ptr<const Session> get(const std::string& id);
  std::vector<std::string> list() const;

  // First message runs initial generation, later ones plan + cascade.
  // Returns {"diff", "steps", "phase", "reply"} (plus "plan" for changes).
  nlohmann::json post_message(const std::string& id, const std::string& text);

  nlohmann::json get_ir(const std::string& id, const std::string& kind);
  // Validates the edit, then routes it through the planner as a direct edit.
  // An edit that changes nothing returns an empty diff without provider calls.
  // Throws Error{validation_failed} with {"report"} for invalid IR.
  nlohmann::json put_ir(const std::string& id, const std::string& kind, const nlohmann::json& body);

  // Returns {"appName", "metrics", "views": [{id, name, swiftUIViewName}], "utilities", "steps"}.
  nlohmann::json generate(const std::string& id, const std::optional<std::string>& app_name = std::nullopt);
  std::string export_archive(const std::string& id);
  analysis::ErrorReport check(const std::string& id);
  void put_compile_log(const std::string& id, const std::string& log);
  nlohmann::json reachability(const std::string& id);

  std::vector<Event> events(const std::string& id, std::uint64_t after, std::chrono::milliseconds wait);

 private:
  struct Slot {
    std::mutex op;
    std::mutex state;
    std::shared_ptr<const Session> current;
    EventLog events;
  };

  std::shared_ptr<Slot> slot(const std::string& id);
  std::shared_ptr<const Session> snapshot(Slot& s);
  void commit(Slot& s, Session next);

  template <class F>
  nlohmann::json mutate(const std::string& id, const std::string& op, F&& body);

  SessionStore store_;
  std::shared_ptr<llm::Provider> provider_;
  ServiceOptions options_;
  mutable std::mutex slots_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
};

}  // namespace irforge::service
