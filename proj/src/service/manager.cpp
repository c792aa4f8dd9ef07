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

#include "irforge/service/manager.hpp"

#include <algorithm>

#include "irforge/analysis/navigation.hpp"
#include "irforge/codegen/export.hpp"
#include "irforge/codegen/generate.hpp"
#include "irforge/codegen/initial.hpp"
#include "irforge/error.hpp"
#include "irforge/ir/serialize.hpp"
#include "irforge/ir/validate.hpp"
#include "irforge/plan/diff.hpp"
#include "irforge/plan/executor.hpp"
#include "irforge/plan/planner.hpp"

namespace irforge::service {

using nlohmann::json;

void EventLog::append(json data) {
  {
    std::lock_guard lock(mutex_);
    events_.push_back({events_.size() + 1, std::move(data)});
  }
  cv_.notify_all();
}

std::vector<Event> EventLog::since(std::uint64_t after, std::chrono::milliseconds timeout) {
  std::unique_lock lock(mutex_);
  cv_.wait_for(lock, timeout, [&] { return events_.size() > after; });
  if (events_.size() <= after) return {};
  return {events_.begin() + static_cast<std::ptrdiff_t>(after), events_.end()};
}

IrKind parse_ir_kind(const std::string& text) {
  if (text == "storyboard") return {IrKind::Storyboard, ""};
  if (text == "datamodel") return {IrKind::DataModel, ""};
  const std::string prefix = "skeletons/";
  if (text.rfind(prefix, 0) == 0 && ir::is_type_identifier(text.substr(prefix.size()))) {
    return {IrKind::Skeleton, text.substr(prefix.size())};
  }
  throw Error("unknown_ir_kind", "no IR kind `" + text + "`", {{"kind", text}});
}

SessionManager::SessionManager(std::filesystem::path data_dir, std::shared_ptr<llm::Provider> provider,
                               ServiceOptions options)
    : store_(std::move(data_dir)), provider_(std::move(provider)), options_(std::move(options)) {}

std::shared_ptr<SessionManager::Slot> SessionManager::slot(const std::string& id) {
  std::lock_guard lock(slots_mutex_);
  if (auto it = slots_.find(id); it != slots_.end()) return it->second;
  if (!store_.exists(id)) throw Error("unknown_session", "no session " + id, {{"id", id}});
  auto s = std::make_shared<Slot>();
  s->current = std::make_shared<const Session>(store_.load(id));
  slots_.emplace(id, s);
  return s;
}

std::shared_ptr<const Session> SessionManager::snapshot(Slot& s) {
  std::lock_guard lock(s.state);
  return s.current;
}

void SessionManager::commit(Slot& s, Session next) {
  store_.save(next);
  auto ptr = std::make_shared<const Session>(std::move(next));
  std::lock_guard lock(s.state);
  s.current = std::move(ptr);
}

template <class F>
json SessionManager::mutate(const std::string& id, const std::string& op, F&& body) {
  auto s = slot(id);
  std::unique_lock lock(s->op, std::try_to_lock);
  if (!lock.owns_lock()) throw Error("busy", "session " + id + " has an operation in progress", {{"id", id}});
  s->events.append({{"type", "start"}, {"op", op}});
  auto emit = [s, op](const plan::ExecutedStep& step) {
    s->events.append({{"type", "step"}, {"op", op}, {"step", plan::to_json(step)}});
  };
  try {
    json result = body(*s, emit);
    s->events.append({{"type", "done"}, {"op", op}});
    return result;
  } catch (const Error& e) {
    s->events.append({{"type", "error"}, {"op", op}, {"code", e.code()}, {"message", e.what()}});
    throw;
  } catch (const std::exception& e) {
    s->events.append({{"type", "error"}, {"op", op}, {"code", "internal"}, {"message", e.what()}});
    throw;
  }
}

Session SessionManager::create_session() {
  Session s;
  do {
    s.id = new_session_id();
  } while (store_.exists(s.id));
  s.created_at = options_.clock();
  store_.save(s);
  auto slot = std::make_shared<Slot>();
  slot->current = std::make_shared<const Session>(s);
  std::lock_guard lock(slots_mutex_);
  slots_.emplace(s.id, slot);
  return s;
}

std::shared_ptr<const Session> SessionManager::get(const std::string& id) { return snapshot(*slot(id)); }

std::vector<std::string> SessionManager::list() const { return store_.list(); }

namespace {

json steps_json(const std::vector<plan::ExecutedStep>& steps) {
  json out = json::array();
  for (const auto& s : steps) out.push_back(plan::to_json(s));
  return out;
}

std::string created_reply(const plan::Project& p) {
  std::string names;
  for (const auto& n : p.storyboard.nodes) names += (names.empty() ? "" : ", ") + n.name;
  return "Created " + std::to_string(p.storyboard.nodes.size()) + " screens: " + names + ".";
}

bool diff_empty(const plan::ProjectDiff& d) {
  return to_json(d) == to_json(plan::ProjectDiff{});
}

}  // namespace

json SessionManager::post_message(const std::string& id, const std::string& text) {
  return mutate(id, "message", [&](Slot& s, const auto& emit) {
    const auto cur = snapshot(s);
    Session next = *cur;
    const auto asked_at = options_.clock();
    json result = json::object();
    std::vector<plan::ExecutedStep> steps;
    std::string reply;
    if (cur->phase() == Phase::Empty) {
      codegen::InitialOptions io;
      io.stage = {options_.templates, options_.clock, std::nullopt};
      io.concurrent_skeletons = options_.concurrent_skeletons;
      io.on_step = emit;
      auto out = codegen::initial_generate(*provider_, text, io);
      steps = out.steps;
      next.project = std::move(out.project);
      next.project.history = cur->project.history;
      next.project.history.insert(next.project.history.end(), steps.begin(), steps.end());
      reply = created_reply(next.project);
    } else {
      plan::ExecutedStep plan_step;
      const auto plan =
          plan::plan_request(text, cur->project, *provider_, {options_.templates, options_.clock, 1}, &plan_step);
      plan::ExecuteOptions eo;
      eo.templates = options_.templates;
      eo.clock = options_.clock;
      eo.concurrent_skeletons = options_.concurrent_skeletons;
      eo.plan_step = plan_step;
      eo.request = text;
      eo.on_step = emit;
      auto exec = plan::execute_plan(plan, cur->project, *provider_, eo);
      steps = exec.steps;
      next.project = std::move(exec.project);
      result["plan"] = plan::to_json(plan);
      reply = plan.summary.empty() ? plan::describe(plan) : plan.summary;
    }
    const auto diff = plan::diff_project(cur->project, next.project);
    if (!diff_empty(diff)) next.generated.reset();
    next.chat.push_back({"user", text, asked_at});
    next.chat.push_back({"assistant", reply, options_.clock()});
    commit(s, next);
    result["diff"] = plan::to_json(diff);
    result["steps"] = steps_json(steps);
    result["phase"] = to_string(next.phase());
    result["reply"] = reply;
    return result;
  });
}

json SessionManager::get_ir(const std::string& id, const std::string& kind_text) {
  const auto kind = parse_ir_kind(kind_text);
  const auto cur = get(id);
  switch (kind.kind) {
    case IrKind::Storyboard: return ir::to_json(cur->project.storyboard);
    case IrKind::DataModel: return ir::to_json(cur->project.data_model);
    case IrKind::Skeleton: break;
  }
  const auto* sk = cur->project.skeleton_for_view(kind.view);
  if (sk == nullptr) throw Error("unknown_view", "no skeleton for `" + kind.view + "`", {{"view", kind.view}});
  return ir::to_json(*sk);
}

json SessionManager::put_ir(const std::string& id, const std::string& kind_text, const json& body) {
  const auto kind = parse_ir_kind(kind_text);
  return mutate(id, "edit", [&](Slot& s, const auto& emit) {
    const auto cur = snapshot(s);
    plan::Project edited = cur->project;
    ir::ValidationReport report;
    std::optional<plan::DirectEdit> edit;
    std::string label;
    switch (kind.kind) {
      case IrKind::Storyboard: {
        auto sb = ir::storyboard_from_json(body);
        report = ir::validate_storyboard(sb);
        edited.storyboard = sb;
        edit = plan::DirectEdit{std::move(sb)};
        label = "storyboard";
        break;
      }
      case IrKind::DataModel: {
        auto dm = ir::data_model_from_json(body);
        report = ir::validate_data_model(dm);
        edited.data_model = dm;
        edit = plan::DirectEdit{std::move(dm)};
        label = "data model";
        break;
      }
      case IrKind::Skeleton: {
        const auto* node = cur->project.storyboard.find_view(kind.view);
        if (node == nullptr) throw Error("unknown_view", "`" + kind.view + "` is not a screen", {{"view", kind.view}});
        auto sk = ir::skeleton_from_json(body);
        if (sk.node_id == 0) sk.node_id = node->id;
        if (sk.view_name != kind.view) {
          report.error("view_name_mismatch", "viewName", "body is for `" + sk.view_name + "`, path is `" + kind.view + "`");
        }
        report.merge(ir::validate_skeleton_in_context(sk, cur->project.storyboard, cur->project.data_model));
        edited.skeletons[node->id] = sk;
        edit = plan::DirectEdit{std::move(sk)};
        label = "GUI skeleton of " + kind.view;
        break;
      }
    }
    if (!report.ok()) {
      throw Error("validation_failed", "edited " + label + " is invalid", {{"report", ir::to_json(report)}});
    }

    json result = json::object();
    const auto change = plan::describe_edit(cur->project, edited);
    if (change.empty()) {
      result["diff"] = plan::to_json(plan::diff_project(cur->project, cur->project));
      result["steps"] = json::array();
      result["phase"] = to_string(cur->phase());
      return result;
    }
    const auto request = "The user edited the " + label + " directly. Keep their edit and update whatever else depends on it.\n\n" + change;
    plan::ExecutedStep plan_step;
    const auto plan = plan::plan_request(request, cur->project, *provider_, {options_.templates, options_.clock, 1}, &plan_step);
    plan::ExecuteOptions eo;
    eo.templates = options_.templates;
    eo.clock = options_.clock;
    eo.concurrent_skeletons = options_.concurrent_skeletons;
    eo.plan_step = plan_step;
    eo.direct_edit = edit;
    eo.request = request;
    eo.on_step = emit;
    auto exec = plan::execute_plan(plan, cur->project, *provider_, eo);
    Session next = *cur;
    next.project = std::move(exec.project);
    const auto diff = plan::diff_project(cur->project, next.project);
    if (!diff_empty(diff)) next.generated.reset();
    commit(s, next);
    result["plan"] = plan::to_json(plan);
    result["diff"] = plan::to_json(diff);
    result["steps"] = steps_json(exec.steps);
    result["phase"] = to_string(next.phase());
    return result;
  });
}

json SessionManager::generate(const std::string& id, const std::optional<std::string>& app_name) {
  return mutate(id, "generate", [&](Slot& s, const auto& emit) {
    const auto cur = snapshot(s);
    if (cur->phase() == Phase::Empty) throw Error("session_empty", "nothing to generate yet", {{"id", id}});
    codegen::CodegenOptions co;
    co.stage = {options_.templates, options_.clock, std::nullopt};
    co.app_name = app_name ? *app_name : cur->generated ? cur->generated->app_name : "GeneratedApp";
    std::vector<plan::ExecutedStep> steps;
    auto gp = codegen::generate_code(*provider_, cur->project, co, &steps);
    for (const auto& step : steps) emit(step);
    Session next = *cur;
    next.generated = gp;
    next.project.history.insert(next.project.history.end(), steps.begin(), steps.end());
    commit(s, next);
    json views = json::array();
    for (const auto& v : gp.views) views.push_back({{"id", v.id}, {"name", v.name}, {"swiftUIViewName", v.view_name}});
    json utilities = json::array();
    for (const auto& u : gp.utilities) utilities.push_back(u.name);
    return json{{"appName", gp.app_name},
                {"metrics", {{"viewCount", gp.metrics.view_count}, {"linesOfCode", gp.metrics.lines_of_code}}},
                {"views", views},
                {"utilities", utilities},
                {"steps", steps_json(steps)},
                {"phase", to_string(next.phase())}};
  });
}

std::string SessionManager::export_archive(const std::string& id) {
  const auto cur = get(id);
  if (!cur->generated) throw Error("not_generated", "generate code before exporting", {{"id", id}});
  return codegen::export_archive(*cur->generated);
}

analysis::ErrorReport SessionManager::check(const std::string& id) {
  const auto cur = get(id);
  if (!cur->generated) throw Error("not_generated", "generate code before checking", {{"id", id}});
  auto findings = analysis::check_navigation(*cur->generated, cur->project.storyboard);
  return analysis::summarize(std::move(findings),
                             cur->compile_log ? std::optional<std::string_view>(*cur->compile_log) : std::nullopt);
}

void SessionManager::put_compile_log(const std::string& id, const std::string& log) {
  analysis::parse_compilation_log(log);
  mutate(id, "compile_log", [&](Slot& s, const auto&) {
    Session next = *snapshot(s);
    next.compile_log = log;
    commit(s, next);
    return json::object();
  });
}

json SessionManager::reachability(const std::string& id) {
  const auto cur = get(id);
  const auto& sb = cur->project.storyboard;
  json reachable = json::array();
  json unreachable = json::array();
  const auto entry = sb.effective_entry();
  std::set<ir::NodeId> seen;
  if (entry) seen = ir::reachable_nodes(sb, *entry);
  for (const auto& n : sb.nodes) (seen.count(n.id) ? reachable : unreachable).push_back(n.id);
  return {{"entry", entry ? json(*entry) : json(nullptr)}, {"reachable", reachable}, {"unreachable", unreachable}};
}

std::vector<Event> SessionManager::events(const std::string& id, std::uint64_t after, std::chrono::milliseconds wait) {
  return slot(id)->events.since(after, wait);
}

}  // namespace irforge::service
