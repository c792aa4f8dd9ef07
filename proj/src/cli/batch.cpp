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

#include "irforge/cli/batch.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "irforge/analysis/navigation.hpp"
#include "irforge/codegen/export.hpp"
#include "irforge/codegen/generate.hpp"
#include "irforge/codegen/initial.hpp"
#include "irforge/error.hpp"
#include "irforge/ir/serialize.hpp"
#include "irforge/json_schema.hpp"
#include "irforge/plan/executor.hpp"
#include "irforge/plan/planner.hpp"

namespace irforge::cli {

namespace fs = std::filesystem;
namespace sc = irforge::schema;
using nlohmann::json;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("bad_input", "cannot read " + path.string(), {{"path", path.string()}});
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error("io_error", "cannot write " + path.string(), {{"path", path.string()}});
}

bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

void write_irs(const plan::Project& p, const fs::path& dir) {
  std::error_code ec;
  fs::remove_all(dir, ec);
  write_text(dir / "storyboard.json", ir::serialize(p.storyboard));
  write_text(dir / "datamodel.json", ir::serialize(p.data_model));
  for (const auto& [id, sk] : p.skeletons) write_text(dir / "skeletons" / (sk.view_name + ".json"), ir::serialize(sk));
  if (p.design_scaffold) write_text(dir / "scaffold.json", ir::canonical_text(ir::to_json(*p.design_scaffold)));
}

void write_log(const std::vector<plan::ExecutedStep>& steps, const fs::path& path) {
  std::string log;
  for (const auto& s : steps) log += plan::to_json(s).dump() + "\n";
  write_text(path, log);
}

}  // namespace

BatchScript batch_script_from_json(const json& value, const fs::path& base_dir) {
  const std::string root;
  sc::require_object(value, root);
  BatchScript script;
  script.app_name = sc::get_string_or(value, "appName", root, script.app_name);
  script.initial_prompt = sc::get_string(value, "initialPrompt", root);
  if (blank(script.initial_prompt)) sc::fail("initialPrompt", "must not be empty");
  if (sc::optional_member(value, "changePrompts")) script.change_prompts = sc::get_string_list(value, "changePrompts", root);
  if (const json* p = sc::optional_member(value, "provider")) {
    if (p->is_string()) {
      script.provider_name = p->get<std::string>();
    } else {
      json entry = *p;
      if (entry.is_object() && !entry.contains("name")) entry["name"] = "inline";
      const auto registry = llm::ProviderRegistry::from_json({{"providers", {entry}}}, base_dir);
      script.provider = registry.providers.front();
    }
  }
  if (sc::optional_member(value, "outDir")) {
    fs::path out = sc::get_string(value, "outDir", root);
    script.out_dir = out.is_absolute() ? out : base_dir / out;
  }
  return script;
}

BatchScript load_batch_script(const fs::path& path) {
  const auto text = read_text(path);
  try {
    return batch_script_from_json(ir::parse_json_text(text), path.parent_path());
  } catch (const Error& e) {
    json detail = e.detail().is_object() ? e.detail() : json::object();
    detail["path"] = path.string();
    throw Error("bad_input", path.string() + ": " + e.what(), detail);
  }
}

plan::Clock logical_clock() {
  auto counter = std::make_shared<std::atomic<int>>(0);
  return [counter] {
    char buf[32];
    std::snprintf(buf, sizeof buf, "seq-%06d", ++*counter);
    return std::string(buf);
  };
}

json metrics_json(const codegen::Metrics& metrics, const analysis::ErrorReport& report, bool compiled) {
  return {{"views", metrics.view_count},
          {"lines_of_code", metrics.lines_of_code},
          {"compilation_errors", compiled ? json(report.compilation_total) : json(nullptr)},
          {"navigation_errors", report.navigation_total}};
}

json RunOutcome::to_json() const {
  json out = {{"exitCode", exit_code}, {"steps", steps}};
  if (!failed_stage.empty()) {
    out["failedStage"] = failed_stage;
    out["error"] = {{"code", error_code}, {"message", error_message}};
  }
  if (metrics) out["metrics"] = {{"views", metrics->view_count}, {"lines_of_code", metrics->lines_of_code}};
  if (report) out["report"] = {{"navigation", report->navigation_total}, {"compilation", report->compilation_total}};
  if (!export_dir.empty()) out["exportDir"] = export_dir.string();
  if (!archive.empty()) out["archive"] = archive.string();
  return out;
}

RunOutcome run_batch(const BatchScript& script, llm::Provider& provider, const RunOptions& options) {
  RunOutcome outcome;
  const plan::Clock clock = options.wall_clock ? plan::Clock(plan::utc_now) : logical_clock();
  const bool concurrent = options.wall_clock;
  const auto& out = options.out_dir;
  plan::Project project;
  std::string stage = "input";

  try {
    std::optional<std::string> compile_log;
    if (options.compile_log) {
      compile_log = read_text(*options.compile_log);
      analysis::parse_compilation_log(*compile_log);
    }

    stage = "initial";
    codegen::InitialOptions io;
    io.stage = {options.templates, clock, std::nullopt};
    io.concurrent_skeletons = concurrent;
    project = codegen::initial_generate(provider, script.initial_prompt, io).project;

    for (std::size_t i = 0; i < script.change_prompts.size(); ++i) {
      stage = "change[" + std::to_string(i) + "]";
      const auto& request = script.change_prompts[i];
      plan::ExecutedStep plan_step;
      const auto plan = plan::plan_request(request, project, provider, {options.templates, clock, 1}, &plan_step);
      plan::ExecuteOptions eo;
      eo.templates = options.templates;
      eo.clock = clock;
      eo.concurrent_skeletons = concurrent;
      eo.plan_step = plan_step;
      eo.request = request;
      project = plan::execute_plan(plan, project, provider, eo).project;
    }

    stage = "codegen";
    codegen::CodegenOptions co;
    co.stage = {options.templates, clock, std::nullopt};
    co.app_name = script.app_name;
    std::vector<plan::ExecutedStep> steps;
    const auto gp = codegen::generate_code(provider, project, co, &steps);
    project.history.insert(project.history.end(), steps.begin(), steps.end());

    stage = "export";
    codegen::export_project(gp, out);
    outcome.export_dir = out / gp.app_name;
    outcome.archive = out / (gp.app_name + ".zip");
    write_text(outcome.archive, codegen::export_archive(gp));
    write_irs(project, out / "ir");

    stage = "check";
    auto report = analysis::summarize(analysis::check_navigation(gp, project.storyboard),
                                      compile_log ? std::optional<std::string_view>(*compile_log) : std::nullopt);
    write_text(out / "report.json", analysis::to_json(report).dump(2) + "\n");
    write_text(out / "metrics.json", metrics_json(gp.metrics, report, compile_log.has_value()).dump(2) + "\n");
    write_log(project.history, out / "session.log.jsonl");

    outcome.metrics = gp.metrics;
    outcome.exit_code = report.navigation_total > 0 ? kNavigationFindings : kOk;
    outcome.report = std::move(report);
  } catch (const Error& e) {
    outcome.failed_stage = stage;
    if (e.detail().is_object() && e.detail().contains("stage") && e.detail()["stage"].is_string()) {
      outcome.failed_stage += "/" + e.detail()["stage"].get<std::string>();
    }
    outcome.error_code = e.code();
    outcome.error_message = e.what();
    const bool bad_input = stage == "input" || e.code() == "empty_request";
    outcome.exit_code = bad_input ? kBadInput : kPipelineFailure;
    if (!bad_input) {
      try {
        write_log(project.history, out / "session.log.jsonl");
      } catch (const Error&) {
      }
    }
  }
  outcome.steps = static_cast<int>(project.history.size());
  return outcome;
}

}  // namespace irforge::cli
