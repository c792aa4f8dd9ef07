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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "irforge/analysis/check.hpp"
#include "irforge/cli/batch.hpp"
#include "irforge/codegen/export.hpp"
#include "irforge/error.hpp"
#include "irforge/ir/serialize.hpp"
#include "irforge/service/manager.hpp"

namespace {

namespace fs = std::filesystem;
using namespace irforge;
using nlohmann::json;

struct ProviderFlags {
  std::string name;
  std::string registry;
};

std::unique_ptr<llm::Provider> resolve_provider(const ProviderFlags& flags, const cli::BatchScript* script) {
  auto from_registry = [&](const std::string& name) {
    if (flags.registry.empty()) throw Error("bad_input", "provider `" + name + "` needs --providers");
    return llm::make_provider(llm::ProviderRegistry::load(flags.registry).get(name));
  };
  if (!flags.name.empty()) {
    if (script != nullptr && script->provider && script->provider->name == flags.name && flags.registry.empty()) {
      return llm::make_provider(*script->provider);
    }
    return from_registry(flags.name);
  }
  if (script != nullptr && script->provider) return llm::make_provider(*script->provider);
  if (script != nullptr && script->provider_name) return from_registry(*script->provider_name);
  if (!flags.registry.empty()) return from_registry("");
  throw Error("bad_input", "no provider: pass --providers (and --provider) or name one in the script");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("bad_input", "cannot read " + path.string(), {{"path", path.string()}});
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string counts_line(const std::map<std::string, int>& counts) {
  std::string out;
  for (const auto& [k, v] : counts) {
    if (v > 0) out += (out.empty() ? "" : ", ") + k + " " + std::to_string(v);
  }
  return out;
}

void print_report(const analysis::ErrorReport& r) {
  std::cout << "navigation findings: " << r.navigation_total;
  if (r.navigation_total > 0) std::cout << " (" << counts_line(r.navigation_counts) << ")";
  std::cout << "\ncompilation errors: " << r.compilation_total;
  if (r.compilation_total > 0) std::cout << " (" << counts_line(r.compilation_counts) << ")";
  std::cout << "\n";
}

int bad_input(const Error& e, bool as_json) {
  if (as_json) {
    std::cout << json{{"exitCode", cli::kBadInput}, {"error", {{"code", e.code()}, {"message", e.what()}}}}.dump() << "\n";
  } else {
    std::cerr << "irforge: " << e.code() << ": " << e.what() << "\n";
  }
  return cli::kBadInput;
}

int cmd_run(const std::string& script_path, std::string out_dir, const ProviderFlags& pf, const std::string& templates_dir,
            const std::string& compile_log, bool as_json, bool wall_clock) {
  cli::BatchScript script;
  std::unique_ptr<llm::Provider> provider;
  auto templates = llm::TemplateLibrary::defaults();
  try {
    script = cli::load_batch_script(script_path);
    provider = resolve_provider(pf, &script);
    if (!templates_dir.empty()) templates.load_overrides(templates_dir);
  } catch (const Error& e) {
    return bad_input(e, as_json);
  }
  cli::RunOptions options;
  options.out_dir = !out_dir.empty() ? fs::path(out_dir) : script.out_dir ? *script.out_dir : fs::path("irforge-out");
  options.templates = &templates;
  options.wall_clock = wall_clock;
  if (!compile_log.empty()) options.compile_log = compile_log;

  const auto outcome = cli::run_batch(script, *provider, options);
  if (as_json) {
    std::cout << outcome.to_json().dump() << "\n";
    return outcome.exit_code;
  }
  if (!outcome.failed_stage.empty()) {
    std::cerr << "irforge: stage " << outcome.failed_stage << " failed: " << outcome.error_code << ": "
              << outcome.error_message << "\n";
    return outcome.exit_code;
  }
  std::cout << "views: " << outcome.metrics->view_count << "\nlines of code: " << outcome.metrics->lines_of_code << "\n";
  print_report(*outcome.report);
  std::cout << "export: " << outcome.export_dir.string() << "\narchive: " << outcome.archive.string() << "\n";
  return outcome.exit_code;
}

int cmd_check(const std::string& project_dir, const std::string& storyboard_path, const std::string& compile_log,
              const std::string& report_out, bool as_json) {
  analysis::ErrorReport report;
  try {
    const auto sb = ir::parse_storyboard(read_text(storyboard_path));
    std::optional<fs::path> log;
    if (!compile_log.empty()) log = compile_log;
    report = analysis::check_export(project_dir, sb, log);
  } catch (const Error& e) {
    return bad_input(e, as_json);
  }
  const auto body = analysis::to_json(report);
  if (!report_out.empty()) std::ofstream(report_out, std::ios::binary | std::ios::trunc) << body.dump(2) << "\n";
  if (as_json) {
    std::cout << body.dump() << "\n";
  } else {
    print_report(report);
    for (const auto& f : report.navigation) {
      std::cout << "  " << f.source_view;
      if (f.line) std::cout << ":" << *f.line;
      std::cout << "  " << analysis::label(f.category);
      if (f.expected_destination) std::cout << " -> " << *f.expected_destination;
      std::cout << "  " << f.evidence << "\n";
    }
  }
  return report.navigation_total > 0 ? cli::kNavigationFindings : cli::kOk;
}

int cmd_export(const std::string& data_dir, const std::string& session, const std::string& out_dir, bool as_json) {
  try {
    const auto s = service::SessionStore(data_dir).load(session);
    if (!s.generated) throw Error("not_generated", "session " + session + " has no generated code");
    codegen::export_project(*s.generated, out_dir);
    const auto archive = fs::path(out_dir) / (s.generated->app_name + ".zip");
    std::ofstream(archive, std::ios::binary | std::ios::trunc) << codegen::export_archive(*s.generated);
    const auto dir = fs::path(out_dir) / s.generated->app_name;
    if (as_json) {
      std::cout << json{{"exitCode", 0}, {"exportDir", dir.string()}, {"archive", archive.string()}}.dump() << "\n";
    } else {
      std::cout << "export: " << dir.string() << "\narchive: " << archive.string() << "\n";
    }
    return cli::kOk;
  } catch (const Error& e) {
    return bad_input(e, as_json);
  }
}

void print_diff(const json& diff) {
  for (const char* part : {"nodes", "entities", "skeletons"}) {
    for (const char* kind : {"added", "removed", "modified"}) {
      for (const auto& name : diff.at(part).at(kind)) std::cout << "  " << kind << " " << part << ": " << name.get<std::string>() << "\n";
    }
  }
}

int cmd_chat(const std::string& data_dir, std::string session, const ProviderFlags& pf, const std::string& templates_dir) {
  std::shared_ptr<llm::Provider> provider;
  auto templates = llm::TemplateLibrary::defaults();
  try {
    provider = resolve_provider(pf, nullptr);
    if (!templates_dir.empty()) templates.load_overrides(templates_dir);
  } catch (const Error& e) {
    return bad_input(e, false);
  }
  service::ServiceOptions options;
  options.templates = &templates;
  service::SessionManager manager(data_dir, provider, options);
  try {
    if (session.empty()) session = manager.create_session().id;
    manager.get(session);
  } catch (const Error& e) {
    return bad_input(e, false);
  }
  std::cout << "session " << session << "\n"
            << "commands: /ir <storyboard|datamodel|skeletons/View>, /generate [AppName], /export <dir>, /check, /quit\n";
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    if (line.empty()) continue;
    try {
      if (line == "/quit") break;
      if (line.rfind("/ir ", 0) == 0) {
        std::cout << ir::canonical_text(manager.get_ir(session, line.substr(4))) << "\n";
      } else if (line.rfind("/generate", 0) == 0) {
        std::optional<std::string> app;
        if (line.size() > 10) app = line.substr(10);
        const auto out = manager.generate(session, app);
        std::cout << out.at("appName").get<std::string>() << ": " << out.at("metrics").at("viewCount") << " views, "
                  << out.at("metrics").at("linesOfCode") << " lines\n";
      } else if (line.rfind("/export ", 0) == 0) {
        const auto s = manager.get(session);
        if (!s->generated) throw Error("not_generated", "run /generate first");
        codegen::export_project(*s->generated, line.substr(8));
        std::cout << "exported to " << (fs::path(line.substr(8)) / s->generated->app_name).string() << "\n";
      } else if (line == "/check") {
        print_report(manager.check(session));
      } else if (line[0] == '/') {
        std::cout << "unknown command " << line << "\n";
      } else {
        const auto out = manager.post_message(session, line);
        std::cout << out.at("reply").get<std::string>() << "\n";
        print_diff(out.at("diff"));
      }
    } catch (const Error& e) {
      std::cout << "error: " << e.code() << ": " << e.what() << "\n";
    }
  }
  return cli::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"irforge: prompt to storyboard, data model, GUI skeletons and SwiftUI code"};
  app.require_subcommand(1);
  bool as_json = false;
  ProviderFlags pf;
  std::string templates_dir;

  auto* run = app.add_subcommand("run", "run a batch script end to end");
  std::string script_path;
  std::string out_dir;
  std::string compile_log;
  bool wall_clock = false;
  run->add_option("--script", script_path, "batch script JSON")->required();
  run->add_option("--out", out_dir, "output directory (default: the script's outDir, else ./irforge-out)");
  run->add_option("--provider", pf.name, "provider name");
  run->add_option("--providers", pf.registry, "provider registry JSON");
  run->add_option("--templates", templates_dir, "prompt template override directory");
  run->add_option("--compile-log", compile_log, "compiler output to classify into the report");
  run->add_flag("--json", as_json, "machine-readable summary on stdout");
  run->add_flag("--wall-clock", wall_clock, "real timestamps and concurrent skeleton calls");

  auto* check = app.add_subcommand("check", "check an exported project against its storyboard");
  std::string project_dir;
  std::string storyboard_path;
  std::string report_out;
  check->add_option("project_dir", project_dir, "exported app directory")->required();
  check->add_option("storyboard", storyboard_path, "storyboard JSON")->required();
  check->add_option("--compile-log", compile_log, "compiler output to classify");
  check->add_option("--out", report_out, "write report.json here");
  check->add_flag("--json", as_json, "print the report as JSON");

  auto* exp = app.add_subcommand("export", "export a generated session from a data directory");
  std::string data_dir = "irforge-data";
  std::string session;
  exp->add_option("--data-dir", data_dir, "session directory root")->capture_default_str();
  exp->add_option("--session", session, "session id")->required();
  exp->add_option("--out", out_dir, "output directory")->required();
  exp->add_flag("--json", as_json, "machine-readable summary on stdout");

  auto* chat = app.add_subcommand("chat", "interactive session on stdin/stdout");
  chat->add_option("--data-dir", data_dir, "session directory root")->capture_default_str();
  chat->add_option("--session", session, "resume this session instead of creating one");
  chat->add_option("--provider", pf.name, "provider name");
  chat->add_option("--providers", pf.registry, "provider registry JSON");
  chat->add_option("--templates", templates_dir, "prompt template override directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kBadInput;
  }
  if (*run) return cmd_run(script_path, out_dir, pf, templates_dir, compile_log, as_json, wall_clock);
  if (*check) return cmd_check(project_dir, storyboard_path, compile_log, report_out, as_json);
  if (*exp) return cmd_export(data_dir, session, out_dir, as_json);
  return cmd_chat(data_dir, session, pf, templates_dir);
}
