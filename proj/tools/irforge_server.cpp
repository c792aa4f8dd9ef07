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

#include <atomic>
#include <csignal>
#include <iostream>
#include <thread>

#include "irforge/error.hpp"
#include "irforge/llm/provider.hpp"
#include "irforge/service/http.hpp"
#include "irforge/service/manager.hpp"

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

}  // namespace

int main(int argc, char** argv) {
  using namespace irforge;
  CLI::App app{"irforge session service"};
  std::string listen = "127.0.0.1:8080";
  std::string data_dir = "irforge-data";
  std::string providers_path;
  std::string provider_name;
  std::string script_path;
  std::string templates_dir;
  bool sequential = false;
  app.add_option("--listen", listen, "host:port; port 0 picks a free one")->capture_default_str();
  app.add_option("--data-dir", data_dir, "session directory root")->capture_default_str();
  app.add_option("--providers", providers_path, "provider registry JSON");
  app.add_option("--provider", provider_name, "provider name in the registry (default entry if omitted)");
  app.add_option("--script", script_path, "serve a scripted provider from this response script");
  app.add_option("--templates", templates_dir, "directory of prompt template overrides");
  app.add_flag("--sequential-skeletons", sequential, "generate skeletons one at a time");
  CLI11_PARSE(app, argc, argv);

  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "--listen must be host:port\n";
    return 3;
  }
  const auto host = listen.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(listen.substr(colon + 1));
  } catch (const std::exception&) {
    std::cerr << "--listen must be host:port\n";
    return 3;
  }

  try {
    std::shared_ptr<llm::Provider> provider;
    if (!script_path.empty()) {
      provider = llm::ScriptedProvider::from_file(script_path);
    } else if (!providers_path.empty()) {
      provider = llm::make_provider(llm::ProviderRegistry::load(providers_path).get(provider_name));
    } else {
      std::cerr << "one of --providers or --script is required\n";
      return 3;
    }
    auto templates = llm::TemplateLibrary::defaults();
    if (!templates_dir.empty()) templates.load_overrides(templates_dir);

    service::ServiceOptions options;
    options.templates = &templates;
    options.concurrent_skeletons = !sequential;
    service::SessionManager manager(data_dir, provider, options);
    service::HttpService http(manager);
    const int bound = http.bind(host, port);
    if (bound < 0) {
      std::cerr << "cannot listen on " << listen << "\n";
      return 1;
    }
    std::cout << "listening on http://" << host << ":" << bound << std::endl;

    std::signal(SIGTERM, on_signal);
    std::signal(SIGINT, on_signal);
    std::thread watcher([&] {
      while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
      http.stop();
    });
    http.serve();
    g_stop = true;
    watcher.join();
    return 0;
  } catch (const Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return 3;
  }
}
