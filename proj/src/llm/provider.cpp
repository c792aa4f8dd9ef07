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

#include "irforge/llm/provider.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <thread>

#include <httplib.h>

#include "irforge/error.hpp"
#include "irforge/json_schema.hpp"

namespace irforge::llm {

namespace sc = irforge::schema;
using nlohmann::json;

ScriptedProvider::ScriptedProvider(std::vector<ScriptedResponse> responses, ProviderConfig config)
    : config_(std::move(config)), responses_(std::move(responses)), consumed_(responses_.size(), false) {
  config_.kind = ProviderKind::Scripted;
  if (responses_.empty()) throw Error("invalid_provider", "scripted provider `" + config_.name + "` has no responses");
}

std::unique_ptr<ScriptedProvider> ScriptedProvider::from_json(const json& script, ProviderConfig config) {
  std::vector<ScriptedResponse> responses;
  const auto& list = sc::get_array(script, "responses", "");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto path = sc::index("responses", i);
    const auto& r = list[i];
    ScriptedResponse out;
    if (const json* t = sc::optional_member(r, "template")) out.template_id = t->get<std::string>();
    if (const json* t = sc::optional_member(r, "target")) out.target = t->get<std::string>();
    if (const json* j = sc::optional_member(r, "json")) {
      out.text = j->dump(2);
    } else {
      out.text = sc::get_string_or(r, "text", path, "");
    }
    if (const json* d = sc::optional_member(r, "delayMs")) out.delay_ms = d->get<int>();
    if (const json* s = sc::optional_member(r, "errorStatus")) out.error_status = s->get<int>();
    if (const json* t = sc::optional_member(r, "timeout")) out.timeout = t->get<bool>();
    responses.push_back(std::move(out));
  }
  return std::make_unique<ScriptedProvider>(std::move(responses), std::move(config));
}

std::unique_ptr<ScriptedProvider> ScriptedProvider::from_file(const std::filesystem::path& path, ProviderConfig config) {
  std::ifstream in(path);
  if (!in) throw Error("invalid_provider", "cannot read provider script " + path.string());
  json script;
  try {
    script = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("invalid_provider", "provider script " + path.string() + ": " + e.what());
  }
  return from_json(script, std::move(config));
}

Completion ScriptedProvider::complete(const CompletionRequest& request) {
  ScriptedResponse picked;
  std::size_t index = 0;
  {
    std::lock_guard lock(mutex_);
    received_.push_back(request);
    // Keyed entries win over wildcards; within a class the earliest unconsumed one.
    bool found = false;
    for (int pass = 0; pass < 2 && !found; ++pass) {
      for (std::size_t i = 0; i < responses_.size(); ++i) {
        if (consumed_[i]) continue;
        const auto& r = responses_[i];
        const bool keyed = r.template_id || r.target;
        if (keyed != (pass == 0)) continue;
        if (r.template_id && *r.template_id != request.template_id) continue;
        if (r.target && *r.target != request.target) continue;
        consumed_[i] = true;
        picked = r;
        index = i;
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error("provider_error",
                  "script exhausted: no response for " + request.template_id +
                      (request.target.empty() ? "" : " (" + request.target + ")"),
                  {{"status", 0}});
    }
  }
  if (picked.delay_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(picked.delay_ms));
  if (picked.timeout) throw Error("timeout", "scripted timeout", {{"status", 0}});
  if (picked.error_status) {
    throw Error("provider_error", "scripted provider error " + std::to_string(*picked.error_status),
                {{"status", *picked.error_status}});
  }
  // Ids come from script position so concurrent calls stay deterministic.
  return {picked.text, "scripted-" + std::to_string(index + 1)};
}

std::size_t ScriptedProvider::remaining() const {
  std::lock_guard lock(mutex_);
  return static_cast<std::size_t>(std::count(consumed_.begin(), consumed_.end(), false));
}

std::vector<CompletionRequest> ScriptedProvider::received() const {
  std::lock_guard lock(mutex_);
  return received_;
}

HttpChatProvider::HttpChatProvider(ProviderConfig config) : config_(std::move(config)) {
  config_.kind = ProviderKind::HttpChat;
  if (config_.endpoint.empty() || config_.auth_ref.empty()) {
    throw Error("invalid_provider", "http provider `" + config_.name + "` requires endpoint and authRef");
  }
  static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.endpoint, m, url)) {
    throw Error("invalid_provider", "endpoint is not an http(s) URL: " + config_.endpoint);
  }
  scheme_host_port_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/v1/chat/completions";
}

json HttpChatProvider::request_body(const CompletionRequest& request) const {
  json messages = json::array();
  for (const auto& m : request.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  return {{"model", config_.model_name}, {"messages", std::move(messages)}, {"max_tokens", config_.limits.max_tokens}};
}

namespace {

std::string redact(std::string text, const std::string& secret) {
  if (secret.empty()) return text;
  for (auto pos = text.find(secret); pos != std::string::npos; pos = text.find(secret, pos)) {
    text.replace(pos, secret.size(), "***");
  }
  return text;
}

}  // namespace

Completion HttpChatProvider::complete(const CompletionRequest& request) {
  const char* key = std::getenv(config_.auth_ref.c_str());
  if (key == nullptr || *key == '\0') {
    throw Error("provider_error", "credential variable " + config_.auth_ref + " is not set", {{"status", 0}});
  }
  const std::string secret = key;

  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(config_.limits.timeout_seconds, 0);
  client.set_read_timeout(config_.limits.timeout_seconds, 0);
  client.set_write_timeout(config_.limits.timeout_seconds, 0);
  const httplib::Headers headers{{"Authorization", "Bearer " + secret}};
  const std::string body = request_body(request).dump();

  std::string last_error;
  int last_status = 0;
  for (int attempt = 0; attempt <= config_.limits.retries; ++attempt) {
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      const auto err = res.error();
      if (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout) {
        last_error = "timeout";
      } else {
        last_error = httplib::to_string(err);
      }
      continue;
    }
    last_status = res->status;
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw Error("provider_error", redact("HTTP " + std::to_string(res->status), secret), {{"status", res->status}});
    }
    try {
      const auto reply = json::parse(res->body);
      const auto& content = reply.at("choices").at(0).at("message").at("content");
      std::string id = reply.value("id", std::string());
      return {content.get<std::string>(), redact(id, secret)};
    } catch (const json::exception& e) {
      throw Error("provider_error", std::string("malformed chat completion: ") + e.what(), {{"status", res->status}});
    }
  }
  if (last_error == "timeout") throw Error("timeout", "provider timed out", {{"status", 0}});
  throw Error("provider_error", redact(last_error, secret), {{"status", last_status}});
}

ProviderRegistry ProviderRegistry::from_json(const json& value, const std::filesystem::path& base_dir) {
  ProviderRegistry registry;
  const auto& list = sc::get_array(value, "providers", "");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto path = sc::index("providers", i);
    const auto& p = list[i];
    ProviderConfig c;
    c.name = sc::get_string(p, "name", path);
    const auto kind = sc::get_string(p, "kind", path);
    if (kind == "http_chat") {
      c.kind = ProviderKind::HttpChat;
    } else if (kind == "scripted") {
      c.kind = ProviderKind::Scripted;
    } else {
      sc::fail(sc::join(path, "kind"), "expected http_chat or scripted");
    }
    c.model_name = sc::get_string_or(p, "model", path, "");
    c.endpoint = sc::get_string_or(p, "endpoint", path, "");
    c.auth_ref = sc::get_string_or(p, "authRef", path, "");
    if (const json* v = sc::optional_member(p, "maxTokens")) c.limits.max_tokens = v->get<int>();
    if (const json* v = sc::optional_member(p, "timeoutSeconds")) c.limits.timeout_seconds = v->get<int>();
    if (const json* v = sc::optional_member(p, "retries")) c.limits.retries = v->get<int>();
    if (const json* v = sc::optional_member(p, "script")) {
      std::filesystem::path script = v->get<std::string>();
      c.script_path = script.is_absolute() ? script : base_dir / script;
    }
    registry.providers.push_back(std::move(c));
  }
  registry.default_name = sc::get_string_or(value, "default", "", "");
  if (registry.default_name.empty() && !registry.providers.empty()) registry.default_name = registry.providers[0].name;
  return registry;
}

ProviderRegistry ProviderRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("invalid_provider", "cannot read provider config " + path.string());
  json value;
  try {
    value = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("invalid_provider", "provider config " + path.string() + ": " + e.what());
  }
  return from_json(value, path.parent_path());
}

const ProviderConfig& ProviderRegistry::get(const std::string& name) const {
  const std::string& wanted = name.empty() ? default_name : name;
  for (const auto& p : providers) {
    if (p.name == wanted) return p;
  }
  throw Error("invalid_provider", "no provider named `" + wanted + "`");
}

std::unique_ptr<Provider> make_provider(const ProviderConfig& config) {
  if (config.kind == ProviderKind::HttpChat) return std::make_unique<HttpChatProvider>(config);
  if (config.script_path.empty()) throw Error("invalid_provider", "scripted provider `" + config.name + "` has no script");
  return ScriptedProvider::from_file(config.script_path, config);
}

}  // namespace irforge::llm
