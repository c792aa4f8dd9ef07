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
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace irforge::llm {

enum class ProviderKind { HttpChat, Scripted };

struct ProviderLimits {
  int max_tokens = 8192;
  int timeout_seconds = 180;
  int retries = 2;  // schema re-prompts per call, and transport retries for http
};

struct ProviderConfig {
  std::string name = "default";
  ProviderKind kind = ProviderKind::Scripted;
  std::string model_name;
  std::string endpoint;  // http_chat: full URL of the chat-completions route
  std::string auth_ref;  // http_chat: name of the environment variable holding the key
  ProviderLimits limits;
  std::filesystem::path script_path;  // scripted: response script file
};

struct ChatMessage {
  std::string role;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct CompletionRequest {
  std::vector<ChatMessage> messages;
  std::string template_id;  // routing hint for scripted providers
  std::string target;       // e.g. the view a skeleton call is for
};

struct Completion {
  std::string text;
  std::string call_id;
};

// Stateless request executor; implementations must be safe for concurrent calls.
class Provider {
 public:
  virtual ~Provider() = default;
  // Throws Error{provider_error | timeout}.
  virtual Completion complete(const CompletionRequest& request) = 0;
  virtual const ProviderConfig& config() const = 0;
};

struct ScriptedResponse {
  std::optional<std::string> template_id;
  std::optional<std::string> target;
  std::string text;
  int delay_ms = 0;
  std::optional<int> error_status;
  bool timeout = false;
};

// Replays fixture responses. A response matches a request when its optional
// template/target keys equal the request's; among matches the earliest wins,
// so unkeyed scripts are consumed strictly FIFO.
class ScriptedProvider final : public Provider {
 public:
  explicit ScriptedProvider(std::vector<ScriptedResponse> responses, ProviderConfig config = {});

  // {"responses": [{"template"?, "target"?, "text" | "json", "delayMs"?, "errorStatus"?, "timeout"?}]}
  static std::unique_ptr<ScriptedProvider> from_json(const nlohmann::json& script, ProviderConfig config = {});
  static std::unique_ptr<ScriptedProvider> from_file(const std::filesystem::path& path, ProviderConfig config = {});

  Completion complete(const CompletionRequest& request) override;
  const ProviderConfig& config() const override { return config_; }

  std::size_t remaining() const;
  std::vector<CompletionRequest> received() const;

 private:
  ProviderConfig config_;
  mutable std::mutex mutex_;
  std::vector<ScriptedResponse> responses_;
  std::vector<bool> consumed_;
  std::vector<CompletionRequest> received_;
};

// OpenAI-style chat-completions client.
class HttpChatProvider final : public Provider {
 public:
  explicit HttpChatProvider(ProviderConfig config);

  Completion complete(const CompletionRequest& request) override;
  const ProviderConfig& config() const override { return config_; }

  // Request body for the wire; exposed for tests.
  nlohmann::json request_body(const CompletionRequest& request) const;

 private:
  ProviderConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

// providers.json:
// {"default": "name", "providers": [{"name", "kind": "http_chat"|"scripted", "model",
//   "endpoint", "authRef", "maxTokens", "timeoutSeconds", "retries", "script"}]}
struct ProviderRegistry {
  std::vector<ProviderConfig> providers;
  std::string default_name;

  static ProviderRegistry load(const std::filesystem::path& path);
  static ProviderRegistry from_json(const nlohmann::json& value, const std::filesystem::path& base_dir);
  // Empty name selects the default.
  const ProviderConfig& get(const std::string& name = {}) const;
};

std::unique_ptr<Provider> make_provider(const ProviderConfig& config);

}  // namespace irforge::llm
