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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "irforge/ir/report.hpp"
#include "irforge/llm/prompt.hpp"
#include "irforge/llm/provider.hpp"

namespace irforge::llm {

struct TranscriptEntry {
  std::string call_id;
  std::vector<ChatMessage> request;
  std::string response;
};

nlohmann::json to_json(const TranscriptEntry& entry);

struct JsonCompletion {
  nlohmann::json value;
  std::vector<TranscriptEntry> transcript;
  std::vector<std::string> repairs;
  int attempts = 0;

  // Call id of the accepted attempt.
  std::string call_id() const { return transcript.empty() ? std::string() : transcript.back().call_id; }
};

// Inspects a parsed value; error findings trigger a re-prompt.
using SchemaCheck = std::function<ir::ValidationReport(const nlohmann::json&)>;

struct CompletionOptions {
  std::string target;
  std::optional<int> max_reprompts;  // defaults to the provider's retry limit
  // Optional extra gate: return false to stop re-prompting for this report.
  std::function<bool(const ir::ValidationReport&, int attempt)> allow_reprompt;
};

// Throws Error{provider_error | timeout | schema_error_after_retries}; the last
// carries {"report": ..., "attempts": n} in its detail.
JsonCompletion complete_json(Provider& provider, const RenderedPrompt& prompt, const SchemaCheck& check,
                             const CompletionOptions& options = {});

// Wraps a throwing reader (e.g. ir::storyboard_from_json) and an optional
// semantic validator into a SchemaCheck.
template <class T>
SchemaCheck make_check(std::function<T(const nlohmann::json&)> read,
                       std::function<ir::ValidationReport(const T&)> validate = {});

ir::ValidationReport schema_failure(const std::string& code, const std::string& path, const std::string& message);

}  // namespace irforge::llm

#include "irforge/error.hpp"

namespace irforge::llm {

template <class T>
SchemaCheck make_check(std::function<T(const nlohmann::json&)> read, std::function<ir::ValidationReport(const T&)> validate) {
  return [read = std::move(read), validate = std::move(validate)](const nlohmann::json& value) {
    try {
      T parsed = read(value);
      return validate ? validate(parsed) : ir::ValidationReport{};
    } catch (const Error& e) {
      return schema_failure(e.code(), e.detail().value("path", std::string()), e.what());
    }
  };
}

}  // namespace irforge::llm
