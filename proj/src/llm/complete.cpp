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

#include "irforge/llm/complete.hpp"

#include "irforge/llm/json_extract.hpp"

namespace irforge::llm {

using nlohmann::json;

json to_json(const TranscriptEntry& entry) {
  json request = json::array();
  for (const auto& m : entry.request) request.push_back({{"role", m.role}, {"content", m.content}});
  return {{"callId", entry.call_id}, {"request", std::move(request)}, {"response", entry.response}};
}

ir::ValidationReport schema_failure(const std::string& code, const std::string& path, const std::string& message) {
  ir::ValidationReport report;
  report.error(code, path, message);
  return report;
}

JsonCompletion complete_json(Provider& provider, const RenderedPrompt& prompt, const SchemaCheck& check,
                             const CompletionOptions& options) {
  const int max_reprompts = options.max_reprompts.value_or(provider.config().limits.retries);

  CompletionRequest request;
  request.template_id = std::string(to_string(prompt.id));
  request.target = options.target;
  if (!prompt.system.empty()) request.messages.push_back({"system", prompt.system});
  request.messages.push_back({"user", prompt.text});

  JsonCompletion out;
  ir::ValidationReport report;
  for (int attempt = 0;; ++attempt) {
    const Completion completion = provider.complete(request);
    out.attempts = attempt + 1;
    out.transcript.push_back({completion.call_id, request.messages, completion.text});

    const auto extracted = extract_json(completion.text);
    if (!extracted) {
      report = schema_failure("no_json", "$", "the response contains no parsable JSON value");
    } else {
      json value = json::parse(extracted->json_text);
      report = check ? check(value) : ir::ValidationReport{};
      if (report.ok()) {
        out.value = std::move(value);
        out.repairs = extracted->repairs;
        return out;
      }
    }

    const bool gate_open = !options.allow_reprompt || options.allow_reprompt(report, attempt);
    if (attempt >= max_reprompts || !gate_open) break;
    request.messages.push_back({"assistant", completion.text});
    request.messages.push_back({"user", "Your previous response was not acceptable:\n" + report.to_text() +
                                            "Reply again with only the corrected JSON."});
  }

  json transcript = json::array();
  for (const auto& t : out.transcript) transcript.push_back(to_json(t));
  throw Error("schema_error_after_retries",
              std::string(to_string(expected_schema(prompt.id))) + " output still invalid after " +
                  std::to_string(out.attempts) + " attempt(s)",
              {{"report", ir::to_json(report)}, {"attempts", out.attempts}, {"transcript", std::move(transcript)}});
}

}  // namespace irforge::llm
