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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irforge::llm {

struct Extraction {
  std::string json_text;
  std::vector<std::string> repairs;  // e.g. "stripped code fence", "removed 1 trailing comma"
};

// Finds the first top-level JSON value in a model completion. Tolerates code
// fences, surrounding prose and trailing commas; nothing else is repaired.
std::optional<Extraction> extract_json(std::string_view raw);

// Drops commas that directly precede `}` or `]`, ignoring string contents.
std::string remove_trailing_commas(std::string_view json_text, int* removed = nullptr);

}  // namespace irforge::llm
