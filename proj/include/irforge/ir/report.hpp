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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace irforge::ir {

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity);

struct Finding {
  Severity severity = Severity::Error;
  std::string code;
  std::string path;
  std::string message;

  bool operator==(const Finding&) const = default;
};

// Accumulates findings. Malformed IR is reported here, never thrown.
struct ValidationReport {
  std::vector<Finding> findings;

  void error(std::string code, std::string path, std::string message);
  void warning(std::string code, std::string path, std::string message);
  void merge(const ValidationReport& other);

  bool ok() const { return error_count() == 0; }
  std::size_t error_count() const;
  std::size_t warning_count() const;
  bool has(std::string_view code) const;
  std::size_t count(std::string_view code) const;

  // One finding per line, used when re-prompting a model with its mistakes.
  std::string to_text() const;

  bool operator==(const ValidationReport&) const = default;
};

nlohmann::json to_json(const ValidationReport& report);
ValidationReport report_from_json(const nlohmann::json& value);

}  // namespace irforge::ir
