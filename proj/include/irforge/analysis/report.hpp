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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irforge/analysis/navigation.hpp"
#include <json.hpp>

namespace irforge::analysis {

inline constexpr std::string_view kUnclassified = "Unclassified";

// Compilation error categories, in table order.
inline constexpr std::array<std::string_view, 12> kCompilationCategories = {
    "Missing Required Parameter", "Invalid Property Access",   "Invalid Argument Type",
    "Immutability Violation",     "Protocol Conformance Error", "Missing Import",
    "Malformed Member Access",    "Access Control Violations", "Undeclared Identifier",
    "Type Usage Violation",       "Generic Inference Failure", "Invalid Parameter Usage",
};

struct Diagnostic {
  std::string file;
  std::optional<int> line;
  std::optional<int> column;
  std::string message;
  std::string category;
};

struct ErrorReport {
  std::vector<NavigationFinding> navigation;
  std::map<std::string, int> navigation_counts;   // every category present, zero or not
  std::map<std::string, int> compilation_counts;  // 12 categories plus Unclassified
  std::vector<Diagnostic> diagnostics;
  int navigation_total = 0;
  int compilation_total = 0;
};

// Category for one compiler error message; kUnclassified when no rule fits.
std::string classify_diagnostic(std::string_view message);

// Error lines from a compiler log. Recognised shapes:
//   path:line:col: error: message
//   path:line: error: message
//   error: message
// Warnings, notes and code echoes are skipped. A line carrying ": error:" with
// an unreadable location throws Error{log_parse_error} with {line_no}.
std::vector<Diagnostic> parse_compilation_log(std::string_view log);

ErrorReport summarize(std::vector<NavigationFinding> findings, std::optional<std::string_view> compilation_log = std::nullopt);

nlohmann::json to_json(const ErrorReport& r);
ErrorReport report_from_json(const nlohmann::json& j);

}  // namespace irforge::analysis
