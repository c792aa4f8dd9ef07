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

#include "irforge/ir/report.hpp"

#include <algorithm>
#include <sstream>

namespace irforge::ir {

std::string_view to_string(Severity severity) { return severity == Severity::Error ? "error" : "warning"; }

void ValidationReport::error(std::string code, std::string path, std::string message) {
  findings.push_back({Severity::Error, std::move(code), std::move(path), std::move(message)});
}

void ValidationReport::warning(std::string code, std::string path, std::string message) {
  findings.push_back({Severity::Warning, std::move(code), std::move(path), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other) {
  findings.insert(findings.end(), other.findings.begin(), other.findings.end());
}

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::Error; }));
}

std::size_t ValidationReport::warning_count() const { return findings.size() - error_count(); }

bool ValidationReport::has(std::string_view code) const { return count(code) > 0; }

std::size_t ValidationReport::count(std::string_view code) const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [&](const Finding& f) { return f.code == code; }));
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const auto& f : findings) {
    out << "- " << to_string(f.severity) << " " << f.code;
    if (!f.path.empty()) out << " at " << f.path;
    out << ": " << f.message << "\n";
  }
  return out.str();
}

nlohmann::json to_json(const ValidationReport& report) {
  auto findings = nlohmann::json::array();
  for (const auto& f : report.findings) {
    findings.push_back({{"severity", to_string(f.severity)}, {"code", f.code}, {"path", f.path}, {"message", f.message}});
  }
  return {{"findings", findings}, {"errors", report.error_count()}, {"warnings", report.warning_count()}};
}

ValidationReport report_from_json(const nlohmann::json& value) {
  ValidationReport report;
  for (const auto& f : value.at("findings")) {
    report.findings.push_back({f.at("severity").get<std::string>() == "error" ? Severity::Error : Severity::Warning,
                               f.at("code").get<std::string>(), f.value("path", ""), f.value("message", "")});
  }
  return report;
}

}  // namespace irforge::ir
