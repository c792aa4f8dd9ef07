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

#include "irforge/analysis/report.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "irforge/error.hpp"

namespace irforge::analysis {

using nlohmann::json;

namespace {

struct Rule {
  std::string_view category;
  std::regex pattern;
};

// First match wins; more specific phrasings come before broad ones.
const std::vector<Rule>& rules() {
  static const std::vector<Rule> r = [] {
    const auto icase = std::regex::ECMAScript | std::regex::icase;
    return std::vector<Rule>{
        {"Missing Import", std::regex(R"(no such module|add ['"]?import|missing import|imported in|module '[^']+' has no)", icase)},
        {"Access Control Violations",
         std::regex(R"(inaccessible due to|protection level|is private|is fileprivate|cannot override .* outside)", icase)},
        {"Generic Inference Failure",
         std::regex(R"(generic parameter .* could not be inferred|could not infer|unable to infer|ambiguous use of)", icase)},
        {"Malformed Member Access",
         std::regex(R"(contextual base|cannot be resolved without a contextual type|key path|expected member name|instance member .* cannot be used on type|static member .* cannot be used on instance)",
                    icase)},
        {"Invalid Property Access", std::regex(R"(has no member|has no dynamic member|value of optional type)", icase)},
        {"Missing Required Parameter", std::regex(R"(missing arguments? for parameters?)", icase)},
        {"Invalid Parameter Usage",
         std::regex(R"(extra arguments?|incorrect argument labels?|argument passed to call that takes no arguments|unlabeled|argument .* must precede)",
                    icase)},
        {"Invalid Argument Type", std::regex(R"(cannot convert value of type|cannot pass|argument type)", icase)},
        {"Immutability Violation",
         std::regex(R"(cannot assign to|is a 'let' constant|immutable|mutating member|cannot use mutating)", icase)},
        {"Protocol Conformance Error",
         std::regex(R"(does not conform to|conformance|protocol requires|must conform)", icase)},
        {"Type Usage Violation",
         std::regex(R"(cannot be used as a type|is not a type|used as a type|cannot be constructed|must be used as a generic constraint|'some' type)",
                    icase)},
        {"Undeclared Identifier", std::regex(R"(cannot find .* in scope|unresolved identifier|undeclared)", icase)},
    };
  }();
  return r;
}

int to_int(const std::string& s) { return std::stoi(s); }

}  // namespace

std::string classify_diagnostic(std::string_view message) {
  const std::string msg(message);
  for (const auto& r : rules()) {
    if (std::regex_search(msg, r.pattern)) return std::string(r.category);
  }
  return std::string(kUnclassified);
}

std::vector<Diagnostic> parse_compilation_log(std::string_view log) {
  static const std::regex located(R"(^(.+?):(\d+)(?::(\d+))?$)");
  std::vector<Diagnostic> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= log.size()) {
    auto end = log.find('\n', pos);
    if (end == std::string_view::npos) end = log.size();
    std::string line(log.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    if (line.rfind("error:", 0) == 0) {
      Diagnostic d;
      d.message = line.substr(6);
      d.message.erase(0, d.message.find_first_not_of(' '));
      d.category = classify_diagnostic(d.message);
      out.push_back(std::move(d));
      continue;
    }
    const auto mark = line.find(": error:");
    if (mark == std::string::npos) continue;
    std::smatch m;
    const std::string where = line.substr(0, mark);
    if (!std::regex_match(where, m, located)) {
      throw Error("log_parse_error", "unreadable diagnostic location on line " + std::to_string(line_no),
                  {{"line_no", line_no}, {"line", line}});
    }
    Diagnostic d;
    d.file = m[1];
    d.line = to_int(m[2]);
    if (m[3].matched) d.column = to_int(m[3]);
    d.message = line.substr(mark + 8);
    d.message.erase(0, d.message.find_first_not_of(' '));
    d.category = classify_diagnostic(d.message);
    out.push_back(std::move(d));
  }
  return out;
}

ErrorReport summarize(std::vector<NavigationFinding> findings, std::optional<std::string_view> compilation_log) {
  ErrorReport r;
  for (auto c : kNavigationCategories) r.navigation_counts[std::string(to_string(c))] = 0;
  for (auto c : kCompilationCategories) r.compilation_counts[std::string(c)] = 0;
  r.compilation_counts[std::string(kUnclassified)] = 0;

  for (const auto& f : findings) ++r.navigation_counts[std::string(to_string(f.category))];
  r.navigation = std::move(findings);
  r.navigation_total = static_cast<int>(r.navigation.size());

  if (compilation_log) {
    r.diagnostics = parse_compilation_log(*compilation_log);
    for (const auto& d : r.diagnostics) ++r.compilation_counts[d.category];
  }
  r.compilation_total = static_cast<int>(r.diagnostics.size());
  return r;
}

json to_json(const ErrorReport& r) {
  json nav = json::array();
  for (const auto& f : r.navigation) nav.push_back(to_json(f));
  json diags = json::array();
  for (const auto& d : r.diagnostics) {
    json j{{"file", d.file}, {"message", d.message}, {"category", d.category}};
    j["line"] = d.line ? json(*d.line) : json(nullptr);
    j["column"] = d.column ? json(*d.column) : json(nullptr);
    diags.push_back(std::move(j));
  }
  return {
      {"navigation", {{"findings", nav}, {"counts", r.navigation_counts}, {"total", r.navigation_total}}},
      {"compilation", {{"diagnostics", diags}, {"counts", r.compilation_counts}, {"total", r.compilation_total}}},
      {"totals", {{"navigation", r.navigation_total}, {"compilation", r.compilation_total}}},
  };
}

ErrorReport report_from_json(const json& j) {
  ErrorReport r;
  const auto& nav = j.at("navigation");
  for (const auto& f : nav.at("findings")) r.navigation.push_back(finding_from_json(f));
  r.navigation_counts = nav.at("counts").get<std::map<std::string, int>>();
  r.navigation_total = nav.at("total").get<int>();
  const auto& comp = j.at("compilation");
  for (const auto& d : comp.value("diagnostics", json::array())) {
    Diagnostic x;
    x.file = d.value("file", "");
    x.message = d.value("message", "");
    x.category = d.value("category", std::string(kUnclassified));
    if (d.contains("line") && d["line"].is_number_integer()) x.line = d["line"].get<int>();
    if (d.contains("column") && d["column"].is_number_integer()) x.column = d["column"].get<int>();
    r.diagnostics.push_back(std::move(x));
  }
  r.compilation_counts = comp.at("counts").get<std::map<std::string, int>>();
  r.compilation_total = comp.at("total").get<int>();
  return r;
}

}  // namespace irforge::analysis
