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

#include "irforge/analysis/navigation.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <set>
#include <tuple>

#include "irforge/analysis/swift_lexer.hpp"
#include "irforge/error.hpp"

namespace irforge::analysis {

using nlohmann::json;

namespace {

struct CategoryName {
  NavigationCategory category;
  std::string_view id;
  std::string_view label;
};

constexpr std::array<CategoryName, 7> kNames = {{
    {NavigationCategory::MissingNavigationLink, "MissingNavigationLink", "Missing Navigation Link"},
    {NavigationCategory::NavigationComment, "NavigationComment", "Navigation Comment"},
    {NavigationCategory::NavigationClosureEmpty, "NavigationClosureEmpty", "Navigation Closure Empty"},
    {NavigationCategory::MissingNavigationView, "MissingNavigationView", "Missing Navigation View"},
    {NavigationCategory::APIMisuse, "APIMisuse", "API Misuse"},
    {NavigationCategory::NoNavigationLogic, "NoNavigationLogic", "No Navigation Logic"},
    {NavigationCategory::WrongDestinationView, "WrongDestinationView", "Wrong Destination View"},
}};

const std::set<std::string, std::less<>> kContainers = {"NavigationStack", "NavigationView", "NavigationSplitView"};
const std::set<std::string, std::less<>> kModifierConstructs = {"navigationDestination", "sheet", "fullScreenCover",
                                                                "popover"};
constexpr std::array<std::string_view, 16> kNavVerbs = {"navigat", "go to",  "goes to",    "push",     "present", "open",
                                                        "show",    "segue",  "link",       "route",    "transition",
                                                        "redirect", "back to", "return to", "dismiss", "pop"};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string source_line(std::string_view src, int line) {
  std::size_t pos = 0;
  for (int l = 1; l < line && pos != std::string_view::npos; ++l) {
    pos = src.find('\n', pos);
    if (pos != std::string_view::npos) ++pos;
  }
  if (pos == std::string_view::npos || pos >= src.size()) return "";
  return trim(src.substr(pos, src.find('\n', pos) - pos));
}

std::size_t skip_ws(std::string_view code, std::size_t i) {
  while (i < code.size() && std::isspace(static_cast<unsigned char>(code[i]))) ++i;
  return i;
}

char prev_non_ws(std::string_view code, std::size_t i) {
  while (i > 0) {
    --i;
    if (!std::isspace(static_cast<unsigned char>(code[i]))) return code[i];
  }
  return '\0';
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// End of an argument list plus any trailing closures (`{...}` and `label: {...}`).
std::size_t call_end(std::string_view code, std::size_t i) {
  i = skip_ws(code, i);
  if (i < code.size() && code[i] == '(') i = match_bracket(code, i);
  while (true) {
    const auto j = skip_ws(code, i);
    if (j < code.size() && code[j] == '{') {
      i = match_bracket(code, j);
      continue;
    }
    auto k = j;
    while (k < code.size() && is_ident_char(code[k])) ++k;
    if (k > j && k < code.size() && code[k] == ':') {
      const auto open = skip_ws(code, k + 1);
      if (open < code.size() && code[open] == '{') {
        i = match_bracket(code, open);
        continue;
      }
    }
    return i;
  }
}

bool blank_between(std::string_view code, std::size_t open, std::size_t close_end) {
  for (auto i = open + 1; i + 1 < close_end; ++i) {
    if (!std::isspace(static_cast<unsigned char>(code[i]))) return false;
  }
  return true;
}

struct Construct {
  std::string token;
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 0;
  std::vector<std::string> targets;  // storyboard view names inside the window
  bool consumed = false;
};

struct Evidence {
  int line = 0;
  std::string text;
  std::string match;  // lowercased comment text, or the identifier
  bool consumed = false;
};

struct ViewScan {
  std::string source;
  LexedSource lex;
  std::vector<Construct> constructs;
  std::optional<std::pair<std::string, int>> container;
  std::vector<Evidence> nav_comments;
  std::vector<Evidence> empty_closures;
  std::vector<Evidence> bare_mentions;  // identifiers outside construct windows
};

ViewScan scan(const std::string& code, const std::set<std::string, std::less<>>& view_names) {
  ViewScan s{code, lex_swift(code), {}, std::nullopt, {}, {}, {}};
  const std::string_view c = s.lex.code;
  const auto& ids = s.lex.identifiers;

  for (std::size_t n = 0; n < ids.size(); ++n) {
    const auto& id = ids[n];
    const auto after = id.offset + id.name.size();
    const auto next = skip_ws(c, after);
    const char follow = next < c.size() ? c[next] : '\0';
    bool construct = false;
    if (id.name == "NavigationLink") {
      construct = follow == '(' || follow == '{';
    } else if (kModifierConstructs.count(id.name) != 0) {
      construct = prev_non_ws(c, id.offset) == '.' && (follow == '(' || follow == '{');
    } else if (id.name == "append" && follow == '(' && prev_non_ws(c, id.offset) == '.' && n > 0 &&
               lower(ids[n - 1].name).find("path") != std::string::npos) {
      construct = true;
    }
    if (construct) {
      Construct k{id.name, id.offset, call_end(c, after), id.line, {}, false};
      for (auto m = n + 1; m < ids.size() && ids[m].offset < k.end; ++m) {
        if (view_names.count(ids[m].name) != 0) k.targets.push_back(ids[m].name);
      }
      s.constructs.push_back(std::move(k));
    }
    if (!s.container && kContainers.count(id.name) != 0 && (follow == '(' || follow == '{')) {
      s.container = std::make_pair(id.name, id.line);
    }

    // Trigger handlers with empty bodies.
    std::optional<std::size_t> open;
    if (id.name == "action" && follow == ':') {
      const auto o = skip_ws(c, next + 1);
      if (o < c.size() && c[o] == '{') open = o;
    } else if (id.name == "Button" || (id.name == "onTapGesture" && prev_non_ws(c, id.offset) == '.')) {
      auto o = next;
      if (follow == '(') {
        // Button(action: {...}) is handled by the `action` label.
        const auto close = match_bracket(c, o);
        if (c.substr(o, close - o).find("action") != std::string_view::npos) o = c.size();
        else o = skip_ws(c, close);
      }
      if (o < c.size() && c[o] == '{') open = o;
    }
    if (open && blank_between(c, *open, match_bracket(c, *open))) {
      s.empty_closures.push_back({s.lex.line_of(*open), source_line(s.source, s.lex.line_of(*open)), id.name, false});
    }
  }

  for (const auto& id : ids) {
    if (view_names.count(id.name) == 0) continue;
    const bool inside = std::any_of(s.constructs.begin(), s.constructs.end(),
                                    [&](const Construct& k) { return id.offset >= k.begin && id.offset < k.end; });
    if (!inside) s.bare_mentions.push_back({id.line, source_line(s.source, id.line), id.name, false});
  }

  for (const auto& cm : s.lex.comments) {
    const auto text = lower(cm.text);
    if (std::any_of(kNavVerbs.begin(), kNavVerbs.end(), [&](std::string_view v) { return text.find(v) != std::string::npos; })) {
      s.nav_comments.push_back({cm.line, source_line(s.source, cm.line), text, false});
    }
  }
  return s;
}

}  // namespace

std::string_view to_string(NavigationCategory c) {
  for (const auto& n : kNames) {
    if (n.category == c) return n.id;
  }
  return "";
}

std::string_view label(NavigationCategory c) {
  for (const auto& n : kNames) {
    if (n.category == c) return n.label;
  }
  return "";
}

std::optional<NavigationCategory> navigation_category_from_string(std::string_view s) {
  for (const auto& n : kNames) {
    if (n.id == s || n.label == s) return n.category;
  }
  return std::nullopt;
}

json to_json(const NavigationFinding& f) {
  json j{{"category", to_string(f.category)}, {"sourceView", f.source_view}, {"evidence", f.evidence}};
  j["expectedDestination"] = f.expected_destination ? json(*f.expected_destination) : json(nullptr);
  j["line"] = f.line ? json(*f.line) : json(nullptr);
  return j;
}

NavigationFinding finding_from_json(const json& j) {
  NavigationFinding f;
  const auto cat = navigation_category_from_string(j.at("category").get<std::string>());
  if (!cat) throw Error("schema_error", "unknown navigation category", {{"path", "category"}});
  f.category = *cat;
  f.source_view = j.at("sourceView").get<std::string>();
  if (j.contains("expectedDestination") && j["expectedDestination"].is_string()) {
    f.expected_destination = j["expectedDestination"].get<std::string>();
  }
  if (j.contains("line") && j["line"].is_number_integer()) f.line = j["line"].get<int>();
  f.evidence = j.value("evidence", "");
  return f;
}

std::vector<NavigationFinding> check_navigation(const codegen::GeneratedProject& gp, const ir::Storyboard& sb) {
  std::set<std::string, std::less<>> view_names;
  for (const auto& n : sb.nodes) view_names.insert(n.view_name);

  std::vector<NavigationFinding> findings;
  for (const auto& a : sb.nodes) {
    const auto* view = gp.find_view(a.view_name);
    if (view == nullptr) continue;
    auto s = scan(view->view_code, view_names);

    std::vector<const ir::StoryboardNode*> dests;
    std::set<std::string> dest_names;
    for (auto to : a.outgoing_edges) {
      const auto* b = sb.find(to);
      if (b != nullptr && dest_names.insert(b->view_name).second) dests.push_back(b);
    }

    // Satisfied edges first so their constructs are never blamed.
    std::vector<const ir::StoryboardNode*> open;
    for (const auto* b : dests) {
      bool hit = false;
      for (auto& k : s.constructs) {
        if (std::find(k.targets.begin(), k.targets.end(), b->view_name) != k.targets.end()) {
          k.consumed = true;
          hit = true;
        }
      }
      if (!hit) open.push_back(b);
    }

    const bool has_nav_tokens = s.container.has_value() || !s.constructs.empty();
    for (const auto* b : open) {
      NavigationFinding f{NavigationCategory::NoNavigationLogic, a.view_name, b->view_name, std::nullopt, ""};
      const auto view_l = lower(b->view_name);
      const auto screen_l = lower(b->name);

      auto comment = std::find_if(s.nav_comments.begin(), s.nav_comments.end(), [&](const Evidence& e) {
        return !e.consumed && (e.match.find(view_l) != std::string::npos ||
                               (!screen_l.empty() && e.match.find(screen_l) != std::string::npos));
      });
      auto wrong = std::find_if(s.constructs.begin(), s.constructs.end(), [&](const Construct& k) {
        return !k.consumed && !k.targets.empty() &&
               std::none_of(k.targets.begin(), k.targets.end(), [&](const std::string& t) { return dest_names.count(t) != 0; });
      });
      auto mention = std::find_if(s.bare_mentions.begin(), s.bare_mentions.end(),
                                  [&](const Evidence& e) { return !e.consumed && e.match == b->view_name; });
      auto empty = std::find_if(s.empty_closures.begin(), s.empty_closures.end(), [](const Evidence& e) { return !e.consumed; });

      if (comment != s.nav_comments.end()) {
        comment->consumed = true;
        f.category = NavigationCategory::NavigationComment;
        f.line = comment->line;
        f.evidence = comment->text;
      } else if (wrong != s.constructs.end()) {
        wrong->consumed = true;
        f.category = NavigationCategory::WrongDestinationView;
        f.line = wrong->line;
        f.evidence = wrong->token + " -> " + wrong->targets.front();
      } else if (has_nav_tokens && mention != s.bare_mentions.end()) {
        mention->consumed = true;
        f.category = NavigationCategory::APIMisuse;
        f.line = mention->line;
        f.evidence = mention->text;
      } else if (empty != s.empty_closures.end()) {
        empty->consumed = true;
        f.category = NavigationCategory::NavigationClosureEmpty;
        f.line = empty->line;
        f.evidence = empty->text;
      } else if (s.container) {
        f.category = NavigationCategory::MissingNavigationLink;
        f.line = s.container->second;
        f.evidence = s.container->first;
      } else if (!s.constructs.empty()) {
        f.category = NavigationCategory::MissingNavigationView;
        f.line = s.constructs.front().line;
        f.evidence = s.constructs.front().token;
      } else {
        f.evidence = "no navigation code";
      }
      findings.push_back(std::move(f));
    }
  }

  std::stable_sort(findings.begin(), findings.end(), [](const NavigationFinding& x, const NavigationFinding& y) {
    return std::make_tuple(std::cref(x.source_view), x.line.value_or(INT_MAX), x.expected_destination.value_or("")) <
           std::make_tuple(std::cref(y.source_view), y.line.value_or(INT_MAX), y.expected_destination.value_or(""));
  });
  return findings;
}

}  // namespace irforge::analysis
