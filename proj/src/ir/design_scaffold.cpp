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

#include "irforge/ir/design_scaffold.hpp"

#include <cctype>
#include <regex>

#include "irforge/json_schema.hpp"

namespace irforge::ir {
namespace sc = irforge::schema;
using nlohmann::json;

namespace {

TypeStyle read_style(const json& obj, const std::string& key, const std::string& path) {
  const json& s = sc::get_object(obj, key, path);
  const auto p = sc::join(path, key);
  return {sc::get_string_or(s, "weight", p, ""), sc::get_number(s, "size", p)};
}

json style_json(const TypeStyle& s) { return {{"weight", s.weight}, {"size", s.size}}; }

bool is_color_key(const std::string& key) {
  if (key.size() < 5) return false;
  const auto tail = key.substr(key.size() - 5);
  return tail == "color" || tail == "Color";
}

bool is_size_key(const std::string& key) {
  for (const char* k : {"size", "Size", "radius", "Radius"}) {
    if (key.find(k) != std::string::npos) return true;
  }
  return false;
}

void check_components(const json& value, const std::string& path, ValidationReport& report) {
  if (!value.is_object()) return;
  for (const auto& [key, v] : value.items()) {
    const auto p = sc::join(path, key);
    if (v.is_object()) {
      check_components(v, p, report);
    } else if (is_color_key(key) && v.is_string() && !is_hex_color(v.get<std::string>())) {
      report.error("invalid_color", p, "`" + v.get<std::string>() + "` is not a #RRGGBB colour");
    } else if (is_size_key(key) && v.is_number() && v.get<double>() <= 0) {
      report.error("nonpositive_size", p, "size must be positive");
    }
  }
}

}  // namespace

bool is_hex_color(const std::string& text) {
  static const std::regex re("^#[0-9A-Fa-f]{6}$");
  return std::regex_match(text, re);
}

json to_json(const DesignScaffold& s) {
  json out = {
      {"colors",
       {{"primary", s.primary},
        {"secondary", s.secondary},
        {"accent", s.accent},
        {"neutral", {{"dark", s.neutral_dark}, {"medium", s.neutral_medium}, {"light", s.neutral_light}}}}},
      {"typography",
       {{"font", s.font},
        {"h1", style_json(s.h1)},
        {"h2", style_json(s.h2)},
        {"body", style_json(s.body)},
        {"caption", style_json(s.caption)}}},
      {"components", s.components},
      {"icons", {{"style", s.icon_style}, {"sizes", s.icon_sizes}, {"system", s.system_icons}}},
      {"animations", {{"duration", s.animation_duration}, {"easing", s.animation_easing}, {"style", s.animation_style}}},
  };
  return out;
}

DesignScaffold scaffold_from_json(const json& value) {
  const std::string root;
  sc::require_object(value, root);
  const json& body = value.contains("designSystem") ? value.at("designSystem") : value;
  const std::string base = value.contains("designSystem") ? "designSystem" : "";
  sc::require_object(body, base);

  DesignScaffold s;
  const json& colors = sc::get_object(body, "colors", base);
  const auto cp = sc::join(base, "colors");
  s.primary = sc::get_string(colors, "primary", cp);
  s.secondary = sc::get_string(colors, "secondary", cp);
  s.accent = sc::get_string(colors, "accent", cp);
  const json& neutral = sc::get_object(colors, "neutral", cp);
  const auto np = sc::join(cp, "neutral");
  s.neutral_dark = sc::get_string(neutral, "dark", np);
  s.neutral_medium = sc::get_string(neutral, "medium", np);
  s.neutral_light = sc::get_string(neutral, "light", np);

  const json& typo = sc::get_object(body, "typography", base);
  const auto tp = sc::join(base, "typography");
  s.font = sc::get_string_or(typo, "font", tp, "");
  s.h1 = read_style(typo, "h1", tp);
  s.h2 = read_style(typo, "h2", tp);
  s.body = read_style(typo, "body", tp);
  s.caption = read_style(typo, "caption", tp);

  if (const json* c = sc::optional_member(body, "components")) {
    if (!c->is_object()) sc::fail(sc::join(base, "components"), "expected an object");
    s.components = *c;
  }
  if (const json* icons = sc::optional_member(body, "icons")) {
    const auto ip = sc::join(base, "icons");
    sc::require_object(*icons, ip);
    s.icon_style = sc::get_string_or(*icons, "style", ip, "");
    if (const json* sizes = sc::optional_member(*icons, "sizes")) {
      if (!sizes->is_array()) sc::fail(sc::join(ip, "sizes"), "expected an array");
      for (std::size_t i = 0; i < sizes->size(); ++i) {
        if (!(*sizes)[i].is_number()) sc::fail(sc::index(sc::join(ip, "sizes"), i), "expected a number");
        s.icon_sizes.push_back((*sizes)[i].get<double>());
      }
    }
    if (sc::optional_member(*icons, "system")) s.system_icons = sc::get_string_list(*icons, "system", ip);
  }
  if (const json* anim = sc::optional_member(body, "animations")) {
    const auto ap = sc::join(base, "animations");
    sc::require_object(*anim, ap);
    s.animation_duration = sc::get_string_or(*anim, "duration", ap, "");
    s.animation_easing = sc::get_string_or(*anim, "easing", ap, "");
    s.animation_style = sc::get_string_or(*anim, "style", ap, "");
  }
  return s;
}

ValidationReport validate_scaffold(const DesignScaffold& s) {
  ValidationReport report;
  const std::pair<const char*, const std::string*> colors[] = {
      {"colors.primary", &s.primary},           {"colors.secondary", &s.secondary},
      {"colors.accent", &s.accent},             {"colors.neutral.dark", &s.neutral_dark},
      {"colors.neutral.medium", &s.neutral_medium}, {"colors.neutral.light", &s.neutral_light},
  };
  for (const auto& [path, value] : colors) {
    if (!is_hex_color(*value)) report.error("invalid_color", path, "`" + *value + "` is not a #RRGGBB colour");
  }
  const std::pair<const char*, const TypeStyle*> styles[] = {
      {"typography.h1.size", &s.h1}, {"typography.h2.size", &s.h2},
      {"typography.body.size", &s.body}, {"typography.caption.size", &s.caption}};
  for (const auto& [path, style] : styles) {
    if (style->size <= 0) report.error("nonpositive_size", path, "size must be positive");
  }
  for (std::size_t i = 0; i < s.icon_sizes.size(); ++i) {
    if (s.icon_sizes[i] <= 0) report.error("nonpositive_size", "icons.sizes[" + std::to_string(i) + "]", "size must be positive");
  }
  check_components(s.components, "components", report);
  return report;
}

}  // namespace irforge::ir
