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

#include "irforge/llm/json_extract.hpp"

#include <cctype>

#include <json.hpp>

namespace irforge::llm {

namespace {

constexpr int kMaxStarts = 16;

// End (exclusive) of the balanced value starting at `begin`, or npos.
std::size_t balanced_end(std::string_view text, std::size_t begin) {
  std::string closers;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = begin; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_string = true;
        break;
      case '{':
        closers.push_back('}');
        break;
      case '[':
        closers.push_back(']');
        break;
      case '}':
      case ']':
        if (closers.empty() || closers.back() != c) return std::string_view::npos;
        closers.pop_back();
        if (closers.empty()) return i + 1;
        break;
      default:
        break;
    }
  }
  return std::string_view::npos;
}

std::vector<std::string_view> fenced_blocks(std::string_view raw) {
  std::vector<std::string_view> blocks;
  std::size_t pos = 0;
  while ((pos = raw.find("```", pos)) != std::string_view::npos) {
    const auto line_end = raw.find('\n', pos);
    if (line_end == std::string_view::npos) break;
    const auto close = raw.find("```", line_end);
    if (close == std::string_view::npos) break;
    blocks.push_back(raw.substr(line_end + 1, close - line_end - 1));
    pos = close + 3;
  }
  return blocks;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<Extraction> extract_from(std::string_view region) {
  int starts = 0;
  for (std::size_t p = 0; p < region.size() && starts < kMaxStarts; ++p) {
    if (region[p] != '{' && region[p] != '[') continue;
    ++starts;
    const auto end = balanced_end(region, p);
    if (end == std::string_view::npos) continue;
    Extraction out;
    int removed = 0;
    out.json_text = remove_trailing_commas(region.substr(p, end - p), &removed);
    if (!nlohmann::json::accept(out.json_text)) continue;
    if (removed > 0) out.repairs.push_back("removed " + std::to_string(removed) + " trailing comma(s)");
    if (trim(region) != region.substr(p, end - p)) out.repairs.push_back("removed surrounding text");
    return out;
  }
  return std::nullopt;
}

}  // namespace

std::string remove_trailing_commas(std::string_view json_text, int* removed) {
  std::string out;
  out.reserve(json_text.size());
  bool in_string = false;
  bool escaped = false;
  int count = 0;
  for (std::size_t i = 0; i < json_text.size(); ++i) {
    const char c = json_text[i];
    if (in_string) {
      out.push_back(c);
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') in_string = true;
    if (c == ',') {
      std::size_t j = i + 1;
      while (j < json_text.size() && std::isspace(static_cast<unsigned char>(json_text[j]))) ++j;
      if (j < json_text.size() && (json_text[j] == '}' || json_text[j] == ']')) {
        ++count;
        continue;
      }
    }
    out.push_back(c);
  }
  if (removed != nullptr) *removed = count;
  return out;
}

std::optional<Extraction> extract_json(std::string_view raw) {
  for (auto block : fenced_blocks(raw)) {
    if (auto found = extract_from(block)) {
      found->repairs.insert(found->repairs.begin(), "stripped code fence");
      return found;
    }
  }
  return extract_from(raw);
}

}  // namespace irforge::llm
