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

#include "irforge/analysis/swift_lexer.hpp"

#include <algorithm>
#include <cctype>

namespace irforge::analysis {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

int LexedSource::line_of(std::size_t offset) const {
  offset = std::min(offset, code.size());
  return 1 + static_cast<int>(std::count(code.begin(), code.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

LexedSource lex_swift(std::string_view src) {
  LexedSource out;
  out.code.assign(src.begin(), src.end());
  int line = 1;
  auto blank = [&](std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to && k < out.code.size(); ++k) {
      if (out.code[k] != '\n') out.code[k] = ' ';
    }
  };
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (src.compare(i, 2, "//") == 0) {
      const auto end = std::min(src.find('\n', i), src.size());
      out.comments.push_back({line, std::string(src.substr(i + 2, end - i - 2))});
      blank(i, end);
      i = end;
    } else if (src.compare(i, 2, "/*") == 0) {
      // Swift block comments nest.
      int depth = 0;
      std::size_t j = i;
      const int start_line = line;
      while (j < src.size()) {
        if (src.compare(j, 2, "/*") == 0) {
          ++depth;
          j += 2;
        } else if (src.compare(j, 2, "*/") == 0) {
          j += 2;
          if (--depth == 0) break;
        } else {
          if (src[j] == '\n') ++line;
          ++j;
        }
      }
      const auto len = std::min(j, src.size()) - i;
      out.comments.push_back({start_line, std::string(src.substr(i + 2, len >= 4 ? len - 4 : 0))});
      blank(i, i + len);
      i += len;
    } else if (src.compare(i, 3, "\"\"\"") == 0) {
      auto end = src.find("\"\"\"", i + 3);
      end = end == std::string_view::npos ? src.size() : end + 3;
      line += static_cast<int>(std::count(src.begin() + static_cast<std::ptrdiff_t>(i), src.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
      blank(i + 3, end >= 3 ? end - 3 : end);
      i = end;
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') j += src[j] == '\\' ? 2 : 1;
      blank(i + 1, j);
      i = std::min(j + 1, src.size());
    } else if (ident_start(c) && (i == 0 || !ident_char(src[i - 1]))) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.identifiers.push_back({std::string(src.substr(i, j - i)), i, line});
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

std::size_t match_bracket(std::string_view code, std::size_t open) {
  const char o = code[open];
  const char c = o == '(' ? ')' : o == '{' ? '}' : ']';
  int depth = 0;
  for (std::size_t i = open; i < code.size(); ++i) {
    if (code[i] == o) ++depth;
    if (code[i] == c && --depth == 0) return i + 1;
  }
  return code.size();
}

}  // namespace irforge::analysis
