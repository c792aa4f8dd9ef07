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

namespace irforge::analysis {

struct Comment {
  int line = 0;  // 1-based line where the comment starts
  std::string text;
};

struct Identifier {
  std::string name;
  std::size_t offset = 0;
  int line = 0;
};

// Swift source split into code and comments. `code` has comments and string
// literal contents replaced by spaces, newlines kept, so offsets and lines
// still line up with the original text.
struct LexedSource {
  std::string code;
  std::vector<Comment> comments;
  std::vector<Identifier> identifiers;  // in code only, source order

  int line_of(std::size_t offset) const;
};

LexedSource lex_swift(std::string_view source);

// Index one past the bracket matching the opener at `open` in lexed code, or
// code.size() when unbalanced.
std::size_t match_bracket(std::string_view code, std::size_t open);

}  // namespace irforge::analysis
