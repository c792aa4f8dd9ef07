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

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace irforge {

// Every failure surfaced by the library carries a stable machine-readable
// code (e.g. "unknown_node", "schema_error") plus optional structured detail.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(message), code_(std::move(code)), detail_(std::move(detail)) {}

  const std::string& code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  std::string code_;
  nlohmann::json detail_;
};

}  // namespace irforge
