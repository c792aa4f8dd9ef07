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

#include <filesystem>
#include <optional>
#include <string>

#include "irforge/analysis/report.hpp"
#include "irforge/codegen/generated_project.hpp"
#include "irforge/ir/storyboard.hpp"

namespace irforge::analysis {

// Views of an exported project. `dir` may be the export root, an app
// directory, or its Sources directory; the first Sources/Views found (in path
// order) is used. File stems are view names; ids come from the storyboard.
// Throws Error{io_error} when no Views directory exists.
codegen::GeneratedProject load_exported_views(const std::filesystem::path& dir, const ir::Storyboard& sb);

// check_navigation over an export plus an optional compiler log file.
// Throws Error{io_error | log_parse_error}.
ErrorReport check_export(const std::filesystem::path& dir, const ir::Storyboard& sb,
                         const std::optional<std::filesystem::path>& compile_log = std::nullopt);

}  // namespace irforge::analysis
