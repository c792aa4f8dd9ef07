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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "irforge/codegen/generated_project.hpp"

namespace irforge::codegen {

inline constexpr const char* kManifestName = "irforge.manifest.json";

struct ManifestEntry {
  std::string path;  // relative to the app directory
  std::string sha256;
  std::size_t bytes = 0;

  bool operator==(const ManifestEntry&) const = default;
};

struct Manifest {
  std::string app;
  std::vector<ManifestEntry> files;  // sorted by path

  bool operator==(const Manifest&) const = default;
};

nlohmann::json to_json(const Manifest& manifest);

// (path relative to the app directory, contents), sorted by path.
std::vector<std::pair<std::string, std::string>> export_files(const GeneratedProject& gp);

Manifest build_manifest(const GeneratedProject& gp);

// Writes <out>/<App>/Sources/{Views,Models,Utilities}/*.swift and the manifest,
// replacing any earlier export of the same app. Throws Error{io_error} with {path}.
Manifest export_project(const GeneratedProject& gp, const std::filesystem::path& out_dir);

// The export layout as a zip archive (stored entries, fixed timestamps), with
// every path prefixed by the app directory.
std::string export_archive(const GeneratedProject& gp);

std::string sha256_hex(std::string_view data);

// Uncompressed zip of the given entries in the given order.
std::string make_zip(const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace irforge::codegen
