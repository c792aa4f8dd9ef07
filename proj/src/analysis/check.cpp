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

#include "irforge/analysis/check.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "irforge/error.hpp"

namespace irforge::analysis {

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io_error", "cannot read " + path.string(), {{"path", path.string()}});
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::optional<fs::path> find_views_dir(const fs::path& dir) {
  if (dir.filename() == "Views") return dir;
  if (fs::is_directory(dir / "Views")) return dir / "Views";
  if (fs::is_directory(dir / "Sources" / "Views")) return dir / "Sources" / "Views";
  std::vector<fs::path> candidates;
  std::error_code ec;
  for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_directory() && it->path().filename() == "Views" && it->path().parent_path().filename() == "Sources") {
      candidates.push_back(it->path());
    }
  }
  if (candidates.empty()) return std::nullopt;
  return *std::min_element(candidates.begin(), candidates.end());
}

}  // namespace

codegen::GeneratedProject load_exported_views(const fs::path& dir, const ir::Storyboard& sb) {
  if (!fs::is_directory(dir)) throw Error("io_error", dir.string() + " is not a directory", {{"path", dir.string()}});
  const auto views = find_views_dir(dir);
  if (!views) throw Error("io_error", "no Sources/Views directory under " + dir.string(), {{"path", dir.string()}});

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(*views)) {
    if (entry.is_regular_file() && entry.path().extension() == ".swift") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  codegen::GeneratedProject gp;
  gp.app_name = views->parent_path().parent_path().filename().string();
  for (const auto& f : files) {
    codegen::GeneratedView v;
    v.view_name = f.stem().string();
    if (const auto* node = sb.find_view(v.view_name)) {
      v.id = node->id;
      v.name = node->name;
    }
    v.view_code = slurp(f);
    gp.views.push_back(std::move(v));
  }
  gp.metrics = codegen::compute_metrics(gp);
  return gp;
}

ErrorReport check_export(const fs::path& dir, const ir::Storyboard& sb, const std::optional<fs::path>& compile_log) {
  const auto gp = load_exported_views(dir, sb);
  std::optional<std::string> log;
  if (compile_log) log = slurp(*compile_log);
  return summarize(check_navigation(gp, sb), log ? std::optional<std::string_view>(*log) : std::nullopt);
}

}  // namespace irforge::analysis
