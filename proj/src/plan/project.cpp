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

#include "irforge/plan/project.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "irforge/ir/validate.hpp"
#include "irforge/json_schema.hpp"

namespace irforge::plan {
namespace sc = irforge::schema;
using nlohmann::json;

json to_json(const ExecutedStep& step) {
  json out = {{"stage", step.stage}, {"target", step.target}, {"startedAt", step.started_at}, {"endedAt", step.ended_at}};
  if (step.provider_call_id) out["providerCallId"] = *step.provider_call_id;
  if (!step.detail.is_null()) out["detail"] = step.detail;
  return out;
}

ExecutedStep step_from_json(const json& value) {
  const std::string root;
  sc::require_object(value, root);
  ExecutedStep step;
  step.stage = sc::get_string(value, "stage", root);
  step.target = sc::get_string_or(value, "target", root, "-");
  step.started_at = sc::get_string_or(value, "startedAt", root, "");
  step.ended_at = sc::get_string_or(value, "endedAt", root, "");
  if (sc::optional_member(value, "providerCallId")) step.provider_call_id = sc::get_string(value, "providerCallId", root);
  if (const json* d = sc::optional_member(value, "detail")) step.detail = *d;
  return step;
}

std::vector<ir::GuiSkeleton> Project::skeleton_list() const {
  std::vector<ir::GuiSkeleton> out;
  out.reserve(skeletons.size());
  for (const auto& [id, s] : skeletons) out.push_back(s);
  return out;
}

const ir::GuiSkeleton* Project::skeleton_for_view(const std::string& view_name) const {
  for (const auto& [id, s] : skeletons) {
    if (s.view_name == view_name) return &s;
  }
  return nullptr;
}

ir::ValidationReport Project::validate() const {
  const auto list = skeleton_list();
  return ir::validate_project(storyboard, data_model, list);
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

}  // namespace irforge::plan
