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

#include <span>

#include "irforge/ir/data_model.hpp"
#include "irforge/ir/report.hpp"
#include "irforge/ir/skeleton.hpp"
#include "irforge/ir/storyboard.hpp"

namespace irforge::ir {

// Per-IR findings followed by cross-IR findings: skeleton coverage, Navigate
// destinations against the storyboard, and entity.field resolution.
ValidationReport validate_project(const Storyboard& sb, const DataModel& dm, std::span<const GuiSkeleton> skeletons);

// Cross checks for a single skeleton owned by `owner` (used by stage retries).
ValidationReport validate_skeleton_in_context(const GuiSkeleton& skeleton, const Storyboard& sb, const DataModel& dm);

}  // namespace irforge::ir
