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

#include "irforge/codegen/navigation_plan.hpp"

#include "irforge/error.hpp"
#include "irforge/ir/serialize.hpp"
#include "irforge/json_schema.hpp"

namespace irforge::codegen {

namespace sc = irforge::schema;
using nlohmann::json;

json to_json(const NavigationPlan& plan) {
  json views = json::array();
  for (const auto& v : plan.views) {
    json transitions = json::array();
    for (const auto& t : v.transitions) {
      transitions.push_back({{"destination", t.destination},
                             {"type", t.type},
                             {"trigger", t.trigger},
                             {"dataPass", {{"items", t.data_pass}}}});
    }
    views.push_back({{"id", v.id}, {"name", v.name}, {"swiftUIViewName", v.view_name}, {"transitions", transitions}});
  }
  return {{"views", views}};
}

NavigationPlan navigation_plan_from_json(const json& value) {
  const std::string root;
  sc::require_object(value, root);
  NavigationPlan plan;
  const json& views = sc::get_array(value, "views", root);
  for (std::size_t i = 0; i < views.size(); ++i) {
    const auto vp = sc::index("views", i);
    const json& v = views[i];
    sc::require_object(v, vp);
    ViewTransitions vt;
    vt.id = sc::optional_member(v, "id") ? sc::get_int(v, "id", vp) : 0;
    vt.name = sc::get_string_or(v, "name", vp, "");
    vt.view_name = sc::get_string(v, "swiftUIViewName", vp);
    if (const json* list = sc::optional_member(v, "transitions")) {
      const auto lp = sc::join(vp, "transitions");
      if (!list->is_array()) sc::fail(lp, "expected an array");
      for (std::size_t j = 0; j < list->size(); ++j) {
        const auto tp = sc::index(lp, j);
        const json& t = (*list)[j];
        sc::require_object(t, tp);
        Transition tr;
        tr.destination = sc::get_string(t, "destination", tp);
        tr.type = sc::get_string_or(t, "type", tp, "push");
        tr.trigger = sc::get_string_or(t, "trigger", tp, "");
        if (const json* dp = sc::optional_member(t, "dataPass")) {
          if (dp->is_array()) {
            tr.data_pass = sc::get_string_list(t, "dataPass", tp);
          } else {
            sc::require_object(*dp, sc::join(tp, "dataPass"));
            if (sc::optional_member(*dp, "items")) tr.data_pass = sc::get_string_list(*dp, "items", sc::join(tp, "dataPass"));
          }
        }
        vt.transitions.push_back(std::move(tr));
      }
    }
    plan.views.push_back(std::move(vt));
  }
  return plan;
}

ir::ValidationReport validate_navigation_plan(const NavigationPlan& plan, const ir::Storyboard& sb) {
  ir::ValidationReport report;
  for (std::size_t i = 0; i < plan.views.size(); ++i) {
    const auto& v = plan.views[i];
    const auto vp = "views[" + std::to_string(i) + "]";
    const auto* source = sb.find_view(v.view_name);
    if (source == nullptr) {
      report.error("unknown_view", vp + ".swiftUIViewName", "`" + v.view_name + "` is not a screen in the storyboard");
      continue;
    }
    for (std::size_t j = 0; j < v.transitions.size(); ++j) {
      const auto& t = v.transitions[j];
      const auto tp = vp + ".transitions[" + std::to_string(j) + "]";
      if (t.type != "push" && t.type != "sheet" && t.type != "fullScreen") {
        report.error("invalid_transition_type", tp + ".type", "`" + t.type + "` is not push, sheet or fullScreen");
      }
      const auto* dest = sb.find_view(t.destination);
      if (dest == nullptr) {
        report.error("unknown_destination", tp + ".destination", "`" + t.destination + "` is not a screen in the storyboard");
      } else if (!sb.has_edge(source->id, dest->id)) {
        report.error("plan_edge_mismatch", tp, v.view_name + " -> " + t.destination + " is not a storyboard edge");
      }
    }
  }
  return report;
}

NavigationPlan generate_navigation_plan(llm::Provider& provider, const ir::Storyboard& sb, const StageOptions& options,
                                        plan::ExecutedStep* step) {
  plan::ExecutedStep record{"plan", "navigation_plan", options.clock(), {}, std::nullopt, nullptr};
  const auto prompt = llm::render_prompt(templates_or_default(options).get(llm::TemplateId::NavigationPlan),
                                         {{"currentStoryboard", ir::serialize(sb)}});
  auto check = llm::make_check<NavigationPlan>(navigation_plan_from_json,
                                               [&](const NavigationPlan& p) { return validate_navigation_plan(p, sb); });
  llm::CompletionOptions copts;
  copts.max_reprompts = 1;
  try {
    auto out = llm::complete_json(provider, prompt, check, copts);
    auto plan = navigation_plan_from_json(out.value);
    record.ended_at = options.clock();
    record.provider_call_id = out.call_id();
    record.detail = to_json(plan);
    if (step != nullptr) *step = record;
    return plan;
  } catch (const Error& e) {
    if (e.code() != "schema_error_after_retries") throw;
    const auto report = ir::report_from_json(e.detail().at("report"));
    if (!report.has("plan_edge_mismatch")) throw;
    json offending = json::array();
    for (const auto& f : report.findings) {
      if (f.code == "plan_edge_mismatch") offending.push_back(f.message.substr(0, f.message.find(" is not")));
    }
    throw Error("plan_edge_mismatch", "navigation plan does not follow the storyboard",
                {{"transitions", offending}, {"report", e.detail().at("report")}});
  }
}

}  // namespace irforge::codegen
