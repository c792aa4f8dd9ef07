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

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "files.hpp"
#include "fixtures.hpp"
#include "project_fixtures.hpp"
#include "zip_reader.hpp"
#include "irforge/codegen/design.hpp"
#include "irforge/codegen/export.hpp"
#include "irforge/codegen/generate.hpp"
#include "irforge/codegen/initial.hpp"
#include "irforge/codegen/navigation_plan.hpp"
#include "irforge/error.hpp"
#include "irforge/ir/serialize.hpp"

namespace irforge::codegen {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::shop_codegen_reply;
using testing::shop_project;

Error capture(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  return Error("none", "no error");
}

std::unique_ptr<llm::ScriptedProvider> script(std::vector<json> responses) {
  json list = json::array();
  for (auto& r : responses) {
    if (r.is_object() && (r.contains("json") || r.contains("text"))) {
      list.push_back(r);
    } else {
      list.push_back(r.is_string() ? json{{"text", r}} : json{{"json", r}});
    }
  }
  return llm::ScriptedProvider::from_json({{"responses", list}});
}

StageOptions counting() {
  StageOptions o;
  o.clock = testing::CountingClock{};
  return o;
}

// ---- design scaffold

TEST(DesignScaffold, AppendixSystemParses) {
  auto provider = script({json::parse(testing::kDesignSystemJson)});
  plan::ExecutedStep step;
  const auto s = generate_design_scaffold(*provider, "A music app", counting(), &step);
  EXPECT_EQ(s.primary, "#F0F0F0");
  EXPECT_EQ(s.accent, "#FF5733");
  EXPECT_EQ(s.h1.size, 36);
  EXPECT_EQ(step.stage, "codegen");
  EXPECT_EQ(step.target, "design_scaffold");
  EXPECT_TRUE(step.provider_call_id.has_value());
}

TEST(DesignScaffold, NamedColorIsRepromptedOnce) {
  auto bad = json::parse(testing::kDesignSystemJson);
  bad["colors"]["primary"] = "green";
  auto provider = script({bad, json::parse(testing::kDesignSystemJson)});
  const auto s = generate_design_scaffold(*provider, "A music app", counting());
  EXPECT_EQ(s.primary, "#F0F0F0");
  const auto received = provider->received();
  ASSERT_EQ(received.size(), 2u);
  EXPECT_NE(received[1].messages.back().content.find("invalid_color"), std::string::npos);
}

TEST(DesignScaffold, BlankRequestMakesNoCall) {
  auto provider = script({json::parse(testing::kDesignSystemJson)});
  EXPECT_EQ(capture([&] { generate_design_scaffold(*provider, " \n\t"); }).code(), "empty_request");
  EXPECT_EQ(provider->received().size(), 0u);
}

TEST(DesignScaffold, SameReplySameScaffold) {
  auto a = script({json::parse(testing::kDesignSystemJson)});
  auto b = script({json::parse(testing::kDesignSystemJson)});
  EXPECT_EQ(generate_design_scaffold(*a, "x"), generate_design_scaffold(*b, "x"));
}

// ---- navigation plan

ir::Storyboard review_storyboard() {
  return ir::storyboard_from_json(json::parse(R"({
    "nodes": [
      {"id": 1, "name": "Product Detail", "swiftUIViewName": "ProductDetailView", "outgoingEdges": [2]},
      {"id": 2, "name": "Write Review", "swiftUIViewName": "WriteReviewView", "outgoingEdges": []}
    ]})"));
}

json review_plan(const std::string& from, const std::string& to) {
  return {{"views",
           {{{"id", 1},
             {"name", "Product Detail"},
             {"swiftUIViewName", from},
             {"transitions",
              {{{"destination", to},
                {"type", "sheet"},
                {"trigger", "Tap Write Review"},
                {"dataPass", {{"items", {"product.id"}}}}}}}}}}};
}

TEST(NavigationPlan, SheetAlongEdgeIsAccepted) {
  auto provider = script({review_plan("ProductDetailView", "WriteReviewView")});
  plan::ExecutedStep step;
  const auto p = generate_navigation_plan(*provider, review_storyboard(), counting(), &step);
  ASSERT_EQ(p.views.size(), 1u);
  EXPECT_EQ(p.views[0].transitions[0].type, "sheet");
  EXPECT_EQ(p.views[0].transitions[0].data_pass, std::vector<std::string>{"product.id"});
  EXPECT_EQ(step.stage, "plan");
  EXPECT_EQ(step.target, "navigation_plan");
  EXPECT_EQ(step.detail, to_json(p));
  EXPECT_EQ(navigation_plan_from_json(to_json(p)), p);
}

TEST(NavigationPlan, TransitionOffTheGraphFailsAfterOneRepair) {
  auto provider = script({review_plan("WriteReviewView", "ProductDetailView"), review_plan("WriteReviewView", "ProductDetailView")});
  const auto e = capture([&] { generate_navigation_plan(*provider, review_storyboard(), counting()); });
  EXPECT_EQ(e.code(), "plan_edge_mismatch");
  EXPECT_EQ(e.detail().at("transitions"), json::array({"WriteReviewView -> ProductDetailView"}));
  EXPECT_EQ(provider->received().size(), 2u);
}

TEST(NavigationPlan, EdgelessStoryboardAcceptsEmptyPlan) {
  auto sb = review_storyboard();
  sb.nodes[0].outgoing_edges.clear();
  auto provider = script({json{{"views", json::array()}}});
  EXPECT_TRUE(generate_navigation_plan(*provider, sb).views.empty());
}

TEST(NavigationPlan, UnknownTransitionTypeIsReported) {
  auto plan = navigation_plan_from_json(review_plan("ProductDetailView", "WriteReviewView"));
  plan.views[0].transitions[0].type = "modal";
  EXPECT_TRUE(validate_navigation_plan(plan, review_storyboard()).has("invalid_transition_type"));
}

// ---- code generation

TEST(GenerateCode, ShopProjectYieldsOneViewPerScreen) {
  auto provider = script({shop_codegen_reply()});
  std::vector<plan::ExecutedStep> steps;
  CodegenOptions options;
  options.stage = counting();
  options.app_name = "shoe shop";
  const auto gp = generate_code(*provider, shop_project(), options, &steps);
  ASSERT_EQ(gp.views.size(), 3u);
  EXPECT_EQ(gp.find_view("PurchaseView")->id, 3);
  ASSERT_EQ(gp.utilities.size(), 1u);
  EXPECT_EQ(gp.utilities[0].name, "Color+Extension");
  ASSERT_EQ(gp.models.size(), 1u);
  EXPECT_EQ(gp.models[0].name, "Product");
  EXPECT_EQ(gp.app_name, "ShoeShop");
  EXPECT_EQ(gp.metrics.view_count, 3);
  EXPECT_EQ(gp.metrics, compute_metrics(gp));
  ASSERT_TRUE(gp.scaffold_used.has_value());
  EXPECT_EQ(gp.scaffold_used->accent, "#FF5733");
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_EQ(steps[0].stage, "codegen");
  EXPECT_TRUE(validate_generated(gp, shop_project().storyboard).ok());
  EXPECT_EQ(generated_from_json(to_json(gp)), gp);
}

TEST(GenerateCode, PromptCarriesEveryIr) {
  auto provider = script({shop_codegen_reply()});
  const auto project = shop_project();
  generate_code(*provider, project);
  const auto prompt = provider->received().at(0).messages.back().content;
  EXPECT_NE(prompt.find(ir::serialize(project.storyboard)), std::string::npos);
  EXPECT_NE(prompt.find(ir::serialize(project.data_model)), std::string::npos);
  EXPECT_NE(prompt.find("#FF5733"), std::string::npos);
  EXPECT_NE(prompt.find("ProductDetailView"), std::string::npos);
}

TEST(GenerateCode, MissingViewAfterRepairIsCodegenInvalid) {
  auto reply = shop_codegen_reply();
  reply["views"].erase(2);
  auto provider = script({reply, reply});
  const auto e = capture([&] { generate_code(*provider, shop_project()); });
  EXPECT_EQ(e.code(), "codegen_invalid");
  EXPECT_NE(std::string(e.what()).find("missing_view(PurchaseView)"), std::string::npos) << e.what();
  EXPECT_EQ(provider->received().size(), 2u);
}

TEST(GenerateCode, RenamedTypeIsRepaired) {
  auto wrong = shop_codegen_reply();
  wrong["views"][0]["viewCode"] = testing::swift_view("HomeScreen", {"ProductDetailView"});
  auto provider = script({wrong, shop_codegen_reply()});
  const auto gp = generate_code(*provider, shop_project());
  EXPECT_TRUE(declares_type(gp.find_view("HomeView")->view_code, "HomeView"));
  const auto received = provider->received();
  ASSERT_EQ(received.size(), 2u);
  EXPECT_NE(received[1].messages.back().content.find("type_name_mismatch"), std::string::npos);
}

TEST(GenerateCode, EachViolationClassGetsOneRepair) {
  auto missing = shop_codegen_reply();
  missing["views"].erase(2);
  auto renamed = shop_codegen_reply();
  renamed["views"][0]["viewCode"] = testing::swift_view("HomeScreen", {});
  auto provider = script({missing, renamed, shop_codegen_reply()});
  EXPECT_EQ(generate_code(*provider, shop_project()).views.size(), 3u);
  EXPECT_EQ(provider->received().size(), 3u);

  auto again = script({renamed, renamed, shop_codegen_reply()});
  EXPECT_EQ(capture([&] { generate_code(*again, shop_project()); }).code(), "codegen_invalid");
  EXPECT_EQ(again->received().size(), 2u);
}

TEST(GenerateCode, Preconditions) {
  auto provider = script({shop_codegen_reply()});
  auto no_scaffold = shop_project();
  no_scaffold.design_scaffold.reset();
  EXPECT_EQ(capture([&] { generate_code(*provider, no_scaffold); }).code(), "scaffold_missing");
  auto broken = shop_project();
  broken.skeletons.erase(3);
  EXPECT_EQ(capture([&] { generate_code(*provider, broken); }).code(), "project_invalid");
  EXPECT_EQ(provider->received().size(), 0u);
}

TEST(GenerateCode, PerViewModeMergesUtilities) {
  const auto full = shop_codegen_reply();
  std::vector<json> responses;
  for (const auto& v : full["views"]) {
    json r = {{"template", "code_gen"},
              {"target", v["swiftUIViewName"]},
              {"json", {{"views", json::array({v})}, {"utilities", full["utilities"]}}}};
    responses.push_back(r);
  }
  auto provider = script(responses);
  std::vector<plan::ExecutedStep> steps;
  CodegenOptions options;
  options.per_view = true;
  const auto gp = generate_code(*provider, shop_project(), options, &steps);
  ASSERT_EQ(gp.views.size(), 3u);
  EXPECT_EQ(gp.views[2].id, 3);
  EXPECT_EQ(gp.utilities.size(), 1u);
  ASSERT_EQ(steps.size(), 3u);
  EXPECT_EQ(steps[1].target, "ProductDetailView");
}

TEST(GenerateCode, AppIdentifier) {
  EXPECT_EQ(app_identifier("pin cast!"), "PinCast");
  EXPECT_EQ(app_identifier("9lives app"), "LivesApp");
  EXPECT_EQ(app_identifier("***"), "GeneratedApp");
}

TEST(GeneratedProject, ParseTakesIdsFromStoryboard) {
  const auto sb = shop_project().storyboard;
  const auto gp = parse_codegen_reply(shop_codegen_reply(), sb);
  EXPECT_EQ(gp.find_view("PurchaseView")->id, 3);
  EXPECT_TRUE(declares_type("final class PurchaseView: View {}", "PurchaseView"));
  EXPECT_FALSE(declares_type("struct PurchaseViewModel {}", "PurchaseView"));
}

TEST(GeneratedProject, ExtraAndDuplicateViews) {
  auto reply = shop_codegen_reply();
  reply["views"].push_back(reply["views"][0]);
  reply["views"].push_back({{"id", 9}, {"name", "Ghost"}, {"swiftUIViewName", "GhostView"}, {"viewCode", "struct GhostView {}"}});
  const auto report = validate_generated(parse_codegen_reply(reply, shop_project().storyboard), shop_project().storyboard);
  EXPECT_TRUE(report.has("duplicate_view"));
  EXPECT_TRUE(report.has("extra_view"));
}

TEST(GeneratedProject, CountLines) {
  EXPECT_EQ(count_lines(""), 0);
  EXPECT_EQ(count_lines("a"), 1);
  EXPECT_EQ(count_lines("a\n"), 1);
  EXPECT_EQ(count_lines("a\n\nb"), 3);
}

// ---- export

GeneratedProject shop_generated() {
  auto provider = script({shop_codegen_reply()});
  CodegenOptions options;
  options.app_name = "Shoe Shop";
  return generate_code(*provider, shop_project(), options);
}

int oracle_lines(const fs::path& dir) {
  int total = 0;
  if (!fs::exists(dir)) return 0;
  for (const auto& f : fs::directory_iterator(dir)) {
    const auto text = testing::read_file(f.path());
    total += static_cast<int>(std::count(text.begin(), text.end(), '\n'));
    if (!text.empty() && text.back() != '\n') ++total;
  }
  return total;
}

TEST(Export, LayoutAndManifest) {
  testing::TempDir tmp;
  const auto gp = shop_generated();
  const auto manifest = export_project(gp, tmp.path());
  const auto app = tmp.path() / "ShoeShop";
  for (const auto* rel : {"Sources/Views/HomeView.swift", "Sources/Views/ProductDetailView.swift",
                          "Sources/Views/PurchaseView.swift", "Sources/Models/Product.swift",
                          "Sources/Utilities/Color+Extension.swift", kManifestName}) {
    EXPECT_TRUE(fs::exists(app / rel)) << rel;
  }
  EXPECT_EQ(testing::read_file(app / "Sources/Views/PurchaseView.swift"), gp.find_view("PurchaseView")->view_code);
  EXPECT_EQ(manifest.files.size(), 5u);
  EXPECT_TRUE(std::is_sorted(manifest.files.begin(), manifest.files.end(),
                             [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; }));
  for (const auto& f : manifest.files) {
    const auto bytes = testing::read_file(app / f.path);
    EXPECT_EQ(f.sha256, sha256_hex(bytes));
    EXPECT_EQ(f.bytes, bytes.size());
  }
  EXPECT_EQ(testing::read_json(app / kManifestName), to_json(manifest));
}

TEST(Export, LinesOfCodeMatchExportedViewsAndUtilities) {
  testing::TempDir tmp;
  const auto gp = shop_generated();
  export_project(gp, tmp.path());
  const auto src = tmp.path() / "ShoeShop" / "Sources";
  EXPECT_EQ(gp.metrics.lines_of_code, oracle_lines(src / "Views") + oracle_lines(src / "Utilities"));
  EXPECT_EQ(gp.metrics.view_count, 3);
}

TEST(Export, RandomProjectsKeepMetricsConsistent) {
  testing::IrGenerator gen(77);
  for (int i = 0; i < 40; ++i) {
    GeneratedProject gp;
    gp.app_name = "App" + std::to_string(i);
    const int n = gen.uniform(0, 6);
    for (int v = 0; v < n; ++v) {
      std::string code;
      for (int l = gen.uniform(0, 30); l > 0; --l) code += gen.text() + "\n";
      if (gen.coin()) code += "tail";
      gp.views.push_back({v + 1, "S" + std::to_string(v), "S" + std::to_string(v) + "View", code});
    }
    if (gen.coin()) gp.utilities.push_back({"Util", "let x = 1\nlet y = 2\n"});
    gp.metrics = compute_metrics(gp);
    testing::TempDir tmp;
    export_project(gp, tmp.path());
    const auto src = tmp.path() / gp.app_name / "Sources";
    EXPECT_EQ(gp.metrics.lines_of_code, oracle_lines(src / "Views") + oracle_lines(src / "Utilities")) << i;
    EXPECT_EQ(gp.metrics.view_count, n);
  }
}

TEST(Export, EmptyProjectStillWritesManifest) {
  testing::TempDir tmp;
  GeneratedProject gp;
  const auto manifest = export_project(gp, tmp.path());
  EXPECT_TRUE(manifest.files.empty());
  EXPECT_TRUE(fs::exists(tmp.path() / "GeneratedApp" / kManifestName));
}

TEST(Export, ReExportIsIdenticalAndDropsStaleFiles) {
  testing::TempDir tmp;
  auto gp = shop_generated();
  export_project(gp, tmp.path());
  const auto app = tmp.path() / "ShoeShop";
  const auto first = testing::read_file(app / kManifestName);
  export_project(gp, tmp.path());
  EXPECT_EQ(testing::read_file(app / kManifestName), first);

  gp.views.erase(gp.views.begin());
  export_project(gp, tmp.path());
  EXPECT_FALSE(fs::exists(app / "Sources/Views/HomeView.swift"));
  EXPECT_TRUE(fs::exists(app / "Sources/Views/PurchaseView.swift"));
}

TEST(Export, UnwritableTargetIsIoError) {
  testing::TempDir tmp;
  const auto blocker = tmp.path() / "file";
  { std::ofstream(blocker) << "x"; }
  const auto e = capture([&] { export_project(shop_generated(), blocker); });
  EXPECT_EQ(e.code(), "io_error");
  EXPECT_TRUE(e.detail().contains("path"));
}

TEST(Export, ArchiveMatchesExportedTree) {
  const auto gp = shop_generated();
  const auto bytes = export_archive(gp);
  const auto entries = testing::read_zip(bytes);
  const auto files = export_files(gp);
  ASSERT_EQ(entries.size(), files.size() + 1);
  std::set<std::string> names;
  for (const auto& e : entries) {
    EXPECT_EQ(e.name.rfind("ShoeShop/", 0), 0u) << e.name;
    names.insert(e.name);
  }
  for (const auto& [path, code] : files) {
    auto it = std::find_if(entries.begin(), entries.end(), [&](const testing::ZipEntry& e) { return e.name == "ShoeShop/" + path; });
    ASSERT_NE(it, entries.end()) << path;
    EXPECT_EQ(it->data, code);
  }
  EXPECT_TRUE(names.count(std::string("ShoeShop/") + kManifestName));
  EXPECT_EQ(export_archive(gp), bytes);
}

TEST(Export, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

// ---- initial generation

TEST(InitialGenerate, FinanceFixtureBuildsCompleteProject) {
  auto provider = llm::ScriptedProvider::from_file(testing::fixture_path("finance/initial.json"));
  InitialOptions options;
  options.stage = counting();
  const auto out = initial_generate(*provider, "finance management app tailored specifically for informal community savings groups", options);
  const auto& p = out.project;
  EXPECT_GE(p.storyboard.nodes.size(), 5u);
  EXPECT_EQ(p.skeletons.size(), p.storyboard.nodes.size());
  EXPECT_TRUE(p.validate().ok()) << p.validate().to_text();
  ASSERT_TRUE(p.design_scaffold.has_value());
  EXPECT_EQ(p.data_model.entities.size(), 4u);
  EXPECT_EQ(out.navigation_plan.views.size(), 5u);
  ASSERT_GE(out.steps.size(), 9u);
  EXPECT_EQ(out.steps[0].stage, "storyboard");
  EXPECT_EQ(out.steps[1].target, "design_scaffold");
  EXPECT_EQ(out.steps[2].stage, "data_model");
  EXPECT_EQ(out.steps[3].target, "navigation_plan");
  for (std::size_t i = 4; i < out.steps.size(); ++i) EXPECT_EQ(out.steps[i].stage, "skeleton");
  EXPECT_EQ(p.history, out.steps);
  EXPECT_EQ(provider->remaining(), 0u);
}

TEST(InitialGenerate, SameScriptSameProject) {
  auto run = [] {
    auto provider = llm::ScriptedProvider::from_file(testing::fixture_path("finance/initial.json"));
    InitialOptions options;
    options.stage = counting();
    options.concurrent_skeletons = false;
    return initial_generate(*provider, "savings groups", options).project;
  };
  EXPECT_EQ(run(), run());
}

TEST(InitialGenerate, WhitespaceRequestMakesNoCall) {
  auto provider = llm::ScriptedProvider::from_file(testing::fixture_path("finance/initial.json"));
  EXPECT_EQ(capture([&] { initial_generate(*provider, "   \n"); }).code(), "empty_request");
  EXPECT_EQ(provider->received().size(), 0u);
}

TEST(InitialGenerate, DuplicateViewNamesAreRenamed) {
  auto responses = testing::fixture_json("finance/initial.json")["responses"];
  responses[0]["json"]["nodes"][4]["swiftUIViewName"] = "ContributionsView";
  for (auto& r : responses) {
    if (r.value("target", "") == "PayoutScheduleView") {
      r["target"] = "ContributionsView2";
      r["json"]["viewName"] = "ContributionsView2";
    }
  }
  for (auto& v : responses[3]["json"]["views"]) {
    if (v["swiftUIViewName"] == "PayoutScheduleView") v["swiftUIViewName"] = "ContributionsView2";
    for (auto& t : v["transitions"]) {
      if (t["destination"] == "PayoutScheduleView") t["destination"] = "ContributionsView2";
    }
  }
  for (auto& r : responses) {
    if (r.value("template", "") != "skeleton_mod") continue;
    for (auto& e : r["json"]["guiSkeleton"]["Layout"]["MainContainer"]["Elements"]) {
      if (e.contains("Button") && e["Button"]["OnTap"].is_object() &&
          e["Button"]["OnTap"]["Navigate"]["Destination"] == "PayoutScheduleView") {
        e["Button"]["OnTap"]["Navigate"]["Destination"] = "ContributionsView2";
      }
    }
  }
  auto provider = llm::ScriptedProvider::from_json({{"responses", responses}});
  const auto out = initial_generate(*provider, "savings groups");
  EXPECT_NE(out.project.storyboard.find_view("ContributionsView2"), nullptr);
  EXPECT_TRUE(out.steps[0].detail.contains("warnings"));
}

TEST(DedupeViewNames, SuffixesRepeats) {
  auto sb = ir::storyboard_from_json(json::parse(R"({"nodes": [
    {"id": 1, "name": "A", "swiftUIViewName": "HomeView", "outgoingEdges": []},
    {"id": 2, "name": "B", "swiftUIViewName": "HomeView", "outgoingEdges": []},
    {"id": 3, "name": "C", "swiftUIViewName": "HomeView", "outgoingEdges": []}]})"));
  const auto report = ir::dedupe_view_names(sb);
  EXPECT_EQ(sb.nodes[0].view_name, "HomeView");
  EXPECT_EQ(sb.nodes[1].view_name, "HomeView2");
  EXPECT_EQ(sb.nodes[2].view_name, "HomeView3");
  EXPECT_TRUE(report.has("renamed_duplicate_view"));
  EXPECT_TRUE(ir::validate_storyboard(sb).ok());
}

}  // namespace
}  // namespace irforge::codegen
