#include "helpers.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "vnspec/report.hpp"

using namespace vnspec;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string system_path(const std::string& name) { return std::string(VNSPEC_SYSTEMS_DIR) + "/" + name + ".json"; }

const char* kMinimal = R"({
  "format_version": 1,
  "name": "m2_full",
  "kind": "explicit",
  "ambient_dim": 2,
  "generators": [[[0, 1], [0, 0]]],
  "density": [[0.5, 0], [0, 0.5]],
  "subsystem": "full"
})";

AnalysisReport analyze(const std::string& text) {
  const auto desc = parse_system(text);
  AnalyzeOptions opts;
  opts.tol = effective_tolerances(desc);
  return run_analyze(desc, opts);
}

const CheckResult& check(const AnalysisReport& r, const std::string& name) {
  const auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const CheckResult& c) { return c.name == name; });
  if (it == r.checks.end()) throw std::runtime_error("missing check " + name);
  return *it;
}

}  // namespace

TEST(Description, ParsesMinimalExplicitDocument) {
  const auto desc = parse_system(kMinimal);
  EXPECT_EQ(desc.name, "m2_full");
  EXPECT_EQ(desc.kind, "explicit");
  const auto& ex = std::get<ExplicitDoc>(desc.params);
  EXPECT_EQ(ex.ambient_dim, 2);
  EXPECT_EQ(ex.subsystem.kind, SubsystemDoc::Kind::Full);
  EXPECT_FALSE(ex.W.has_value());
  const auto cs = build_system(desc, effective_tolerances(desc));
  EXPECT_EQ(cs.system.dim(), 4);
  EXPECT_EQ(cs.sub.algebra.dim(), 4);
}

TEST(Description, SkewProductRoundTrip) {
  const auto desc = parse_system_file(system_path("skew_product_z4"));
  const auto& sp = std::get<SkewProductDoc>(desc.params);
  EXPECT_EQ(sp.S, (std::vector<int>{1, 2, 0}));
  EXPECT_EQ(sp.T, (std::vector<int>{0, 3, 2, 1}));
  EXPECT_EQ(sp.k, (std::vector<int>{0, 1, 1}));
  const std::string once = to_json(desc);
  EXPECT_EQ(to_json(parse_system(once)), once);
}

TEST(Description, EmitIsIdempotentForEveryShippedSystem) {
  for (const auto& path : list_systems(VNSPEC_SYSTEMS_DIR)) {
    const std::string once = to_json(parse_system_file(path));
    EXPECT_EQ(to_json(parse_system(once)), once) << path;
  }
}

TEST(Description, NonUnitaryDynamicsNamesTheField) {
  std::string text = kMinimal;
  text.replace(text.find("\"subsystem\""), 0, R"("dynamics": {"W": [[2, 0], [0, 1]]}, )");
  try {
    parse_system(text);
    FAIL();
  } catch (const DescriptionError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    EXPECT_EQ(e.where(), "dynamics.W");
  }
}

TEST(Description, SyntaxErrorReportsPosition) {
  const std::string text = "{\n  \"format_version\": 1,\n  \"name\": ,\n}";
  try {
    parse_system(text);
    FAIL();
  } catch (const DescriptionError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_EQ(e.where().rfind("line 3", 0), 0u) << e.where();
  }
}

TEST(Description, RejectsUnknownFieldsAndBadDensity) {
  std::string extra = kMinimal;
  extra.replace(extra.find("\"subsystem\""), 0, R"("colour": "red", )");
  EXPECT_THROW(parse_system(extra), DescriptionError);
  std::string skewed = kMinimal;
  skewed.replace(skewed.find("[[0.5, 0], [0, 0.5]]"), 20, "[[0.25, 0], [0, 0.75]]");
  try {
    parse_system(skewed);
    FAIL();
  } catch (const DescriptionError& e) {
    EXPECT_EQ(e.where(), "density");
  }
}

TEST(Tolerances, FlagsOverrideFileOverridesDefaults) {
  auto desc = parse_system(kMinimal);
  EXPECT_EQ(resolve_tolerances(desc, {}).eps_rank, ToleranceConfig{}.eps_rank);
  desc.tolerances.eps_rank = 1e-9;
  EXPECT_EQ(resolve_tolerances(desc, {}).eps_rank, 1e-9);
  ToleranceOverrides flags;
  flags.eps_rank = 1e-11;
  EXPECT_EQ(resolve_tolerances(desc, flags).eps_rank, 1e-11);
}

TEST(Analyze, FullSubalgebraHasEmptyComplement) {
  const auto r = analyze(kMinimal);
  EXPECT_EQ(r.dim_complement, 0);
  EXPECT_TRUE(r.modules.empty());
  EXPECT_TRUE(r.rds);
  EXPECT_TRUE(r.rwm);
  EXPECT_EQ(r.admissible_count, 0);
  EXPECT_TRUE(r.overall_pass);
  EXPECT_EQ(r.checks.size(), check_names().size());
}

TEST(Analyze, M2OverScalars) {
  const auto r = analyze(read_file(system_path("m2_trivial")));
  EXPECT_TRUE(r.rds);
  EXPECT_FALSE(r.rwm);
  EXPECT_EQ(r.dim_alg_bar, 16);
  ASSERT_EQ(r.named_cesaro.size(), 1u);
  EXPECT_NEAR(r.named_cesaro[0].min, 0.25, 1e-9);
  EXPECT_NEAR(r.named_cesaro[0].max, 0.25, 1e-9);
  EXPECT_TRUE(check(r, "rwm_cesaro_consistency").pass);
  EXPECT_TRUE(r.overall_pass);
}

TEST(Analyze, SkewProductModules) {
  const auto r = analyze(read_file(system_path("skew_product_z4")));
  std::vector<double> candidates;
  for (const auto& m : r.modules) {
    EXPECT_TRUE(m.certified) << m.label;
    if (m.source == "candidate") candidates.push_back(m.mu_bar);
  }
  ASSERT_EQ(candidates.size(), 2u);
  EXPECT_NEAR(candidates[0], 2.0, 1e-9);
  EXPECT_NEAR(candidates[1], 1.0, 1e-9);
  EXPECT_NEAR(r.mu_bar_complement, 3.0, 1e-9);
  EXPECT_TRUE(r.rds);
  EXPECT_FALSE(r.rwm);
  EXPECT_TRUE(check(r, "fiber_formula").applicable);
  EXPECT_TRUE(r.overall_pass);
}

TEST(Analyze, FiniteExtensionChecks) {
  const auto r = analyze(read_file(system_path("finite_extension")));
  ASSERT_TRUE(r.finite_extension.has_value());
  EXPECT_TRUE(check(r, "finite_extension_beta").pass);
  EXPECT_TRUE(check(r, "finite_extension_nonproduct").pass);
  EXPECT_FALSE(check(r, "fiber_formula").applicable);
  EXPECT_TRUE(r.overall_pass);
}

TEST(Report, JsonAndTextAgreeOnVerdict) {
  const auto r = analyze(kMinimal);
  const std::string json = emit_report(r, ReportFormat::Json);
  EXPECT_NE(json.find("\"overall_pass\": true"), std::string::npos);
  const std::string text = emit_report(r, ReportFormat::Text);
  EXPECT_NE(text.find("overall: pass"), std::string::npos);
}

TEST(Report, SelftestIsDeterministic) {
  const auto files = list_systems(VNSPEC_SYSTEMS_DIR);
  ASSERT_GE(files.size(), 8u);
  const std::vector<std::string> some(files.begin(), files.begin() + 3);
  EXPECT_EQ(emit_reports_json(run_selftest(some, {}, 5)), emit_reports_json(run_selftest(some, {}, 5)));
}
