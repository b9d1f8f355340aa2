#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "foguel/config.hpp"
#include "foguel/error.hpp"
#include "foguel/plot.hpp"
#include "foguel/scenario.hpp"
#include "foguel/spectral.hpp"

using namespace foguel;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("foguel_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Minimal well-formedness: balanced, properly nested elements under one <svg> root.
bool well_formed_svg(const std::string& svg) {
  if (svg.rfind("<svg", 0) != 0 && svg.find("<svg") == std::string::npos) return false;
  std::vector<std::string> stack;
  std::size_t pos = 0;
  bool saw_root = false;
  while ((pos = svg.find('<', pos)) != std::string::npos) {
    const auto end = svg.find('>', pos);
    if (end == std::string::npos) return false;
    const std::string tag = svg.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty() || tag[0] == '?' || tag[0] == '!') continue;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const std::string name = tag.substr(0, tag.find_first_of(" \n\t/"));
    if (stack.empty()) {
      if (saw_root || name != "svg") return false;
      saw_root = true;
    }
    if (tag.back() != '/') stack.push_back(name);
  }
  return saw_root && stack.empty();
}

ScenarioConfig cfg_from(const std::string& text) { return parse_config(text); }

}  // namespace

TEST(Scenario, NormWithZeroSymbol) {
  const auto r = run_scenario(cfg_from(R"({"scenario":"norm","symbol":"zero","N":32})"));
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_NEAR(r.rows[0].values[0], 1.0, 1e-14);
  EXPECT_DOUBLE_EQ(r.rows[0].values[2], 1.0);
  EXPECT_NEAR(r.rows[0].gap, 0.0, 1e-14);
  EXPECT_TRUE(r.all_pass());
}

TEST(Scenario, ReferenceValuesAreBitForBit) {
  const auto r = run_scenario(cfg_from(R"({"scenario":"power-bound","symbol":"identity","N":64,"n":3})"));
  ASSERT_EQ(r.rows.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(r.rows[k].values[2], power_norm_bound(1.0, k + 1));
  const auto h = run_scenario(cfg_from(R"({"scenario":"norm","symbol":"identity","N":16})"));
  EXPECT_EQ(h.rows[0].values[2], foguel_norm_formula(1.0));
}

TEST(Scenario, ShiftCounterexampleVerdict) {
  const auto r = run_scenario(cfg_from(R"({"scenario":"shift-counterexample","N":16})"));
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].verdict, "eigenpair-exact");
  EXPECT_LE(r.rows[0].values[0], 1e-12);
  EXPECT_TRUE(r.all_pass());
}

TEST(Scenario, HalmosSmall) {
  const auto r = run_scenario(cfg_from(R"({"scenario":"halmos","N":81,"n":2})"));
  ASSERT_EQ(r.rows.size(), 2u);
  for (const auto& row : r.rows) {
    EXPECT_LE(row.values[0], kGoldenRatio + 1e-9);
    EXPECT_NEAR(row.values[2], 1.0, 1e-9);
    EXPECT_LE(row.values[3], 1e-9);
  }
}

TEST(Scenario, FailingVerdictIsReported) {
  const auto r = run_scenario(
      cfg_from(R"({"scenario":"verify-mapping","symbol":"identity","N":32,"delta1":0})"));
  EXPECT_FALSE(r.all_pass());
}

TEST(Scenario, CsvColumnsAndDeterministicFiles) {
  const auto dir = scratch_dir("csv");
  const std::string out = (dir / "sweep").string();
  const std::string text = R"({"scenario":"sweep","symbol":"identity","N":[8,16,32],"mode":"mapping","output":")" +
                           out + R"("})";
  const auto first = run_scenario(cfg_from(text));
  ASSERT_EQ(first.files.size(), 2u);
  const auto csv1 = slurp(out + ".csv");
  const auto svg1 = slurp(out + ".svg");
  (void)run_scenario(cfg_from(text));
  EXPECT_EQ(slurp(out + ".csv"), csv1);
  EXPECT_EQ(slurp(out + ".svg"), svg1);

  std::istringstream lines(csv1);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "scenario,N,n,computed_norm,reference_norm,formula_exact,gap,verdict,note");
  std::size_t count = 0;
  for (std::string line; std::getline(lines, line);) ++count;
  EXPECT_EQ(count, 3u);
  EXPECT_TRUE(well_formed_svg(svg1));
  EXPECT_FALSE(fs::exists(out + ".csv.tmp"));
}

TEST(Scenario, JsonRowsKeyedByColumns) {
  const auto dir = scratch_dir("json");
  const std::string out = (dir / "norm").string();
  const auto r = run_scenario(cfg_from(R"({"scenario":"norm","symbol":"identity","N":[8,16],"format":"json","output":")" +
                                       out + R"("})"));
  const auto j = nlohmann::json::parse(slurp(out + ".json"));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  for (const auto& col : scenario_columns(Scenario::kNorm)) EXPECT_TRUE(j[0].contains(col)) << col;
  EXPECT_EQ(j[1]["N"], 16);
  EXPECT_FALSE(j[0].contains("wall_ms"));
  EXPECT_EQ(j[0]["computed_norm"].get<double>(), r.rows[0].values[0]);
}

TEST(Scenario, RandomSymbolIsSeedDeterministic) {
  const std::string base = R"({"scenario":"power-bound","symbol":{"kind":"random-contraction","size":8},"N":16,"n":2,"seed":)";
  const auto a = run_scenario(cfg_from(base + "3}"));
  const auto b = run_scenario(cfg_from(base + "3}"));
  const auto c = run_scenario(cfg_from(base + "4}"));
  EXPECT_EQ(render_csv(Scenario::kPowerBound, a.rows), render_csv(Scenario::kPowerBound, b.rows));
  EXPECT_NE(render_csv(Scenario::kPowerBound, a.rows), render_csv(Scenario::kPowerBound, c.rows));
}

TEST(Plot, MappingCurvePassesThroughFixedPoints) {
  const auto data = mapping_curve_data();
  ASSERT_EQ(data.series.size(), 2u);
  EXPECT_GE(data.series[1].x.size(), 200u);
  EXPECT_DOUBLE_EQ(data.series[1].x.front(), 0.2);
  EXPECT_DOUBLE_EQ(data.series[1].x.back(), 3.0);
  const auto svg = render_plot(PlotKind::kMappingCurve, data);
  EXPECT_TRUE(well_formed_svg(svg));
  EXPECT_NE(svg.find("viewBox=\"0 0 800 600\""), std::string::npos);
  const PlotFrame f{data.x_min, data.x_max, data.y_min, data.y_max};
  EXPECT_LE(polyline_distance(svg, "curve-1", f.px(1.0), f.py(0.0)), 1.0);
  EXPECT_LE(polyline_distance(svg, "curve-1", f.px(kGoldenRatio), f.py(1.0)), 1.0);
  EXPECT_GT(polyline_distance(svg, "curve-1", f.px(1.0), f.py(1.0)), 20.0);
  EXPECT_TRUE(std::isinf(polyline_distance(svg, "curve-9", 0, 0)));
  EXPECT_EQ(render_plot(PlotKind::kMappingCurve, data), svg);
}

TEST(Plot, SpectrumScatterOfIdentityShowsClusters) {
  const auto gap = gap_check_identity({256, 1});
  const auto predicted = predicted_modulus_spectrum(std::vector<double>{1.0});
  const auto data = spectrum_scatter_data(gap.sigma, predicted, "R_I");
  ASSERT_FALSE(data.series.empty());
  std::size_t near_small = 0, near_large = 0;
  for (double y : data.series[0].y) {
    if (std::abs(y - 0.618) < 0.01) ++near_small;
    if (std::abs(y - 1.618) < 0.01) ++near_large;
  }
  EXPECT_GT(near_small, 100u);
  EXPECT_GT(near_large, 100u);
  EXPECT_TRUE(well_formed_svg(render_plot(PlotKind::kSpectrumScatter, data)));
}

TEST(Plot, ConvergenceCurveIsMonotoneTowardReference) {
  const std::vector<std::size_t> Ns{8, 16, 32, 64};
  const auto table = convergence_sweep(OperatorSpec::halmos_projection(), 1, Ns, SweepMode::kNorm);
  std::vector<double> xs, ys;
  for (const auto& r : table.rows) {
    xs.push_back(static_cast<double>(r.N));
    ys.push_back(r.norm);
  }
  const auto data = convergence_data(xs, ys, kGoldenRatio, "halmos");
  for (std::size_t i = 1; i < data.series[0].y.size(); ++i)
    EXPECT_GE(data.series[0].y[i], data.series[0].y[i - 1] - 1e-12);
  EXPECT_EQ(data.reference_y, (std::vector<double>{kGoldenRatio}));
  EXPECT_TRUE(well_formed_svg(render_plot(PlotKind::kConvergence, data)));
}

TEST(Plot, UnwritablePathThrows) {
  EXPECT_ANY_THROW(emit_plot(PlotKind::kMappingCurve, mapping_curve_data(),
                             "/proc/definitely/not/writable/plot.svg"));
}

TEST(Scenario, CannedScenariosAllParse) {
  for (const auto& [name, text] : canned_scenarios()) EXPECT_NO_THROW((void)parse_config(text)) << name;
}
