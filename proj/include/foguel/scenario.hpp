#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "foguel/config.hpp"

namespace foguel {

/// One line of a scenario report. `values` follow scenario_columns() order.
struct ReportRow {
  std::string scenario;
  std::size_t N = 0;
  std::size_t n = 0;
  std::vector<double> values;
  double gap = 0.0;
  std::string verdict;
  bool pass = false;
  std::string note;
  double wall_ms = 0.0;  // console only; excluded from files so reruns are byte-identical
};

struct ScenarioResult {
  std::vector<ReportRow> rows;
  std::vector<std::string> files;

  bool all_pass() const;
};

/// Value column names for a scenario; CSV columns are
/// scenario,N,n,<values...>,gap,verdict,note.
const std::vector<std::string>& scenario_columns(Scenario s);

std::string render_csv(Scenario s, const std::vector<ReportRow>& rows);
std::string render_json(Scenario s, const std::vector<ReportRow>& rows);

/// Runs one validated scenario and writes `<output>.csv|.json` (plus `<output>.svg`
/// for plotting scenarios) when cfg.output is set.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// Reference experiments with their acceptance thresholds baked in; `foguel all` runs these.
std::vector<std::pair<std::string, std::string>> canned_scenarios();

}  // namespace foguel
