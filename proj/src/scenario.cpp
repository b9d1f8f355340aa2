#include "foguel/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>

#include "foguel/error.hpp"
#include "foguel/plot.hpp"
#include "foguel/spectral.hpp"
#include "foguel/svd.hpp"

namespace foguel {

using nlohmann::ordered_json;

namespace {

constexpr double kUpperSlack = 1e-9;

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ReportRow make_row(const ScenarioConfig& cfg, std::size_t N, std::size_t n) {
  ReportRow row;
  row.scenario = std::string(scenario_name(cfg.scenario));
  row.N = N;
  row.n = n;
  return row;
}

/// ‖T‖ of the symbol: exact when the symbol description determines it, else the truncated norm.
double symbol_norm(const OperatorSpec& spec, const TruncationConfig& trunc) {
  if (auto exact = exact_symbol_norm(spec, trunc)) return *exact;
  return operator_norm(materialize(spec, trunc));
}

MappingOptions mapping_options(const ScenarioConfig& cfg) {
  MappingOptions o;
  o.tol = cfg.tol;
  o.delta0 = cfg.delta0;
  o.delta1 = cfg.delta1;
  o.artifact_budget = cfg.artifact_budget;
  o.assert_c_symmetric = cfg.assert_c_symmetric;
  return o;
}

std::string describe_unmatched(const MappingVerdict& v) {
  std::string out = v.note;
  for (std::size_t i = 0; i < v.unmatched.size() && i < 5; ++i) {
    if (!out.empty()) out += "; ";
    out += "unmatched " + number(v.unmatched[i].value);
  }
  return out;
}

void run_norm(const ScenarioConfig& cfg, ScenarioResult& result) {
  for (std::size_t N : cfg.Ns) {
    Stopwatch clock;
    const TruncationConfig trunc{N, cfg.d};
    const OperatorSpec spec = resolve_symbol(*cfg.symbol, trunc, cfg.seed);
    const double computed = operator_norm(assemble_foguel(spec, cfg.n, trunc).matrix);
    const double t = symbol_norm(spec, trunc);
    const double reference = foguel_norm_formula(t);
    ReportRow row = make_row(cfg, N, cfg.n);
    row.values = {computed, t, reference};
    row.gap = reference - computed;
    row.pass = computed <= reference + kUpperSlack && row.gap <= cfg.tol;
    row.verdict = row.pass ? "pass" : "fail";
    row.wall_ms = clock.elapsed_ms();
    result.rows.push_back(std::move(row));
  }
}

void run_spectrum(const ScenarioConfig& cfg, ScenarioResult& result, PlotData& plot) {
  for (std::size_t N : cfg.Ns) {
    Stopwatch clock;
    const TruncationConfig trunc{N, cfg.d};
    const OperatorSpec spec = resolve_symbol(*cfg.symbol, trunc, cfg.seed);
    const auto sigma = singular_values(assemble_foguel(spec, cfg.n, trunc).matrix);
    const auto symbol_sigma = singular_values(materialize(spec, trunc));
    const MappingVerdict verdict = verify_mapping(sigma, symbol_sigma, mapping_options(cfg));
    const double ms = clock.elapsed_ms();
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const double v = sigma[i];
      const auto it = std::lower_bound(verdict.predicted.begin(), verdict.predicted.end(), v);
      double nearest = verdict.predicted.front();
      if (it != verdict.predicted.end()) nearest = *it;
      if (it != verdict.predicted.begin() &&
          (it == verdict.predicted.end() || v - *std::prev(it) <= *it - v)) {
        nearest = *std::prev(it);
      }
      ReportRow row = make_row(cfg, N, cfg.n);
      const double dist = std::abs(v - nearest);
      row.values = {static_cast<double>(i), v, nearest};
      row.gap = dist;
      const bool excluded = v < cfg.delta0 || std::abs(v - 1.0) < cfg.delta1;
      row.verdict = excluded ? "excluded" : dist <= cfg.tol ? "matched" : "unmatched";
      row.pass = verdict.passed || row.verdict != "unmatched";
      row.wall_ms = i == 0 ? ms : 0.0;
      result.rows.push_back(std::move(row));
    }
    if (!verdict.passed && !result.rows.empty()) {
      result.rows.back().pass = false;
      result.rows.back().note = "mapping check failed: " + describe_unmatched(verdict);
    }
    plot = spectrum_scatter_data(sigma, verdict.predicted,
                                 "singular values of the Foguel truncation, N=" + std::to_string(N));
  }
}

void run_verify(const ScenarioConfig& cfg, ScenarioResult& result) {
  for (std::size_t N : cfg.Ns) {
    Stopwatch clock;
    const TruncationConfig trunc{N, cfg.d};
    const OperatorSpec spec = resolve_symbol(*cfg.symbol, trunc, cfg.seed);
    const MappingVerdict v = verify_spectral_mapping(spec, cfg.n, trunc, mapping_options(cfg));
    ReportRow row = make_row(cfg, N, cfg.n);
    row.values = {static_cast<double>(v.survivors), static_cast<double>(v.matched),
                  static_cast<double>(v.unmatched.size()), v.max_matched_distance,
                  static_cast<double>(v.artifact_budget)};
    row.gap = v.max_matched_distance;
    row.pass = v.passed;
    row.verdict = v.passed ? "pass" : "fail";
    row.note = describe_unmatched(v);
    row.wall_ms = clock.elapsed_ms();
    result.rows.push_back(std::move(row));
  }
}

void run_power(const ScenarioConfig& cfg, ScenarioResult& result) {
  for (std::size_t N : cfg.Ns) {
    const TruncationConfig trunc{N, cfg.d};
    const OperatorSpec spec = resolve_symbol(*cfg.symbol, trunc, cfg.seed);
    const double t = symbol_norm(spec, trunc);
    for (std::size_t k = 1; k <= cfg.n; ++k) {
      Stopwatch clock;
      const FoguelAssembly power = assemble_foguel_power(spec, k, trunc);
      const double computed = operator_norm(power.matrix);
      const double symbol_power = operator_norm(get_block(
          power.matrix, 0, trunc.dimension(), trunc.dimension(), trunc.dimension()));
      const double bound = power_norm_bound(t, k);
      ReportRow row = make_row(cfg, N, k);
      row.values = {computed, symbol_power, bound};
      row.gap = bound - computed;
      row.pass = computed <= bound + kUpperSlack;
      row.verdict = row.pass ? "pass" : "fail";
      row.wall_ms = clock.elapsed_ms();
      result.rows.push_back(std::move(row));
    }
  }
}

void run_halmos(const ScenarioConfig& cfg, ScenarioResult& result) {
  const OperatorSpec spec = OperatorSpec::halmos_projection();
  for (std::size_t N : cfg.Ns) {
    TruncationConfig trunc{N, cfg.d};
    OperatorSpec s = spec;
    s.coefficient_dim = cfg.d;
    for (std::size_t k = 1; k <= cfg.n; ++k) {
      Stopwatch clock;
      const ComplexMatrix pk = power_symbol(s, k, trunc);
      const double pk_norm = operator_norm(pk);
      const ComplexMatrix gram = multiply(adjoint(pk), pk);
      const double idempotent_defect = operator_norm(subtract(multiply(gram, gram), gram));
      const double computed = operator_norm(assemble_foguel_power(s, k, trunc).matrix);
      const double reference = kGoldenRatio;
      ReportRow row = make_row(cfg, N, k);
      row.values = {computed, reference, pk_norm, idempotent_defect};
      row.gap = reference - computed;
      row.pass = computed <= reference + kUpperSlack && row.gap <= cfg.tol &&
                 std::abs(pk_norm - 1.0) <= 1e-9 && idempotent_defect <= 1e-9;
      row.verdict = row.pass ? "pass" : "fail";
      row.wall_ms = clock.elapsed_ms();
      result.rows.push_back(std::move(row));
    }
  }
}

void run_identity_gap(const ScenarioConfig& cfg, ScenarioResult& result, PlotData& plot) {
  std::optional<std::size_t> previous;
  for (std::size_t N : cfg.Ns) {
    Stopwatch clock;
    const IdentityGapReport g = gap_check_identity({N, cfg.d});
    ReportRow row = make_row(cfg, N, 1);
    row.values = {g.norm, g.formula_norm, static_cast<double>(g.interior_count),
                  g.min_distance_to_one};
    row.gap = g.formula_norm - g.norm;
    const bool stable = !previous || g.interior_count <= *previous;
    row.pass = g.norm <= g.formula_norm + kUpperSlack && stable;
    row.verdict = row.pass ? "pass" : "fail";
    if (!stable) row.note = "interior count grew";
    row.wall_ms = clock.elapsed_ms();
    result.rows.push_back(std::move(row));
    previous = g.interior_count;
    const std::vector<double> predicted{0.0, 1.0 / kGoldenRatio, kGoldenRatio};
    plot = spectrum_scatter_data(g.sigma, predicted,
                                 "singular values of R_I, N=" + std::to_string(N));
  }
}

void run_shift(const ScenarioConfig& cfg, ScenarioResult& result) {
  for (std::size_t N : cfg.Ns) {
    Stopwatch clock;
    const ShiftCounterexampleReport r = counterexample_check_shift({N, cfg.d});
    const auto zeros = std::count_if(r.shift_sigma.begin(), r.shift_sigma.end(),
                                     [](double s) { return s < kZeroThreshold; });
    ReportRow row = make_row(cfg, N, 1);
    row.values = {r.eigenpair_residual, static_cast<double>(zeros),
                  static_cast<double>(r.stronger_form.unmatched.size()),
                  r.shift_is_c_symmetric ? 1.0 : 0.0};
    row.gap = r.eigenpair_residual;
    const bool exact = r.eigenpair_residual <= 1e-12;
    row.verdict = exact ? "eigenpair-exact" : "eigenpair-inexact";
    row.pass = exact && r.shift_sigma_defect_only && !r.shift_is_c_symmetric &&
               !r.stronger_form.passed;
    row.note = r.stronger_form.passed ? "stronger form unexpectedly held"
                                      : "stronger form fails as expected";
    row.wall_ms = clock.elapsed_ms();
    result.rows.push_back(std::move(row));
  }
}

void run_sweep(const ScenarioConfig& cfg, ScenarioResult& result, PlotData& plot) {
  OperatorSpec spec = std::get<OperatorSpec>(*cfg.symbol);
  spec.coefficient_dim = cfg.d;
  Stopwatch clock;
  const SweepTable table =
      convergence_sweep(spec, cfg.n, cfg.Ns, cfg.mode, cfg.d, mapping_options(cfg));
  const double per_row = table.rows.empty() ? 0.0 : clock.elapsed_ms() / table.rows.size();
  std::optional<double> previous;
  std::vector<double> xs;
  std::vector<double> norms;
  double reference = 0.0;
  for (const SweepRow& r : table.rows) {
    ReportRow row = make_row(cfg, r.N, cfg.n);
    row.values = {r.norm, r.formula, r.formula_exact ? 1.0 : 0.0};
    row.gap = r.gap;
    const bool monotone = !previous || r.norm >= *previous - 1e-12;
    const bool bounded = !r.formula_exact || r.norm <= r.formula + kUpperSlack;
    const bool mapping_ok = cfg.mode != SweepMode::kMapping || r.mapping_summary.starts_with("pass");
    row.pass = monotone && bounded && mapping_ok;
    row.verdict = row.pass ? "pass" : "fail";
    row.note = r.mapping_summary;
    if (!monotone) row.note += (row.note.empty() ? "" : "; ") + std::string("norm decreased");
    row.wall_ms = per_row;
    previous = r.norm;
    xs.push_back(static_cast<double>(r.N));
    norms.push_back(r.norm);
    reference = r.formula;
    result.rows.push_back(std::move(row));
  }
  if (!table.truncation_notice.empty()) {
    ReportRow row = make_row(cfg, 0, cfg.n);
    row.values = {0.0, 0.0, 0.0};
    row.verdict = "truncated";
    row.pass = true;
    row.note = table.truncation_notice;
    result.rows.push_back(std::move(row));
  }
  if (!norms.empty()) {
    plot = convergence_data(xs, norms, reference,
                            "finite-section convergence (" + spec.kind_name() + ", n=" +
                                std::to_string(cfg.n) + ")");
  }
}

void run_plot_mapping(const ScenarioConfig& cfg, ScenarioResult& result, PlotData& plot) {
  plot = mapping_curve_data();
  const std::string svg = render_plot(PlotKind::kMappingCurve, plot);
  const PlotFrame frame{plot.x_min, plot.x_max, plot.y_min, plot.y_max};
  for (const auto& [x, y] : {std::pair{1.0, 0.0}, std::pair{kGoldenRatio, 1.0}}) {
    ReportRow row = make_row(cfg, 0, 0);
    const double dist = polyline_distance(svg, "curve-1", frame.px(x), frame.py(y));
    row.values = {x, y, spectral_map(x), dist};
    row.gap = dist;
    row.pass = dist <= 1.0;
    row.verdict = row.pass ? "pass" : "fail";
    result.rows.push_back(std::move(row));
  }
}

std::filesystem::path with_suffix(const std::string& prefix, const char* suffix) {
  return std::filesystem::path(prefix + suffix);
}

}  // namespace

bool ScenarioResult::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

const std::vector<std::string>& scenario_columns(Scenario s) {
  static const std::map<Scenario, std::vector<std::string>> kColumns = {
      {Scenario::kNorm, {"computed_norm", "symbol_norm", "reference_norm"}},
      {Scenario::kSpectrum, {"index", "sigma", "nearest_predicted"}},
      {Scenario::kVerifyMapping,
       {"survivors", "matched", "unmatched", "max_matched_distance", "artifact_budget"}},
      {Scenario::kPowerBound, {"computed_norm", "symbol_power_norm", "reference_bound"}},
      {Scenario::kHalmos, {"computed_norm", "reference_norm", "pn_norm", "idempotent_defect"}},
      {Scenario::kIdentityGap,
       {"computed_norm", "reference_norm", "interior_count", "min_distance_to_one"}},
      {Scenario::kShiftCounterexample,
       {"eigenpair_residual", "shift_zero_count", "stronger_unmatched", "shift_c_symmetric"}},
      {Scenario::kSweep, {"computed_norm", "reference_norm", "formula_exact"}},
      {Scenario::kPlotMapping, {"x", "y_expected", "y_curve", "pixel_distance"}},
  };
  return kColumns.at(s);
}

std::string render_csv(Scenario s, const std::vector<ReportRow>& rows) {
  std::string out = "scenario,N,n";
  for (const auto& c : scenario_columns(s)) out += "," + c;
  out += ",gap,verdict,note\n";
  for (const auto& r : rows) {
    out += csv_field(r.scenario) + "," + std::to_string(r.N) + "," + std::to_string(r.n);
    for (double v : r.values) out += "," + number(v);
    out += "," + number(r.gap) + "," + csv_field(r.verdict) + "," + csv_field(r.note) + "\n";
  }
  return out;
}

std::string render_json(Scenario s, const std::vector<ReportRow>& rows) {
  ordered_json arr = ordered_json::array();
  const auto& cols = scenario_columns(s);
  for (const auto& r : rows) {
    ordered_json o;
    o["scenario"] = r.scenario;
    o["N"] = r.N;
    o["n"] = r.n;
    for (std::size_t i = 0; i < cols.size() && i < r.values.size(); ++i) o[cols[i]] = r.values[i];
    o["gap"] = r.gap;
    o["verdict"] = r.verdict;
    o["note"] = r.note;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioResult result;
  PlotData plot;
  std::optional<PlotKind> plot_kind;
  switch (cfg.scenario) {
    case Scenario::kNorm: run_norm(cfg, result); break;
    case Scenario::kSpectrum:
      run_spectrum(cfg, result, plot);
      plot_kind = PlotKind::kSpectrumScatter;
      break;
    case Scenario::kVerifyMapping: run_verify(cfg, result); break;
    case Scenario::kPowerBound: run_power(cfg, result); break;
    case Scenario::kHalmos: run_halmos(cfg, result); break;
    case Scenario::kIdentityGap:
      run_identity_gap(cfg, result, plot);
      plot_kind = PlotKind::kSpectrumScatter;
      break;
    case Scenario::kShiftCounterexample: run_shift(cfg, result); break;
    case Scenario::kSweep:
      run_sweep(cfg, result, plot);
      plot_kind = PlotKind::kConvergence;
      break;
    case Scenario::kPlotMapping:
      run_plot_mapping(cfg, result, plot);
      plot_kind = PlotKind::kMappingCurve;
      break;
  }

  if (!cfg.output.empty()) {
    const auto parent = std::filesystem::path(cfg.output).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    const bool json = cfg.format == OutputFormat::kJson;
    const auto table_path = with_suffix(cfg.output, json ? ".json" : ".csv");
    write_file_atomic(table_path, json ? render_json(cfg.scenario, result.rows)
                                       : render_csv(cfg.scenario, result.rows));
    result.files.push_back(table_path.string());
    if (plot_kind && !plot.series.empty()) {
      const auto svg_path = with_suffix(cfg.output, ".svg");
      emit_plot(*plot_kind, plot, svg_path);
      result.files.push_back(svg_path.string());
    }
  }
  return result;
}

std::vector<std::pair<std::string, std::string>> canned_scenarios() {
  return {
      {"halmos", R"({"scenario":"halmos","N":729,"n":4,"tol":0.05})"},
      {"norm-identity-n1",
       R"({"scenario":"sweep","symbol":{"kind":"identity"},"n":1,"N":[64,256,1024],"mode":"norm"})"},
      {"norm-identity-n2",
       R"({"scenario":"sweep","symbol":{"kind":"identity"},"n":2,"N":[64,256,1024],"mode":"norm"})"},
      {"norm-zero", R"({"scenario":"norm","symbol":{"kind":"zero"},"n":1,"N":256})"},
      {"power-identity",
       R"({"scenario":"power-bound","symbol":{"kind":"identity"},"n":3,"N":1024,"tol":0.02})"},
      {"power-random",
       R"({"scenario":"power-bound","symbol":{"kind":"random-contraction","size":16,"symmetric":true},"n":6,"N":128,"seed":7})"},
      {"mapping-diagonal",
       R"({"scenario":"verify-mapping","symbol":{"kind":"diagonal","values":[2,0.5]},"n":1,"N":[64,128,256],"tol":0.05,"artifact_budget":0})"},
      {"mapping-identity",
       R"({"scenario":"verify-mapping","symbol":{"kind":"identity"},"n":1,"N":[64,128,256],"tol":0.05,"artifact_budget":0})"},
      {"spectrum-identity",
       R"({"scenario":"spectrum","symbol":{"kind":"identity"},"n":1,"N":256})"},
      {"shift-counterexample", R"({"scenario":"shift-counterexample","N":16})"},
      {"identity-gap", R"({"scenario":"identity-gap","N":[64,128,256]})"},
      {"plot-mapping", R"({"scenario":"plot-mapping"})"},
  };
}

}  // namespace foguel
