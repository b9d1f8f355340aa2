#include "foguel/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>

#include "foguel/error.hpp"
#include "foguel/svd.hpp"

namespace foguel {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<Scenario, std::string_view>, 9> kScenarioNames = {{
    {Scenario::kNorm, "norm"},
    {Scenario::kSpectrum, "spectrum"},
    {Scenario::kVerifyMapping, "verify-mapping"},
    {Scenario::kPowerBound, "power-bound"},
    {Scenario::kHalmos, "halmos"},
    {Scenario::kIdentityGap, "identity-gap"},
    {Scenario::kShiftCounterexample, "shift-counterexample"},
    {Scenario::kSweep, "sweep"},
    {Scenario::kPlotMapping, "plot-mapping"},
}};

const std::set<std::string, std::less<>> kKnownKeys = {
    "scenario", "symbol", "n",    "N",    "d",    "tol",  "delta0",     "delta1",
    "artifact_budget", "output", "format", "seed", "mode", "c_symmetric"};

std::size_t to_size(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(field, "expected a nonnegative integer");
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  const auto v = j.get<std::int64_t>();
  if (v < 0) throw ConfigError(field, "expected a nonnegative integer, got " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

double to_real(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field, "expected a finite number");
  return v;
}

Complex to_complex(const json& j, const std::string& field) {
  if (j.is_number()) return {to_real(j, field), 0.0};
  if (j.is_array() && j.size() == 2) return {to_real(j[0], field), to_real(j[1], field)};
  throw ConfigError(field, "expected a number or an [re, im] pair");
}

std::vector<Complex> to_complex_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field, "expected an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(to_complex(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

ordered_json complex_to_json(const Complex& z) { return ordered_json::array({z.real(), z.imag()}); }

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed,
                    const std::string& prefix) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(prefix + key, "unknown key");
    }
  }
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string_view scenario_name(Scenario s) {
  for (const auto& [value, name] : kScenarioNames)
    if (value == s) return name;
  return "unknown";
}

std::optional<Scenario> scenario_from_name(std::string_view name) {
  for (const auto& [value, n] : kScenarioNames)
    if (n == name) return value;
  return std::nullopt;
}

std::string_view sweep_mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::kNorm: return "norm";
    case SweepMode::kMapping: return "mapping";
    case SweepMode::kPower: return "power";
  }
  return "norm";
}

SymbolSource symbol_from_json(const json& j) {
  if (j.is_string()) return parse_symbol_text(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("symbol", "expected an object with a \"kind\" tag");
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("symbol.kind", "missing or not a string");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "zero") {
    reject_unknown(j, {"kind"}, "symbol.");
    return OperatorSpec::zero();
  }
  if (kind == "identity") {
    reject_unknown(j, {"kind"}, "symbol.");
    return OperatorSpec::identity();
  }
  if (kind == "scaled-identity") {
    reject_unknown(j, {"kind", "c"}, "symbol.");
    if (!j.contains("c")) throw ConfigError("symbol.c", "required for scaled-identity");
    return OperatorSpec::scaled_identity(to_complex(j["c"], "symbol.c"));
  }
  if (kind == "diagonal") {
    reject_unknown(j, {"kind", "values"}, "symbol.");
    if (!j.contains("values")) throw ConfigError("symbol.values", "required for diagonal");
    return OperatorSpec::diagonal(to_complex_list(j["values"], "symbol.values"));
  }
  if (kind == "projection") {
    reject_unknown(j, {"kind", "indices"}, "symbol.");
    if (!j.contains("indices")) throw ConfigError("symbol.indices", "required for projection");
    const json& idx = j["indices"];
    if (idx.is_string()) {
      if (idx.get<std::string>() != "halmos") {
        throw ConfigError("symbol.indices", "expected an integer array or \"halmos\"");
      }
      return OperatorSpec::halmos_projection();
    }
    if (!idx.is_array()) throw ConfigError("symbol.indices", "expected an integer array");
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < idx.size(); ++i)
      indices.push_back(to_size(idx[i], "symbol.indices[" + std::to_string(i) + "]"));
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return OperatorSpec::projection(std::move(indices));
  }
  if (kind == "hankel") {
    reject_unknown(j, {"kind", "symbol"}, "symbol.");
    if (!j.contains("symbol")) throw ConfigError("symbol.symbol", "required for hankel");
    return OperatorSpec::hankel(to_complex_list(j["symbol"], "symbol.symbol"));
  }
  if (kind == "explicit") {
    reject_unknown(j, {"kind", "rows"}, "symbol.");
    if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].empty()) {
      throw ConfigError("symbol.rows", "expected a nonempty array of rows");
    }
    const std::size_t n = j["rows"].size();
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      const auto row = to_complex_list(j["rows"][r], "symbol.rows[" + std::to_string(r) + "]");
      if (row.size() != n) throw ConfigError("symbol.rows", "explicit matrix must be square");
      for (std::size_t c = 0; c < n; ++c) m(r, c) = row[c];
    }
    return OperatorSpec::explicit_matrix(std::move(m));
  }
  if (kind == "random-contraction") {
    reject_unknown(j, {"kind", "size", "symmetric"}, "symbol.");
    RandomContraction rc;
    if (j.contains("size")) rc.size = to_size(j["size"], "symbol.size");
    if (rc.size < 1) throw ConfigError("symbol.size", "must be positive");
    if (j.contains("symmetric")) {
      if (!j["symmetric"].is_boolean()) throw ConfigError("symbol.symmetric", "expected a boolean");
      rc.symmetric = j["symmetric"].get<bool>();
    }
    return rc;
  }
  throw ConfigError("symbol.kind", "unknown kind \"" + kind + "\"");
}

SymbolSource parse_symbol_text(std::string_view text) {
  if (text == "zero") return OperatorSpec::zero();
  if (text == "identity") return OperatorSpec::identity();
  if (text == "halmos") return OperatorSpec::halmos_projection();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("symbol", "malformed symbol text at " + line_column(text, e.byte));
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "zero" || s == "identity" || s == "halmos") return parse_symbol_text(s);
    throw ConfigError("symbol", "unknown shorthand \"" + s + "\"");
  }
  return symbol_from_json(j);
}

ordered_json symbol_to_json(const SymbolSource& symbol) {
  if (const auto* rc = std::get_if<RandomContraction>(&symbol)) {
    return {{"kind", "random-contraction"}, {"size", rc->size}, {"symmetric", rc->symmetric}};
  }
  const auto& spec = std::get<OperatorSpec>(symbol);
  ordered_json out;
  out["kind"] = spec.kind_name();
  if (const auto* s = std::get_if<symbol::ScaledIdentity>(&spec.kind)) {
    out["c"] = complex_to_json(s->factor);
  } else if (const auto* s = std::get_if<symbol::Diagonal>(&spec.kind)) {
    out["values"] = ordered_json::array();
    for (const auto& v : s->values) out["values"].push_back(complex_to_json(v));
  } else if (const auto* s = std::get_if<symbol::Projection>(&spec.kind)) {
    if (s->halmos) {
      out["indices"] = "halmos";
    } else {
      std::vector<std::size_t> idx = s->indices;
      std::sort(idx.begin(), idx.end());
      out["indices"] = idx;
    }
  } else if (const auto* s = std::get_if<symbol::Hankel>(&spec.kind)) {
    out["symbol"] = ordered_json::array();
    for (const auto& v : s->coefficients) out["symbol"].push_back(complex_to_json(v));
  } else if (const auto* s = std::get_if<symbol::Explicit>(&spec.kind)) {
    out["rows"] = ordered_json::array();
    for (std::size_t r = 0; r < s->matrix.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (const auto& v : s->matrix.row(r)) row.push_back(complex_to_json(v));
      out["rows"].push_back(std::move(row));
    }
  }
  return out;
}

ComplexMatrix random_contraction(std::size_t size, bool symmetric, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> radius(0.25, 1.0);
  ComplexMatrix x(size, size);
  for (auto& z : x.data()) z = {normal(rng), normal(rng)};
  if (symmetric) x = scale(add(x, transpose(x)), 0.5);
  const double norm = operator_norm(x);
  return scale(x, radius(rng) / norm);
}

OperatorSpec resolve_symbol(const SymbolSource& symbol, const TruncationConfig& trunc,
                            std::uint64_t seed) {
  if (const auto* spec = std::get_if<OperatorSpec>(&symbol)) {
    OperatorSpec out = *spec;
    out.coefficient_dim = trunc.d;
    return out;
  }
  const auto& rc = std::get<RandomContraction>(symbol);
  const std::size_t dim = trunc.dimension();
  if (rc.size > dim) {
    throw DimensionError("random contraction of size " + std::to_string(rc.size) +
                         " does not fit truncation dimension " + std::to_string(dim));
  }
  ComplexMatrix padded(dim, dim);
  set_block(padded, 0, 0, random_contraction(rc.size, rc.symmetric, seed));
  OperatorSpec out = OperatorSpec::explicit_matrix(std::move(padded));
  out.coefficient_dim = trunc.d;
  return out;
}

ScenarioConfig config_from_json(const ordered_json& oj) {
  const json j = oj;
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown key");
  }
  ScenarioConfig cfg;
  if (!j.contains("scenario") || !j["scenario"].is_string()) {
    throw ConfigError("scenario", "missing or not a string");
  }
  const auto scenario = scenario_from_name(j["scenario"].get<std::string>());
  if (!scenario) {
    throw ConfigError("scenario", "unknown scenario \"" + j["scenario"].get<std::string>() + "\"");
  }
  cfg.scenario = *scenario;

  if (j.contains("symbol")) cfg.symbol = symbol_from_json(j["symbol"]);
  if (j.contains("n")) cfg.n = to_size(j["n"], "n");
  if (j.contains("N")) {
    const json& nj = j["N"];
    if (nj.is_array()) {
      if (nj.empty()) throw ConfigError("N", "list must be nonempty");
      for (std::size_t i = 0; i < nj.size(); ++i)
        cfg.Ns.push_back(to_size(nj[i], "N[" + std::to_string(i) + "]"));
    } else {
      cfg.Ns.push_back(to_size(nj, "N"));
    }
  }
  if (j.contains("d")) cfg.d = to_size(j["d"], "d");
  if (j.contains("tol")) cfg.tol = to_real(j["tol"], "tol");
  if (j.contains("delta0")) cfg.delta0 = to_real(j["delta0"], "delta0");
  if (j.contains("delta1")) cfg.delta1 = to_real(j["delta1"], "delta1");
  if (j.contains("artifact_budget")) cfg.artifact_budget = to_size(j["artifact_budget"], "artifact_budget");
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw ConfigError("output", "expected a path string");
    cfg.output = j["output"].get<std::string>();
  }
  if (j.contains("format")) {
    const std::string f = j["format"].is_string() ? j["format"].get<std::string>() : "";
    if (f == "csv") {
      cfg.format = OutputFormat::kCsv;
    } else if (f == "json") {
      cfg.format = OutputFormat::kJson;
    } else {
      throw ConfigError("format", "expected \"csv\" or \"json\"");
    }
  }
  if (j.contains("seed")) cfg.seed = to_size(j["seed"], "seed");
  if (j.contains("mode")) {
    const std::string m = j["mode"].is_string() ? j["mode"].get<std::string>() : "";
    if (m == "norm") {
      cfg.mode = SweepMode::kNorm;
    } else if (m == "mapping") {
      cfg.mode = SweepMode::kMapping;
    } else if (m == "power") {
      cfg.mode = SweepMode::kPower;
    } else {
      throw ConfigError("mode", "expected \"norm\", \"mapping\" or \"power\"");
    }
  }
  if (j.contains("c_symmetric")) {
    if (!j["c_symmetric"].is_boolean()) throw ConfigError("c_symmetric", "expected a boolean");
    cfg.assert_c_symmetric = j["c_symmetric"].get<bool>();
  }

  // Cross-field validation.
  if (cfg.d < 1) throw ConfigError("d", "must be at least 1");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol", "must be positive");
  if (cfg.delta0 < 0.0) throw ConfigError("delta0", "must be nonnegative");
  if (cfg.delta1 < 0.0) throw ConfigError("delta1", "must be nonnegative");

  const bool implied_symbol = cfg.scenario == Scenario::kHalmos ||
                              cfg.scenario == Scenario::kIdentityGap ||
                              cfg.scenario == Scenario::kShiftCounterexample ||
                              cfg.scenario == Scenario::kPlotMapping;
  if (implied_symbol && cfg.symbol) {
    throw ConfigError("symbol", "not accepted: scenario " +
                                    std::string(scenario_name(cfg.scenario)) +
                                    " fixes its own symbol");
  }
  if (!implied_symbol && !cfg.symbol) {
    throw ConfigError("symbol", "required for scenario " + std::string(scenario_name(cfg.scenario)));
  }
  if (cfg.scenario == Scenario::kHalmos) cfg.symbol = OperatorSpec::halmos_projection();
  if (cfg.scenario == Scenario::kIdentityGap) cfg.symbol = OperatorSpec::identity();

  const bool needs_power = cfg.scenario == Scenario::kPowerBound ||
                           cfg.scenario == Scenario::kHalmos ||
                           (cfg.scenario == Scenario::kSweep && cfg.mode == SweepMode::kPower);
  if (needs_power && cfg.n < 1) throw ConfigError("n", "must be at least 1 for this scenario");

  if (cfg.scenario != Scenario::kPlotMapping) {
    if (cfg.Ns.empty()) throw ConfigError("N", "required for scenario " +
                                                    std::string(scenario_name(cfg.scenario)));
    const std::size_t min_n = cfg.scenario == Scenario::kIdentityGap          ? 8
                              : cfg.scenario == Scenario::kShiftCounterexample ? 3
                                                                               : 2;
    for (std::size_t i = 0; i < cfg.Ns.size(); ++i) {
      if (cfg.Ns[i] < min_n) {
        throw ConfigError("N", "must be at least " + std::to_string(min_n) + ", got " +
                                   std::to_string(cfg.Ns[i]));
      }
      if (i > 0 && cfg.Ns[i] <= cfg.Ns[i - 1]) throw ConfigError("N", "list must be increasing");
      // Sweeps report the cap as a truncation notice instead of rejecting.
      if (cfg.scenario != Scenario::kSweep && cfg.Ns[i] * cfg.d > max_dimension()) {
        throw ConfigError("N", "N*d = " + std::to_string(cfg.Ns[i] * cfg.d) +
                                   " exceeds dimension cap " + std::to_string(max_dimension()));
      }
    }
  } else if (!cfg.Ns.empty()) {
    throw ConfigError("N", "not accepted for scenario plot-mapping");
  }
  if (cfg.scenario == Scenario::kSweep && cfg.symbol &&
      std::holds_alternative<RandomContraction>(*cfg.symbol)) {
    throw ConfigError("symbol", "random symbols are fixed-size and cannot be swept over N");
  }
  if (cfg.symbol) {
    if (const auto* rc = std::get_if<RandomContraction>(&*cfg.symbol)) {
      for (std::size_t N : cfg.Ns)
        if (rc->size > N * cfg.d) throw ConfigError("symbol.size", "larger than N*d");
    }
  }
  return cfg;
}

ordered_json parse_config_json(std::string_view text) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError("", "malformed JSON at " + line_column(text, e.byte));
  }
}

ScenarioConfig parse_config(std::string_view text) { return config_from_json(parse_config_json(text)); }

}  // namespace foguel
