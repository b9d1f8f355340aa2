#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "foguel/operators.hpp"
#include "foguel/spectral.hpp"

namespace foguel {

enum class Scenario {
  kNorm,
  kSpectrum,
  kVerifyMapping,
  kPowerBound,
  kHalmos,
  kIdentityGap,
  kShiftCounterexample,
  kSweep,
  kPlotMapping,
};

enum class OutputFormat { kCsv, kJson };

std::string_view scenario_name(Scenario s);
std::optional<Scenario> scenario_from_name(std::string_view name);
std::string_view sweep_mode_name(SweepMode m);

/// Seeded random contraction of size×size, zero-padded into the truncation.
/// Complex symmetric when `symmetric` is set.
struct RandomContraction {
  std::size_t size = 16;
  bool symmetric = true;
};

using SymbolSource = std::variant<OperatorSpec, RandomContraction>;

struct ScenarioConfig {
  Scenario scenario = Scenario::kNorm;
  std::optional<SymbolSource> symbol;
  std::size_t n = 1;
  std::vector<std::size_t> Ns;
  std::size_t d = 1;
  double tol = 0.05;
  double delta0 = 0.1;
  double delta1 = 0.1;
  std::size_t artifact_budget = 0;
  std::string output;  // path prefix; empty writes no files
  OutputFormat format = OutputFormat::kCsv;
  std::uint64_t seed = 0;
  SweepMode mode = SweepMode::kNorm;
  bool assert_c_symmetric = false;
};

/// Parses and validates a single JSON object. Throws ConfigError naming the
/// offending field, or the line/column of a syntax error.
ScenarioConfig parse_config(std::string_view text);
/// Syntax check only; errors carry the line/column of the first bad byte.
nlohmann::ordered_json parse_config_json(std::string_view text);
ScenarioConfig config_from_json(const nlohmann::ordered_json& j);

/// Canonical textual form of a symbol (kind tag plus parameters).
nlohmann::ordered_json symbol_to_json(const SymbolSource& symbol);
SymbolSource symbol_from_json(const nlohmann::json& j);

/// Shorthand accepted on the command line: "zero", "identity", "halmos", or a JSON object.
SymbolSource parse_symbol_text(std::string_view text);

/// Materializes the symbol for one truncation (random sources draw from `seed`).
OperatorSpec resolve_symbol(const SymbolSource& symbol, const TruncationConfig& trunc,
                            std::uint64_t seed);

/// Seeded complex matrix with operator norm ≤ 1, complex symmetric when requested.
ComplexMatrix random_contraction(std::size_t size, bool symmetric, std::uint64_t seed);

}  // namespace foguel
