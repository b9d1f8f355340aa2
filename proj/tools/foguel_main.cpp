// Command-line front door for the Foguel operator experiments.
//
//   foguel <scenario> --config run.json
//   foguel norm --symbol identity --n 1 --N 64,256,1024 --out results/norm
//   foguel all --out results/
//
// Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 config error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "foguel/config.hpp"
#include "foguel/error.hpp"
#include "foguel/scenario.hpp"

namespace {

using nlohmann::ordered_json;

enum ExitCode { kPass = 0, kVerdictFailure = 1, kConfigError = 2, kNumericalFailure = 3 };

void print_error(const std::string& kind, const std::string& field, const std::string& message) {
  ordered_json err;
  err["error"] = {{"kind", kind}, {"field", field}, {"message", message}};
  std::cerr << err.dump() << "\n";
}

void print_rows(foguel::Scenario scenario, const foguel::ScenarioResult& result) {
  const auto& cols = foguel::scenario_columns(scenario);
  std::printf("%-22s %6s %3s", "scenario", "N", "n");
  for (const auto& c : cols) std::printf(" %20s", c.c_str());
  std::printf(" %12s %10s %9s\n", "gap", "verdict", "ms");
  for (const auto& r : result.rows) {
    std::printf("%-22s %6zu %3zu", r.scenario.c_str(), r.N, r.n);
    for (double v : r.values) std::printf(" %20.12g", v);
    std::printf(" %12.3g %10s %9.1f", r.gap, r.verdict.c_str(), r.wall_ms);
    if (!r.note.empty()) std::printf("  %s", r.note.c_str());
    std::printf("\n");
  }
  for (const auto& f : result.files) std::printf("wrote %s\n", f.c_str());
}

int run_one(const foguel::ScenarioConfig& cfg) {
  const auto result = foguel::run_scenario(cfg);
  print_rows(cfg.scenario, result);
  return result.all_pass() ? kPass : kVerdictFailure;
}

int run_all(const std::string& out_dir) {
  int status = kPass;
  for (const auto& [name, text] : foguel::canned_scenarios()) {
    auto j = ordered_json::parse(text);
    if (!out_dir.empty()) j["output"] = (std::filesystem::path(out_dir) / name).string();
    const auto cfg = foguel::config_from_json(j);
    std::printf("== %s\n", name.c_str());
    const auto result = foguel::run_scenario(cfg);
    print_rows(cfg.scenario, result);
    const bool ok = result.all_pass();
    std::printf("%s %s\n\n", ok ? "[PASS]" : "[FAIL]", name.c_str());
    if (!ok) status = kVerdictFailure;
  }
  return status;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size()) throw foguel::ConfigError("N", "expected integers, got \"" + item + "\"");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norms and modulus spectra of Foguel operators on finite sections"};
  app.set_version_flag("--version", "foguel 0.1.0");

  std::string scenario;
  std::string config_path;
  std::string symbol;
  std::optional<std::size_t> n;
  std::string Ns;
  std::optional<std::size_t> d;
  std::optional<double> tol;
  std::optional<double> delta0;
  std::optional<double> delta1;
  std::optional<std::size_t> budget;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::string mode;
  bool c_symmetric = false;

  app.add_option("scenario", scenario,
                 "norm | spectrum | verify-mapping | power-bound | halmos | identity-gap | "
                 "shift-counterexample | sweep | plot-mapping | all")
      ->required();
  app.add_option("--config", config_path, "JSON config file (one object)");
  app.add_option("--symbol", symbol, "symbol: zero, identity, halmos, or a JSON object");
  app.add_option("--n", n, "order / power of the Foguel operator");
  app.add_option("--N", Ns, "truncation size, or a comma-separated increasing list");
  app.add_option("--d", d, "coefficient dimension");
  app.add_option("--tol", tol, "matching / gap tolerance");
  app.add_option("--delta0", delta0, "exclusion radius around 0");
  app.add_option("--delta1", delta1, "exclusion radius around 1");
  app.add_option("--budget", budget, "artifact budget for mapping checks");
  app.add_option("--out", out, "output path prefix (a directory for `all`)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "seed for random symbols");
  app.add_option("--mode", mode, "sweep mode: norm, mapping or power");
  app.add_flag("--c-symmetric", c_symmetric, "assert the symbol is C-symmetric (stronger form)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scenario == "all") return run_all(out);

    ordered_json j = ordered_json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw foguel::ConfigError("--config", "cannot read " + config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      j = foguel::parse_config_json(buf.str());
      if (!j.is_object()) throw foguel::ConfigError("", "config must be a JSON object");
      if (j.contains("scenario") && j["scenario"].is_string() && j["scenario"] != scenario) {
        throw foguel::ConfigError("scenario", "config says \"" + j["scenario"].get<std::string>() +
                                                  "\" but the command line says \"" + scenario + "\"");
      }
    }
    j["scenario"] = scenario;
    if (!symbol.empty()) j["symbol"] = foguel::symbol_to_json(foguel::parse_symbol_text(symbol));
    if (n) j["n"] = *n;
    if (!Ns.empty()) {
      const auto list = parse_size_list(Ns);
      if (list.size() == 1) {
        j["N"] = list.front();
      } else {
        j["N"] = list;
      }
    }
    if (d) j["d"] = *d;
    if (tol) j["tol"] = *tol;
    if (delta0) j["delta0"] = *delta0;
    if (delta1) j["delta1"] = *delta1;
    if (budget) j["artifact_budget"] = *budget;
    if (!out.empty()) j["output"] = out;
    if (!format.empty()) j["format"] = format;
    if (seed) j["seed"] = *seed;
    if (!mode.empty()) j["mode"] = mode;
    if (c_symmetric) j["c_symmetric"] = true;

    return run_one(foguel::config_from_json(j));
  } catch (const foguel::ConfigError& e) {
    print_error("config", e.field(), e.what());
    return kConfigError;
  } catch (const foguel::ConvergenceError& e) {
    print_error("numerical", "", e.what());
    return kNumericalFailure;
  } catch (const foguel::DimensionError& e) {
    print_error("numerical", "", e.what());
    return kNumericalFailure;
  } catch (const std::exception& e) {
    print_error("numerical", "", e.what());
    return kNumericalFailure;
  }
}
