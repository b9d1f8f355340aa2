#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "foguel/config.hpp"
#include "foguel/error.hpp"
#include "foguel/operators.hpp"
#include "foguel/scenario.hpp"
#include "foguel/spectral.hpp"
#include "foguel/svd.hpp"

namespace py = pybind11;
using namespace foguel;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix from_numpy(const CArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return ComplexMatrix(rows, cols, std::vector<Complex>(a.data(), a.data() + rows * cols));
}

CArray to_numpy(const ComplexMatrix& m) {
  CArray out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

CArray to_numpy(const ComplexVector& v) {
  CArray out(v.size());
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

// Symbols are passed as their textual form: "identity", "halmos", or a JSON object string.
OperatorSpec spec_from(const std::string& text, std::size_t d, const TruncationConfig& trunc,
                       std::uint64_t seed) {
  auto spec = resolve_symbol(parse_symbol_text(text), trunc, seed);
  spec.coefficient_dim = d;
  return spec;
}

py::dict verdict_dict(const MappingVerdict& v) {
  py::list unmatched;
  for (const auto& u : v.unmatched) unmatched.append(py::make_tuple(u.value, u.distance));
  py::dict d;
  d["passed"] = v.passed;
  d["excluded_zone"] = v.excluded_zone;
  d["artifact_budget"] = v.artifact_budget;
  d["tolerance"] = v.tolerance;
  d["unmatched"] = unmatched;
  d["max_matched_distance"] = v.max_matched_distance;
  d["survivors"] = v.survivors;
  d["matched"] = v.matched;
  d["predicted"] = v.predicted;
  d["note"] = v.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_foguel, m) {
  m.doc() = "Foguel operators on finite sections: norms, modulus spectra, mapping checks";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  m.attr("GOLDEN_RATIO") = kGoldenRatio;

  m.def("singular_values", [](const CArray& a) { return singular_values(from_numpy(a)); });
  m.def("operator_norm", [](const CArray& a) { return operator_norm(from_numpy(a)); });
  m.def("svd", [](const CArray& a) {
    const auto f = svd(from_numpy(a));
    return py::make_tuple(to_numpy(f.u), f.sigma, to_numpy(f.v));
  }, "Returns (U, sigma, V) with A = U diag(sigma) V*.");
  m.def("takagi", [](const CArray& a) {
    const auto f = takagi(from_numpy(a));
    return py::make_tuple(to_numpy(f.u), f.sigma);
  }, "Returns (U, sigma) with A = U diag(sigma) U^T for complex symmetric A.");
  m.def("antilinear_eigenpairs", [](const CArray& a) {
    py::list out;
    for (const auto& p : antilinear_eigenpairs(from_numpy(a))) out.append(py::make_tuple(p.lambda, to_numpy(p.vector)));
    return out;
  });

  m.def("spectral_map", &spectral_map);
  m.def("inverse_spectral_map", [](double s) {
    const auto r = inverse_spectral_map(s);
    return py::make_tuple(r.lower, r.upper);
  });
  m.def("foguel_norm_formula", &foguel_norm_formula);
  m.def("power_norm_bound", &power_norm_bound, py::arg("t"), py::arg("n"));
  m.def("predicted_modulus_spectrum",
        [](const std::vector<double>& sigma) { return predicted_modulus_spectrum(sigma); });
  m.def("halmos_index_set", &halmos_index_set);

  m.def("build_shift", [](std::size_t N, std::size_t power, bool adjoint, std::size_t d) {
    return to_numpy(build_shift({N, d}, power, adjoint));
  }, py::arg("N"), py::arg("power") = 1, py::arg("adjoint") = false, py::arg("d") = 1);
  m.def("materialize", [](const std::string& symbol, std::size_t N, std::size_t d, std::uint64_t seed) {
    const TruncationConfig t{N, d};
    return to_numpy(materialize(spec_from(symbol, d, t, seed), t));
  }, py::arg("symbol"), py::arg("N"), py::arg("d") = 1, py::arg("seed") = 0);
  m.def("assemble_foguel", [](const std::string& symbol, std::size_t n, std::size_t N, std::size_t d,
                              std::uint64_t seed) {
    const TruncationConfig t{N, d};
    return to_numpy(assemble_foguel(spec_from(symbol, d, t, seed), n, t).matrix);
  }, py::arg("symbol"), py::arg("n"), py::arg("N"), py::arg("d") = 1, py::arg("seed") = 0);
  m.def("assemble_foguel_power", [](const std::string& symbol, std::size_t n, std::size_t N,
                                    std::size_t d, std::uint64_t seed) {
    const TruncationConfig t{N, d};
    return to_numpy(assemble_foguel_power(spec_from(symbol, d, t, seed), n, t).matrix);
  }, py::arg("symbol"), py::arg("n"), py::arg("N"), py::arg("d") = 1, py::arg("seed") = 0);
  m.def("power_symbol", [](const std::string& symbol, std::size_t n, std::size_t N, std::size_t d,
                           std::uint64_t seed) {
    const TruncationConfig t{N, d};
    return to_numpy(power_symbol(spec_from(symbol, d, t, seed), n, t));
  }, py::arg("symbol"), py::arg("n"), py::arg("N"), py::arg("d") = 1, py::arg("seed") = 0);
  m.def("build_kr", [](double r, std::size_t N) { return to_numpy(build_kr(r, {N, 1})); });

  m.def("verify_spectral_mapping",
        [](const std::string& symbol, std::size_t n, std::size_t N, double tol, double delta0,
           double delta1, std::size_t artifact_budget, bool c_symmetric) {
          const TruncationConfig t{N, 1};
          MappingOptions opts;
          opts.tol = tol;
          opts.delta0 = delta0;
          opts.delta1 = delta1;
          opts.artifact_budget = artifact_budget;
          opts.assert_c_symmetric = c_symmetric;
          return verdict_dict(verify_spectral_mapping(spec_from(symbol, 1, t, 0), n, t, opts));
        },
        py::arg("symbol"), py::arg("n"), py::arg("N"), py::arg("tol") = 0.05, py::arg("delta0") = 0.1,
        py::arg("delta1") = 0.1, py::arg("artifact_budget") = 0, py::arg("c_symmetric") = false);

  m.def("counterexample_check_shift", [](std::size_t N) {
    const auto r = counterexample_check_shift({N, 1});
    py::dict d;
    d["N"] = r.N;
    d["eigenpair_residual"] = r.eigenpair_residual;
    d["shift_sigma"] = r.shift_sigma;
    d["shift_sigma_defect_only"] = r.shift_sigma_defect_only;
    d["shift_is_c_symmetric"] = r.shift_is_c_symmetric;
    d["stronger_form"] = verdict_dict(r.stronger_form);
    return d;
  });
  m.def("gap_check_identity", [](std::size_t N) {
    const auto r = gap_check_identity({N, 1});
    py::dict d;
    d["N"] = r.N;
    d["norm"] = r.norm;
    d["formula_norm"] = r.formula_norm;
    d["min_distance_to_one"] = r.min_distance_to_one;
    d["interior_count"] = r.interior_count;
    d["sigma"] = r.sigma;
    return d;
  });

  m.def("run_scenario", [](const std::string& config_json) {
    const auto cfg = parse_config(config_json);
    const auto result = run_scenario(cfg);
    const auto& cols = scenario_columns(cfg.scenario);
    py::list rows;
    for (const auto& r : result.rows) {
      py::dict d;
      d["scenario"] = r.scenario;
      d["N"] = r.N;
      d["n"] = r.n;
      for (std::size_t i = 0; i < cols.size() && i < r.values.size(); ++i) d[py::str(cols[i])] = r.values[i];
      d["gap"] = r.gap;
      d["verdict"] = r.verdict;
      d["pass"] = r.pass;
      d["note"] = r.note;
      rows.append(d);
    }
    return py::make_tuple(rows, result.files);
  }, "Runs a scenario from a JSON config string; returns (rows, files written).");
}
