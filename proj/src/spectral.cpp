#include "foguel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "foguel/error.hpp"
#include "foguel/svd.hpp"

namespace foguel {

SpectrumReport modulus_spectrum(const ComplexMatrix& a, std::string source,
                                double zero_threshold) {
  SpectrumReport out;
  out.source = std::move(source);
  out.sigma = singular_values(a);
  out.dimension = out.sigma.size();
  out.zero_count = static_cast<std::size_t>(
      std::count_if(out.sigma.begin(), out.sigma.end(),
                    [&](double s) { return s < zero_threshold; }));
  return out;
}

double spectral_map(double x) {
  if (!(x > 0.0)) throw DimensionError("spectral_map: x must be positive");
  return std::abs(x - 1.0 / x);
}

MappingRoots inverse_spectral_map(double s) {
  if (!(s >= 0.0)) throw DimensionError("inverse_spectral_map: s must be nonnegative");
  const double root = std::hypot(s, 2.0);  // √(s² + 4)
  return {2.0 / (root + s), (root + s) / 2.0};
}

double foguel_norm_formula(double t) {
  if (!(t >= 0.0)) throw DimensionError("foguel_norm_formula: t must be nonnegative");
  return (t + std::hypot(t, 2.0)) / 2.0;
}

double power_norm_bound(double t, std::size_t n) {
  if (n < 1) throw DimensionError("power_norm_bound: n must be at least 1");
  return foguel_norm_formula(static_cast<double>(n) * t);
}

double antilinear_residual(const ComplexMatrix& a, Complex lambda, std::span<const Complex> u,
                           Conjugation kind) {
  if (a.cols() != u.size() || a.rows() != u.size()) {
    throw DimensionError("antilinear_residual: " + a.shape_string() + " matrix with vector of length " +
                         std::to_string(u.size()));
  }
  const double unorm = vector_norm(u);
  if (unorm == 0.0) throw DimensionError("antilinear_residual: zero vector");
  ComplexVector r = multiply(a, u);
  const ComplexVector cu = apply_conjugation(kind, u);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lambda * cu[i];
  return vector_norm(r) / unorm;
}

std::vector<AntilinearPair> antilinear_eigenpairs(const ComplexMatrix& a) {
  if (!a.is_square() || !is_c_symmetric(a, 1e-12)) {
    throw DimensionError("antilinear_eigenpairs: input is not complex symmetric");
  }
  const TakagiResult f = takagi(a);
  std::vector<AntilinearPair> out;
  out.reserve(f.sigma.size());
  for (std::size_t k = 0; k < f.sigma.size(); ++k) {
    ComplexVector v = f.u.column(k);
    const double norm = vector_norm(v);
    for (auto& z : v) z = std::conj(z) / norm;
    out.push_back({f.sigma[k], std::move(v)});
  }
  return out;
}

std::vector<double> predicted_modulus_spectrum(std::span<const double> symbol_sigma) {
  std::vector<double> out{0.0};
  for (double s : symbol_sigma) {
    const auto roots = inverse_spectral_map(std::max(s, 0.0));
    out.push_back(roots.lower);
    out.push_back(roots.upper);
  }
  std::sort(out.begin(), out.end());
  // Merge duplicates that differ only by rounding.
  std::vector<double> merged;
  for (double v : out)
    if (merged.empty() || v - merged.back() > 1e-12 * std::max(1.0, v)) merged.push_back(v);
  return merged;
}

std::vector<double> predicted_modulus_spectrum(const SpectrumReport& symbol_spectrum) {
  return predicted_modulus_spectrum(symbol_spectrum.sigma);
}

namespace {

/// Nearest predicted point; ties go to the smaller one.
double nearest_distance(const std::vector<double>& predicted, double v) {
  const auto it = std::lower_bound(predicted.begin(), predicted.end(), v);
  double best = std::numeric_limits<double>::infinity();
  if (it != predicted.begin()) best = v - *std::prev(it);
  if (it != predicted.end()) best = std::min(best, *it - v);
  return best;
}

}  // namespace

MappingVerdict verify_mapping(std::span<const double> assembly_sigma,
                              std::span<const double> symbol_sigma, const MappingOptions& options) {
  MappingVerdict verdict;
  verdict.excluded_zone = {options.delta0, options.delta1};
  verdict.artifact_budget = options.artifact_budget;
  verdict.tolerance = options.tol;

  // Drop the known defect zeros (the smallest entries of the symbol spectrum).
  std::vector<double> symbol(symbol_sigma.begin(), symbol_sigma.end());
  std::sort(symbol.begin(), symbol.end(), std::greater<>());
  for (std::size_t k = 0; k < options.symbol_zero_defects && !symbol.empty(); ++k) {
    if (symbol.back() >= kZeroThreshold) break;
    symbol.pop_back();
  }
  // Exact zeros in a truncated symbol are rounding-level; snap them so s = 0 maps to λ = 1.
  for (double& s : symbol)
    if (s < kZeroThreshold) s = 0.0;
  verdict.predicted = predicted_modulus_spectrum(symbol);

  std::vector<double> values(assembly_sigma.begin(), assembly_sigma.end());
  std::sort(values.begin(), values.end());
  for (double v : values) {
    if (v < options.delta0) continue;
    if (std::abs(v - 1.0) < options.delta1) continue;
    ++verdict.survivors;
    const double dist = nearest_distance(verdict.predicted, v);
    if (dist <= options.tol) {
      ++verdict.matched;
      verdict.max_matched_distance = std::max(verdict.max_matched_distance, dist);
    } else {
      verdict.unmatched.push_back({v, dist});
    }
  }
  verdict.passed = verdict.unmatched.size() <= options.artifact_budget &&
                   verdict.max_matched_distance <= options.tol;
  if (options.delta1 == 0.0 && !options.assert_c_symmetric) {
    verdict.passed = false;
    verdict.note = "delta1 = 0 requires a C-symmetric symbol; set assert_c_symmetric";
  }
  return verdict;
}

MappingVerdict verify_spectral_mapping(const OperatorSpec& spec, std::size_t order,
                                       const TruncationConfig& trunc,
                                       const MappingOptions& options) {
  const FoguelAssembly assembly = assemble_foguel(spec, order, trunc);
  const auto assembly_sigma = singular_values(assembly.matrix);
  const auto symbol_sigma = singular_values(materialize(spec, trunc));
  return verify_mapping(assembly_sigma, symbol_sigma, options);
}

ShiftCounterexampleReport counterexample_check_shift(const TruncationConfig& trunc) {
  trunc.validate();
  if (trunc.N < 3) throw DimensionError("counterexample_check_shift: N must be at least 3");
  const std::size_t dim = trunc.dimension();
  ShiftCounterexampleReport report;
  report.N = trunc.N;

  const ComplexMatrix shift = build_shift(trunc, 1, false);
  OperatorSpec spec = OperatorSpec::explicit_matrix(shift);
  spec.coefficient_dim = trunc.d;
  const ComplexMatrix r = assemble_foguel(spec, 1, trunc).matrix;

  // R_S* R_S applied to (e_1, 0).
  ComplexVector x(2 * dim);
  x[trunc.d] = 1.0;
  ComplexVector y = multiply(adjoint(r), multiply(r, x));
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= x[i];
  report.eigenpair_residual = vector_norm(y);

  report.shift_sigma = singular_values(shift);
  const auto zeros = static_cast<std::size_t>(std::count_if(
      report.shift_sigma.begin(), report.shift_sigma.end(), [](double s) { return s < kZeroThreshold; }));
  const bool rest_unit = std::all_of(report.shift_sigma.begin(), report.shift_sigma.end(), [](double s) {
    return s < kZeroThreshold || std::abs(s - 1.0) <= 1e-12;
  });
  report.shift_sigma_defect_only = zeros == trunc.d && rest_unit;
  report.shift_is_c_symmetric = is_c_symmetric(shift, 1e-12);

  MappingOptions stronger;
  stronger.delta1 = 0.0;
  stronger.symbol_zero_defects = trunc.d;
  stronger.assert_c_symmetric = true;
  report.stronger_form = verify_mapping(singular_values(r), report.shift_sigma, stronger);
  return report;
}

IdentityGapReport gap_check_identity(const TruncationConfig& trunc) {
  trunc.validate();
  if (trunc.N < 8) throw DimensionError("gap_check_identity: N must be at least 8");
  IdentityGapReport report;
  report.N = trunc.N;
  OperatorSpec spec = OperatorSpec::identity();
  spec.coefficient_dim = trunc.d;
  report.sigma = singular_values(assemble_foguel(spec, 1, trunc).matrix);
  report.norm = report.sigma.front();
  report.formula_norm = foguel_norm_formula(1.0);
  report.min_distance_to_one = std::numeric_limits<double>::infinity();
  const double lo = 1.0 / kGoldenRatio + 0.1;
  const double hi = kGoldenRatio - 0.1;
  for (double s : report.sigma) {
    report.min_distance_to_one = std::min(report.min_distance_to_one, std::abs(s - 1.0));
    if (s > lo && s < hi) ++report.interior_count;
  }
  return report;
}

SweepTable convergence_sweep(const OperatorSpec& spec, std::size_t order,
                             std::span<const std::size_t> Ns, SweepMode mode, std::size_t d,
                             const MappingOptions& mapping) {
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    if (Ns[i] < 2) throw DimensionError("convergence_sweep: every N must be at least 2");
    if (i > 0 && Ns[i] <= Ns[i - 1]) throw DimensionError("convergence_sweep: Ns must increase");
  }
  if (mode == SweepMode::kPower && order < 1) {
    throw DimensionError("convergence_sweep: power mode needs n >= 1");
  }
  SweepTable table;
  for (std::size_t N : Ns) {
    const TruncationConfig trunc{N, d};
    if (N * d > max_dimension()) {
      table.truncation_notice = "sweep stopped at N=" + std::to_string(N) + ": N*d exceeds cap " +
                                std::to_string(max_dimension());
      break;
    }
    SweepRow row;
    row.N = N;
    const std::optional<double> exact = exact_symbol_norm(spec, trunc);
    row.formula_exact = exact.has_value();

    std::vector<double> sigma;
    double t = 0.0;
    if (mode == SweepMode::kPower) {
      sigma = singular_values(assemble_foguel_power(spec, order, trunc).matrix);
      t = exact ? *exact : operator_norm(materialize(spec, trunc));
      row.formula = power_norm_bound(t, order);
    } else {
      sigma = singular_values(assemble_foguel(spec, order, trunc).matrix);
      const auto symbol_sigma = singular_values(materialize(spec, trunc));
      t = exact ? *exact : symbol_sigma.front();
      row.formula = foguel_norm_formula(t);
      if (mode == SweepMode::kMapping) {
        const MappingVerdict v = verify_mapping(sigma, symbol_sigma, mapping);
        row.mapping_summary = (v.passed ? "pass" : "fail") + std::string(" unmatched=") +
                              std::to_string(v.unmatched.size()) + " survivors=" +
                              std::to_string(v.survivors);
      }
    }
    row.norm = sigma.front();
    row.gap = row.formula - row.norm;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace foguel
