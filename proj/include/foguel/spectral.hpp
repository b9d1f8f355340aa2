#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "foguel/matrix.hpp"
#include "foguel/operators.hpp"

namespace foguel {

inline constexpr double kGoldenRatio = 1.6180339887498948482;
inline constexpr double kZeroThreshold = 1e-10;

/// Singular values of a finite matrix, i.e. the spectrum of |A| = √(A*A).
struct SpectrumReport {
  std::string source;
  std::size_t dimension = 0;
  std::vector<double> sigma;  // nonincreasing
  std::size_t zero_count = 0;
};

SpectrumReport modulus_spectrum(const ComplexMatrix& a, std::string source = {},
                                double zero_threshold = kZeroThreshold);

// ---------------------------------------------------------------------------
// The mapping law λ ↦ |λ − λ⁻¹| and the closed-form norms it implies.

/// |x − 1/x| for x > 0.
double spectral_map(double x);

struct MappingRoots {
  double lower;  // (√(s²+4) − s)/2, in (0, 1]
  double upper;  // (√(s²+4) + s)/2, in [1, ∞)
};

/// The two positive solutions of |λ − λ⁻¹| = s.
MappingRoots inverse_spectral_map(double s);

/// Norm of a Foguel operator whose symbol has norm t: (t + √(t²+4))/2.
double foguel_norm_formula(double t);

/// Upper bound on ‖R_Tⁿ‖ for ‖T‖ = t: (n·t + √(n²t²+4))/2.
double power_norm_bound(double t, std::size_t n);

// ---------------------------------------------------------------------------
// Antilinear eigenvalue problems.

/// ‖A·u − λ·C(u)‖ / ‖u‖.
double antilinear_residual(const ComplexMatrix& a, Complex lambda, std::span<const Complex> u,
                           Conjugation kind);

struct AntilinearPair {
  double lambda = 0.0;
  ComplexVector vector;  // unit norm
};

/// Solutions of A·v = λ·conj(v) for complex symmetric A, one per singular value.
std::vector<AntilinearPair> antilinear_eigenpairs(const ComplexMatrix& a);

// ---------------------------------------------------------------------------
// Spectral mapping verification on finite sections.

/// {0} ∪ {λ₋(s), λ₊(s) : s ∈ sigma}, sorted ascending with duplicates merged.
std::vector<double> predicted_modulus_spectrum(std::span<const double> symbol_sigma);
std::vector<double> predicted_modulus_spectrum(const SpectrumReport& symbol_spectrum);

struct MappingOptions {
  double tol = 0.05;
  double delta0 = 0.1;
  double delta1 = 0.1;
  std::size_t artifact_budget = 0;
  /// Number of zero singular values of the truncated symbol that are known
  /// finite-section defects (e.g. the kernel of trunc(S)); removed before prediction.
  std::size_t symbol_zero_defects = 0;
  /// delta1 = 0 (the stronger form) is only meaningful for C-symmetric symbols;
  /// the caller asserts that hypothesis here.
  bool assert_c_symmetric = false;
};

struct UnmatchedValue {
  double value;
  double distance;  // to the nearest predicted point
};

struct MappingVerdict {
  bool passed = false;
  std::pair<double, double> excluded_zone;  // (delta0, delta1)
  std::size_t artifact_budget = 0;
  double tolerance = 0.0;
  std::vector<UnmatchedValue> unmatched;
  double max_matched_distance = 0.0;
  std::size_t survivors = 0;
  std::size_t matched = 0;
  std::vector<double> predicted;
  std::string note;
};

/// Matches σ(|assembly|) outside the exclusion zones against the predicted set.
MappingVerdict verify_mapping(std::span<const double> assembly_sigma,
                              std::span<const double> symbol_sigma, const MappingOptions& options);

MappingVerdict verify_spectral_mapping(const OperatorSpec& spec, std::size_t order,
                                       const TruncationConfig& trunc,
                                       const MappingOptions& options = {});

// ---------------------------------------------------------------------------
// Worked examples.

struct ShiftCounterexampleReport {
  std::size_t N = 0;
  /// ‖R_S*R_S (e_1, 0) − (e_1, 0)‖.
  double eigenpair_residual = 0.0;
  std::vector<double> shift_sigma;
  /// trunc(S) has singular values all 1 except a single 0.
  bool shift_sigma_defect_only = false;
  bool shift_is_c_symmetric = true;
  /// Stronger-form check (delta1 = 0) treating S as if it were C-symmetric.
  MappingVerdict stronger_form;
};

ShiftCounterexampleReport counterexample_check_shift(const TruncationConfig& trunc);

struct IdentityGapReport {
  std::size_t N = 0;
  double norm = 0.0;
  double formula_norm = 0.0;
  double min_distance_to_one = 0.0;
  /// Singular values of R_I inside (1/φ + 0.1, φ − 0.1).
  std::size_t interior_count = 0;
  std::vector<double> sigma;
};

IdentityGapReport gap_check_identity(const TruncationConfig& trunc);

// ---------------------------------------------------------------------------
// Finite-section convergence sweeps.

enum class SweepMode { kNorm, kMapping, kPower };

struct SweepRow {
  std::size_t N = 0;
  double norm = 0.0;
  double formula = 0.0;
  double gap = 0.0;  // formula − norm
  bool formula_exact = false;
  std::string mapping_summary;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  /// Non-empty when the dimension cap cut the sweep short.
  std::string truncation_notice;
};

SweepTable convergence_sweep(const OperatorSpec& spec, std::size_t order,
                             std::span<const std::size_t> Ns, SweepMode mode,
                             std::size_t d = 1, const MappingOptions& mapping = {});

}  // namespace foguel
