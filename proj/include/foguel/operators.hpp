#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "foguel/matrix.hpp"

namespace foguel {

/// Default cap on N·d; overridden by the FOGUEL_MAX_DIM environment variable.
inline constexpr std::size_t kDefaultMaxDimension = 8192;

std::size_t max_dimension();

/// Finite section: coordinates e_0 … e_{N−1}, each carrying a d-dimensional coefficient.
struct TruncationConfig {
  std::size_t N = 2;
  std::size_t d = 1;

  std::size_t dimension() const noexcept { return N * d; }
  /// Throws DimensionError unless N ≥ 2 and 1 ≤ N·d ≤ max_dimension().
  void validate() const;
};

namespace symbol {

struct Zero {};
struct Identity {};
struct ScaledIdentity {
  Complex factor;
};
/// Diagonal entries on the first values.size() coordinates; zero beyond.
struct Diagonal {
  std::vector<Complex> values;
};
/// Orthogonal projection onto span{e_j : j ∈ indices}. With `halmos` set, the
/// index set is halmos_index_set(N) resolved at materialization time.
struct Projection {
  std::vector<std::size_t> indices;
  bool halmos = false;
};
/// H[j,k] = coefficients[j+k], zero past the end of the sequence.
struct Hankel {
  std::vector<Complex> coefficients;
};
/// A fixed N·d × N·d matrix.
struct Explicit {
  ComplexMatrix matrix;
};

}  // namespace symbol

/// Declarative description of the symbol T of a Foguel operator.
struct OperatorSpec {
  using Kind = std::variant<symbol::Zero, symbol::Identity, symbol::ScaledIdentity,
                            symbol::Diagonal, symbol::Projection, symbol::Hankel,
                            symbol::Explicit>;
  Kind kind = symbol::Zero{};
  std::size_t coefficient_dim = 1;

  static OperatorSpec zero() { return {symbol::Zero{}}; }
  static OperatorSpec identity() { return {symbol::Identity{}}; }
  static OperatorSpec scaled_identity(Complex c) { return {symbol::ScaledIdentity{c}}; }
  static OperatorSpec diagonal(std::vector<Complex> v) { return {symbol::Diagonal{std::move(v)}}; }
  static OperatorSpec projection(std::vector<std::size_t> idx) {
    return {symbol::Projection{std::move(idx), false}};
  }
  static OperatorSpec halmos_projection() { return {symbol::Projection{{}, true}}; }
  static OperatorSpec hankel(std::vector<Complex> c) { return {symbol::Hankel{std::move(c)}}; }
  static OperatorSpec explicit_matrix(ComplexMatrix m) {
    return {symbol::Explicit{std::move(m)}};
  }

  std::string kind_name() const;
};

/// Truncated block Foguel operator [[trunc((S*)ⁿ), T], [0, trunc(Sⁿ)]].
struct FoguelAssembly {
  ComplexMatrix matrix;
  std::size_t order = 0;
  TruncationConfig trunc;
  OperatorSpec symbol;
};

enum class Conjugation { kCanonical, kBlock };

/// Truncated Sⁿ (or its adjoint): e_k ↦ e_{k+n} for k < N−n, else 0; ⊗ I_d.
ComplexMatrix build_shift(const TruncationConfig& trunc, std::size_t power, bool adjoint);

/// {3^k : k ≥ 0, 3^k < N}, ascending.
std::vector<std::size_t> halmos_index_set(std::size_t N);

ComplexMatrix materialize(const OperatorSpec& spec, const TruncationConfig& trunc);

FoguelAssembly assemble_foguel(const OperatorSpec& spec, std::size_t order,
                               const TruncationConfig& trunc);

/// trunc((S*)^j) · t · trunc(S^k), computed by index remapping.
ComplexMatrix compress_shifted(const ComplexMatrix& t, std::size_t j, std::size_t k,
                               const TruncationConfig& trunc);

/// Compression P_N T_n P_N of T_n = Σ_{j=0}^{n−1} (S*)^j T S^{n−1−j}. The symbol is
/// evaluated on N+n−1 coordinates, so e.g. T = I gives trunc(S^{n−1}) + … + trunc((S*)^{n−1});
/// explicit symbols count as zero outside their N·d window.
ComplexMatrix power_symbol(const OperatorSpec& spec, std::size_t n,
                           const TruncationConfig& trunc);

/// The n-th power of R_T assembled as [[trunc((S*)ⁿ), T_n], [0, trunc(Sⁿ)]].
FoguelAssembly assemble_foguel_power(const OperatorSpec& spec, std::size_t n,
                                     const TruncationConfig& trunc);

ComplexVector apply_conjugation(Conjugation kind, std::span<const Complex> x);

/// T = C T* C for the canonical conjugation, i.e. ‖A − Aᵀ‖ ≤ tol·max(1, ‖A‖).
bool is_c_symmetric(const ComplexMatrix& a, double tol);

/// Unnormalized √(1 − r²)·r^k on coordinates (k, 0); other coefficient slots zero.
ComplexVector geometric_vector(double r, const TruncationConfig& trunc);

/// Truncated k_r = √(1 − r²)(1, r, r², …), renormalized to unit length.
ComplexVector build_kr(double r, const TruncationConfig& trunc);

/// ‖T‖ of the untruncated operator when it follows from the symbol description alone
/// (zero, identity, scaled identity, diagonal, projection).
std::optional<double> exact_symbol_norm(const OperatorSpec& spec, const TruncationConfig& trunc);

}  // namespace foguel
