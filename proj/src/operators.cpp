#include "foguel/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "foguel/error.hpp"
#include "foguel/svd.hpp"

namespace foguel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_matching_dim(const OperatorSpec& spec, const TruncationConfig& trunc) {
  if (spec.coefficient_dim != trunc.d) {
    throw DimensionError("operator spec has coefficient dimension " +
                         std::to_string(spec.coefficient_dim) + " but truncation uses d=" +
                         std::to_string(trunc.d));
  }
}

std::vector<std::size_t> resolve_indices(const symbol::Projection& p, std::size_t N) {
  if (p.halmos) return halmos_index_set(N);
  std::vector<std::size_t> idx = p.indices;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

}  // namespace

std::size_t max_dimension() {
  if (const char* env = std::getenv("FOGUEL_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxDimension;
}

void TruncationConfig::validate() const {
  if (N < 2) throw DimensionError("truncation N must be at least 2, got " + std::to_string(N));
  if (d < 1) throw DimensionError("coefficient dimension d must be positive");
  if (N * d > max_dimension()) {
    throw DimensionError("N*d = " + std::to_string(N * d) + " exceeds dimension cap " +
                         std::to_string(max_dimension()));
  }
}

std::string OperatorSpec::kind_name() const {
  return std::visit(overloaded{
                        [](const symbol::Zero&) { return std::string("zero"); },
                        [](const symbol::Identity&) { return std::string("identity"); },
                        [](const symbol::ScaledIdentity&) { return std::string("scaled-identity"); },
                        [](const symbol::Diagonal&) { return std::string("diagonal"); },
                        [](const symbol::Projection&) { return std::string("projection"); },
                        [](const symbol::Hankel&) { return std::string("hankel"); },
                        [](const symbol::Explicit&) { return std::string("explicit"); },
                    },
                    kind);
}

ComplexMatrix build_shift(const TruncationConfig& trunc, std::size_t power, bool adjoint) {
  trunc.validate();
  const std::size_t dim = trunc.dimension();
  ComplexMatrix s(dim, dim);
  for (std::size_t k = 0; k + power < trunc.N; ++k) {
    for (std::size_t a = 0; a < trunc.d; ++a) {
      const std::size_t from = k * trunc.d + a;
      const std::size_t to = (k + power) * trunc.d + a;
      if (adjoint) {
        s(from, to) = 1.0;
      } else {
        s(to, from) = 1.0;
      }
    }
  }
  return s;
}

std::vector<std::size_t> halmos_index_set(std::size_t N) {
  if (N < 2) throw DimensionError("halmos_index_set: N must be at least 2");
  std::vector<std::size_t> out;
  for (std::size_t p = 1; p < N; p *= 3) out.push_back(p);
  return out;
}

namespace {

// The symbol on coordinates 0..window−1. Kinds defined on all of ℕ extend past
// trunc.N; an explicit matrix is only known on trunc.N coordinates and is
// zero-padded beyond them. Projection indices are checked against trunc.N.
ComplexMatrix materialize_window(const OperatorSpec& spec, const TruncationConfig& trunc,
                                 std::size_t window) {
  const std::size_t d = trunc.d;
  const std::size_t dim = window * d;
  return std::visit(
      overloaded{
          [&](const symbol::Zero&) { return ComplexMatrix(dim, dim); },
          [&](const symbol::Identity&) { return ComplexMatrix::identity(dim); },
          [&](const symbol::ScaledIdentity& s) {
            return scale(ComplexMatrix::identity(dim), s.factor);
          },
          [&](const symbol::Diagonal& s) {
            ComplexMatrix m(dim, dim);
            for (std::size_t i = 0; i < std::min(dim, s.values.size()); ++i) m(i, i) = s.values[i];
            return m;
          },
          [&](const symbol::Projection& p) {
            ComplexMatrix m(dim, dim);
            for (std::size_t j : resolve_indices(p, p.halmos ? window : trunc.N)) {
              if (!p.halmos && j >= trunc.N) {
                throw DimensionError("projection index " + std::to_string(j) +
                                     " outside truncation N=" + std::to_string(trunc.N));
              }
              for (std::size_t a = 0; a < d; ++a) m(j * d + a, j * d + a) = 1.0;
            }
            return m;
          },
          [&](const symbol::Hankel& h) {
            ComplexMatrix m(dim, dim);
            const std::size_t len = h.coefficients.size();
            for (std::size_t j = 0; j < window; ++j)
              for (std::size_t k = 0; k < window && j + k < len; ++k)
                for (std::size_t a = 0; a < d; ++a) m(j * d + a, k * d + a) = h.coefficients[j + k];
            return m;
          },
          [&](const symbol::Explicit& e) {
            const std::size_t base = trunc.dimension();
            if (e.matrix.rows() != base || e.matrix.cols() != base) {
              throw DimensionError("explicit symbol is " + e.matrix.shape_string() +
                                   " but truncation needs " + std::to_string(base) + "x" +
                                   std::to_string(base));
            }
            if (window == trunc.N) return e.matrix;
            ComplexMatrix m(dim, dim);
            set_block(m, 0, 0, e.matrix);
            return m;
          },
      },
      spec.kind);
}

}  // namespace

ComplexMatrix materialize(const OperatorSpec& spec, const TruncationConfig& trunc) {
  trunc.validate();
  require_matching_dim(spec, trunc);
  return materialize_window(spec, trunc, trunc.N);
}

namespace {

FoguelAssembly assemble_with_symbol(ComplexMatrix t, const OperatorSpec& spec, std::size_t order,
                                    const TruncationConfig& trunc) {
  const std::size_t dim = trunc.dimension();
  FoguelAssembly out{ComplexMatrix(2 * dim, 2 * dim), order, trunc, spec};
  set_block(out.matrix, 0, 0, build_shift(trunc, order, true));
  set_block(out.matrix, 0, dim, t);
  set_block(out.matrix, dim, dim, build_shift(trunc, order, false));
  return out;
}

}  // namespace

FoguelAssembly assemble_foguel(const OperatorSpec& spec, std::size_t order,
                               const TruncationConfig& trunc) {
  return assemble_with_symbol(materialize(spec, trunc), spec, order, trunc);
}

namespace {

// Adds P_N (S*)^j · t · S^k P_N into `acc`, where t covers at least N block
// coordinates (zero beyond its edge). Row block r of (S*)^j·t is row block r+j
// of t; column block c of t·S^k is column block c+k of t.
void accumulate_shifted(ComplexMatrix& acc, const ComplexMatrix& t, std::size_t j, std::size_t k,
                        const TruncationConfig& trunc) {
  const std::size_t dim = trunc.dimension();
  const std::size_t d = trunc.d;
  if (t.rows() != t.cols() || t.rows() < dim || t.rows() % d != 0) {
    throw DimensionError("compress_shifted: expected a square matrix of at least " +
                         std::to_string(dim) + "x" + std::to_string(dim) + ", got " +
                         t.shape_string());
  }
  const std::size_t window = t.rows() / d;
  if (j >= window || k >= window) return;
  const std::size_t rows = std::min(trunc.N, window - j) * d;
  const std::size_t cols = std::min(trunc.N, window - k) * d;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto src = t.row(r + j * d).subspan(k * d, cols);
    Complex* dst = acc.data().data() + r * dim;
    for (std::size_t c = 0; c < cols; ++c) dst[c] += src[c];
  }
}

}  // namespace

ComplexMatrix compress_shifted(const ComplexMatrix& t, std::size_t j, std::size_t k,
                               const TruncationConfig& trunc) {
  if (t.rows() != trunc.dimension() || t.cols() != trunc.dimension()) {
    throw DimensionError("compress_shifted: expected " + std::to_string(trunc.dimension()) + "x" +
                         std::to_string(trunc.dimension()) + ", got " + t.shape_string());
  }
  ComplexMatrix out(trunc.dimension(), trunc.dimension());
  accumulate_shifted(out, t, j, k, trunc);
  return out;
}

ComplexMatrix power_symbol(const OperatorSpec& spec, std::size_t n,
                           const TruncationConfig& trunc) {
  if (n < 1) throw DimensionError("power_symbol: n must be at least 1");
  if (n == 1) return materialize(spec, trunc);
  trunc.validate();
  require_matching_dim(spec, trunc);
  // Compression of the untruncated sum: the terms read T up to coordinate N+n−2.
  const ComplexMatrix t = materialize_window(spec, trunc, trunc.N + n - 1);
  ComplexMatrix sum(trunc.dimension(), trunc.dimension());
  for (std::size_t j = 0; j < n; ++j) accumulate_shifted(sum, t, j, n - 1 - j, trunc);
  return sum;
}

FoguelAssembly assemble_foguel_power(const OperatorSpec& spec, std::size_t n,
                                     const TruncationConfig& trunc) {
  return assemble_with_symbol(power_symbol(spec, n, trunc), spec, n, trunc);
}

ComplexVector apply_conjugation(Conjugation kind, std::span<const Complex> x) {
  ComplexVector out(x.size());
  if (kind == Conjugation::kCanonical) {
    std::transform(x.begin(), x.end(), out.begin(), [](const Complex& z) { return std::conj(z); });
    return out;
  }
  if (x.size() % 2 != 0) {
    throw DimensionError("block conjugation needs an even-length vector, got " +
                         std::to_string(x.size()));
  }
  const std::size_t half = x.size() / 2;
  for (std::size_t i = 0; i < half; ++i) {
    out[i] = std::conj(x[half + i]);
    out[half + i] = std::conj(x[i]);
  }
  return out;
}

bool is_c_symmetric(const ComplexMatrix& a, double tol) { return is_complex_symmetric(a, tol); }

ComplexVector geometric_vector(double r, const TruncationConfig& trunc) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw DimensionError("k_r requires 0 <= r < 1, got " + std::to_string(r));
  }
  trunc.validate();
  ComplexVector v(trunc.dimension());
  const double weight = std::sqrt(1.0 - r * r);
  double power = 1.0;
  for (std::size_t k = 0; k < trunc.N; ++k) {
    v[k * trunc.d] = weight * power;
    power *= r;
  }
  return v;
}

ComplexVector build_kr(double r, const TruncationConfig& trunc) {
  ComplexVector v = geometric_vector(r, trunc);
  const double norm = vector_norm(v);
  for (auto& z : v) z /= norm;
  return v;
}

std::optional<double> exact_symbol_norm(const OperatorSpec& spec, const TruncationConfig& trunc) {
  return std::visit(
      overloaded{
          [](const symbol::Zero&) -> std::optional<double> { return 0.0; },
          [](const symbol::Identity&) -> std::optional<double> { return 1.0; },
          [](const symbol::ScaledIdentity& s) -> std::optional<double> {
            return std::abs(s.factor);
          },
          [](const symbol::Diagonal& s) -> std::optional<double> {
            double m = 0.0;
            for (const auto& v : s.values) m = std::max(m, std::abs(v));
            return m;
          },
          [&](const symbol::Projection& p) -> std::optional<double> {
            return resolve_indices(p, trunc.N).empty() ? 0.0 : 1.0;
          },
          [](const symbol::Hankel&) -> std::optional<double> { return std::nullopt; },
          [](const symbol::Explicit&) -> std::optional<double> { return std::nullopt; },
      },
      spec.kind);
}

}  // namespace foguel
