#include "foguel/svd.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "foguel/error.hpp"

namespace foguel {

namespace {

void require_finite(const ComplexMatrix& a, const char* op) {
  if (!a.is_finite()) throw DimensionError(std::string(op) + ": non-finite entry in input");
}

void check_info(lapack_int info, const char* routine) {
  if (info > 0) {
    throw ConvergenceError(std::string(routine) + ": bidiagonal iteration failed to converge (" +
                           std::to_string(info) + " superdiagonals remain)");
  }
  if (info < 0) {
    throw DimensionError(std::string(routine) + ": illegal argument " + std::to_string(-info));
  }
}

std::vector<double> real_parts(const ComplexMatrix& a) {
  std::vector<double> out(a.data().size());
  std::transform(a.data().begin(), a.data().end(), out.begin(),
                 [](const Complex& z) { return z.real(); });
  return out;
}

ComplexMatrix from_real(std::size_t rows, std::size_t cols, const std::vector<double>& v) {
  ComplexMatrix m(rows, cols);
  std::copy(v.begin(), v.end(), m.data().begin());
  return m;
}

}  // namespace

SvdResult svd(const ComplexMatrix& a) {
  require_finite(a, "svd");
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  SvdResult out;
  out.sigma.assign(std::min(a.rows(), a.cols()), 0.0);
  if (a.empty()) {
    out.u = ComplexMatrix::identity(a.rows());
    out.v = ComplexMatrix::identity(a.cols());
    return out;
  }

  if (a.is_real()) {
    auto work = real_parts(a);
    std::vector<double> u(a.rows() * a.rows());
    std::vector<double> vt(a.cols() * a.cols());
    check_info(LAPACKE_dgesdd(LAPACK_ROW_MAJOR, 'A', m, n, work.data(), n, out.sigma.data(),
                              u.data(), m, vt.data(), n),
               "dgesdd");
    out.u = from_real(a.rows(), a.rows(), u);
    out.v = transpose(from_real(a.cols(), a.cols(), vt));
  } else {
    ComplexMatrix work = a;
    ComplexMatrix u(a.rows(), a.rows());
    ComplexMatrix vh(a.cols(), a.cols());
    check_info(LAPACKE_zgesdd(LAPACK_ROW_MAJOR, 'A', m, n, work.data().data(), n,
                              out.sigma.data(), u.data().data(), m, vh.data().data(), n),
               "zgesdd");
    out.u = std::move(u);
    out.v = adjoint(vh);
  }
  for (double s : out.sigma)
    if (!std::isfinite(s)) throw ConvergenceError("svd: non-finite singular value");
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  require_finite(a, "singular_values");
  std::vector<double> sigma(std::min(a.rows(), a.cols()), 0.0);
  if (a.empty()) return sigma;
  // The row-major buffer read column-major is Aᵀ, which has the same singular
  // values; this avoids LAPACKE's transposing copy on large inputs.
  const auto m = static_cast<lapack_int>(a.cols());
  const auto n = static_cast<lapack_int>(a.rows());
  if (a.is_real()) {
    auto work = real_parts(a);
    check_info(LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, sigma.data(), nullptr,
                              1, nullptr, 1),
               "dgesdd");
  } else {
    ComplexMatrix work = a;
    check_info(LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data().data(), m, sigma.data(),
                              nullptr, 1, nullptr, 1),
               "zgesdd");
  }
  for (double s : sigma)
    if (!std::isfinite(s)) throw ConvergenceError("singular_values: non-finite singular value");
  return sigma;
}

double operator_norm(const ComplexMatrix& a) {
  if (a.empty()) return 0.0;
  return singular_values(a).front();
}

ComplexMatrix reconstruct(const SvdResult& f) {
  ComplexMatrix us(f.u.rows(), f.v.rows());
  for (std::size_t r = 0; r < f.u.rows(); ++r)
    for (std::size_t k = 0; k < f.sigma.size(); ++k) us(r, k) = f.u(r, k) * f.sigma[k];
  return multiply(us, adjoint(f.v));
}

ComplexMatrix reconstruct(const TakagiResult& f) {
  ComplexMatrix us = f.u;
  for (std::size_t r = 0; r < us.rows(); ++r)
    for (std::size_t k = 0; k < us.cols(); ++k) us(r, k) *= f.sigma[k];
  return multiply(us, transpose(f.u));
}

double unitarity_defect(const ComplexMatrix& q) {
  return operator_norm(subtract(multiply(adjoint(q), q), ComplexMatrix::identity(q.cols())));
}

bool is_complex_symmetric(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) throw DimensionError("is_complex_symmetric: non-square " + a.shape_string());
  const ComplexMatrix diff = subtract(a, transpose(a));
  const double diff_f = frobenius_norm(diff);
  if (diff_f == 0.0) return true;
  // Frobenius bounds settle most cases without an SVD:
  // ‖X‖_F/√n ≤ ‖X‖₂ ≤ ‖X‖_F.
  const double a_f = frobenius_norm(a);
  const double root_n = std::sqrt(static_cast<double>(a.rows()));
  if (diff_f <= tol * std::max(1.0, a_f / root_n)) return true;
  if (diff_f / root_n > tol * std::max(1.0, a_f)) return false;
  return operator_norm(diff) <= tol * std::max(1.0, operator_norm(a));
}

namespace {

/// Symmetric unitary Z with Z·Z = W for a symmetric unitary W.
///
/// Re W and Im W are commuting real symmetric matrices, so one real orthogonal
/// Q diagonalizes both; Z = Q·diag(e^{iθ/2})·Qᵀ is then symmetric by construction.
ComplexMatrix symmetric_unitary_sqrt(const ComplexMatrix& w) {
  const std::size_t m = w.rows();
  if (m == 1) return ComplexMatrix(1, 1, {std::sqrt(w(0, 0) / std::abs(w(0, 0)))});

  // Mixing weights for X + c·Y; a generic c separates distinct eigenvalues of W.
  constexpr std::array<double, 4> kMix = {0.5772156649015329, 1.4142135623730951,
                                          -0.7071067811865476, 2.718281828459045};
  std::vector<double> best_q;
  double best_offdiag = std::numeric_limits<double>::infinity();
  ComplexMatrix best_d;
  for (double c : kMix) {
    std::vector<double> h(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) h[i * m + j] = w(i, j).real() + c * w(i, j).imag();
    std::vector<double> evals(m);
    const auto mi = static_cast<lapack_int>(m);
    check_info(LAPACKE_dsyev(LAPACK_ROW_MAJOR, 'V', 'U', mi, h.data(), mi, evals.data()), "dsyev");
    const ComplexMatrix q = from_real(m, m, h);
    ComplexMatrix d = multiply(transpose(q), multiply(w, q));
    double off = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j) off = std::max(off, std::abs(d(i, j)));
    if (off < best_offdiag) {
      best_offdiag = off;
      best_q = std::move(h);
      best_d = std::move(d);
    }
    if (off <= 1e-13) break;
  }

  const ComplexMatrix q = from_real(m, m, best_q);
  ComplexMatrix qz = q;
  for (std::size_t j = 0; j < m; ++j) {
    const Complex root = std::sqrt(best_d(j, j) / std::abs(best_d(j, j)));
    for (std::size_t i = 0; i < m; ++i) qz(i, j) *= root;
  }
  return multiply(qz, transpose(q));
}

}  // namespace

TakagiResult takagi(const ComplexMatrix& a, const TakagiOptions& options) {
  require_finite(a, "takagi");
  if (!a.is_square()) throw DimensionError("takagi: non-square input " + a.shape_string());
  if (!is_complex_symmetric(a, options.symmetry_tol)) {
    throw DimensionError("takagi: input is not complex symmetric");
  }
  SvdResult f = svd(a);
  const std::size_t n = a.rows();
  TakagiResult out{std::move(f.u), std::move(f.sigma)};
  if (n == 0) return out;

  const double sigma_scale = std::max(1.0, out.sigma.front());
  const double gap = options.cluster_tol * sigma_scale;
  const ComplexMatrix conj_v = conjugate(f.v);

  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && out.sigma[end - 1] - out.sigma[end] <= gap) ++end;
    // The zero cluster needs no rotation: any orthonormal basis of the left
    // null space gives valid Takagi vectors.
    if (out.sigma[begin] > gap) {
      const std::size_t m = end - begin;
      const ComplexMatrix u_block = get_block(out.u, 0, begin, n, m);
      const ComplexMatrix v_block = get_block(conj_v, 0, begin, n, m);
      ComplexMatrix w = multiply(adjoint(u_block), v_block);
      w = scale(add(w, transpose(w)), 0.5);
      set_block(out.u, 0, begin, multiply(u_block, symmetric_unitary_sqrt(w)));
    }
    begin = end;
  }
  return out;
}

}  // namespace foguel
