#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace foguel {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix. Value type; copies are deep.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  /// Row-wise literal, e.g. `ComplexMatrix::from_rows({{0, 1}, {0, 0}})`.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const Complex> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<Complex> data() noexcept { return entries_; }
  std::span<const Complex> data() const noexcept { return entries_; }
  std::span<const Complex> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  ComplexVector column(std::size_t c) const;

  bool is_finite() const noexcept;
  /// True when every entry has zero imaginary part.
  bool is_real() const noexcept;

  std::string shape_string() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector multiply(const ComplexMatrix& a, std::span<const Complex> x);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);
/// Plain transpose (no conjugation).
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, Complex factor);

/// Kronecker product a ⊗ b.
ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b);

/// Copies `block` into `target` with its top-left corner at (row, col).
void set_block(ComplexMatrix& target, std::size_t row, std::size_t col, const ComplexMatrix& block);
ComplexMatrix get_block(const ComplexMatrix& source, std::size_t row, std::size_t col,
                        std::size_t rows, std::size_t cols);

double frobenius_norm(const ComplexMatrix& a);
double max_abs_entry(const ComplexMatrix& a);

double vector_norm(std::span<const Complex> x);
Complex inner_product(std::span<const Complex> x, std::span<const Complex> y);  // Σ conj(y_i) x_i

}  // namespace foguel
