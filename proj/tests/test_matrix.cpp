#include <gtest/gtest.h>

#include "foguel/error.hpp"
#include "foguel/matrix.hpp"
#include "test_support.hpp"

using namespace foguel;
using foguel::testing::max_abs_diff;
using foguel::testing::random_matrix;

namespace {
const Complex I{0.0, 1.0};
}

TEST(Matrix, ConstructorRejectsWrongEntryCount) {
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
  EXPECT_THROW(ComplexMatrix::from_rows({{1, 2}, {3}}), DimensionError);
}

TEST(Matrix, IdentityTimesAIsA) {
  const auto a = ComplexMatrix::from_rows({{1, I}, {2.0 - I, 3}});
  EXPECT_EQ(multiply(ComplexMatrix::identity(2), a), a);
}

TEST(Matrix, ZeroAnnihilates) {
  const auto a = ComplexMatrix::from_rows({{1, I}, {2.0 - I, 3}});
  EXPECT_EQ(multiply(a, ComplexMatrix::zeros(2, 2)), ComplexMatrix::zeros(2, 2));
}

TEST(Matrix, RankOneShiftProduct) {
  const auto a = ComplexMatrix::from_rows({{0, 1}, {0, 0}});
  const auto b = ComplexMatrix::from_rows({{0, 0}, {1, 0}});
  EXPECT_EQ(multiply(a, b), ComplexMatrix::from_rows({{1, 0}, {0, 0}}));
}

TEST(Matrix, MultiplyRejectsShapeMismatchWithDiagnostic) {
  try {
    (void)multiply(ComplexMatrix(2, 3), ComplexMatrix(2, 3));
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    EXPECT_NE(std::string(e.what()).find("2x3"), std::string::npos) << e.what();
  }
  EXPECT_THROW((void)multiply(ComplexMatrix(2, 3), ComplexVector(2)), DimensionError);
}

TEST(Matrix, MultiplyMatchesEigen) {
  std::mt19937_64 rng(11);
  const auto a = random_matrix(7, 5, rng);
  const auto b = random_matrix(5, 9, rng);
  const Eigen::MatrixXcd ref = foguel::testing::to_eigen(a) * foguel::testing::to_eigen(b);
  const auto c = multiply(a, b);
  for (std::size_t r = 0; r < 7; ++r)
    for (std::size_t k = 0; k < 9; ++k) EXPECT_NEAR(std::abs(c(r, k) - ref(r, k)), 0.0, 1e-12);

  const auto x = a.column(0);
  const auto y = multiply(adjoint(a), std::span<const Complex>(x));
  const Eigen::VectorXcd ry = foguel::testing::to_eigen(a).adjoint() * foguel::testing::to_eigen(a).col(0);
  for (std::size_t i = 0; i < y.size(); ++i) EXPECT_NEAR(std::abs(y[i] - ry(i)), 0.0, 1e-12);
}

TEST(Matrix, AdjointOfScalar) {
  EXPECT_EQ(adjoint(ComplexMatrix::from_rows({{I}})), ComplexMatrix::from_rows({{-I}}));
}

TEST(Matrix, AdjointOfRealSymmetricIsItself) {
  const auto a = ComplexMatrix::from_rows({{1, 2, 3}, {2, 5, 6}, {3, 6, 9}});
  EXPECT_EQ(adjoint(a), a);
}

TEST(Matrix, AdjointIsInvolutiveExactly) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_matrix(1 + t % 6, 1 + (t * 7) % 5, rng);
    EXPECT_EQ(adjoint(adjoint(a)), a);
    EXPECT_EQ(transpose(transpose(a)), a);
    EXPECT_EQ(conjugate(transpose(a)), adjoint(a));
  }
}

TEST(Matrix, KroneckerWithIdentity) {
  const auto a = ComplexMatrix::from_rows({{1, 2}, {3, 4}});
  const auto k = kronecker(a, ComplexMatrix::identity(2));
  ASSERT_EQ(k.rows(), 4u);
  EXPECT_EQ(k(0, 0), Complex(1));
  EXPECT_EQ(k(1, 1), Complex(1));
  EXPECT_EQ(k(0, 1), Complex(0));
  EXPECT_EQ(k(2, 0), Complex(3));
  EXPECT_EQ(k(3, 3), Complex(4));
}

TEST(Matrix, BlocksRoundTrip) {
  std::mt19937_64 rng(5);
  const auto b = random_matrix(2, 3, rng);
  auto target = ComplexMatrix::zeros(5, 5);
  set_block(target, 1, 2, b);
  EXPECT_EQ(get_block(target, 1, 2, 2, 3), b);
  EXPECT_THROW(set_block(target, 4, 4, b), DimensionError);
  EXPECT_THROW((void)get_block(target, 4, 0, 2, 2), DimensionError);
}

TEST(Matrix, NormsAndInnerProduct) {
  const auto a = ComplexMatrix::from_rows({{3, 0}, {0, 4.0 * I}});
  EXPECT_DOUBLE_EQ(frobenius_norm(a), 5.0);
  EXPECT_DOUBLE_EQ(max_abs_entry(a), 4.0);
  const ComplexVector x{1.0, I};
  const ComplexVector y{I, 1.0};
  EXPECT_DOUBLE_EQ(vector_norm(x), std::sqrt(2.0));
  // Σ x_i conj(y_i) = 1·(−i) + i·1 = 0
  EXPECT_EQ(inner_product(x, y), Complex(0.0));
  EXPECT_EQ(inner_product(x, x), Complex(2.0));
}

TEST(Matrix, VectorNormSurvivesExtremeScales) {
  const ComplexVector big{1e200, 1e200};
  EXPECT_NEAR(vector_norm(big) / 1e200, std::sqrt(2.0), 1e-15);
  const ComplexVector tiny{1e-200, 0.0};
  EXPECT_NEAR(vector_norm(tiny) / 1e-200, 1.0, 1e-15);
}

TEST(Matrix, FinitenessAndRealness) {
  auto a = ComplexMatrix::identity(2);
  EXPECT_TRUE(a.is_finite());
  EXPECT_TRUE(a.is_real());
  a(0, 1) = I;
  EXPECT_FALSE(a.is_real());
  a(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(a.is_finite());
}
