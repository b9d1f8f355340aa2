#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

#include "foguel/error.hpp"
#include "foguel/operators.hpp"
#include "foguel/svd.hpp"
#include "test_support.hpp"

using namespace foguel;
using foguel::testing::max_abs_diff;
using foguel::testing::oracle_singular_values;
using foguel::testing::random_matrix;

namespace {

void expect_svd_invariants(const ComplexMatrix& a) {
  const auto f = svd(a);
  ASSERT_EQ(f.sigma.size(), std::min(a.rows(), a.cols()));
  const double scale = std::max(1.0, f.sigma.empty() ? 0.0 : f.sigma[0]);
  EXPECT_LE(max_abs_diff(reconstruct(f), a), 1e-10 * scale);
  EXPECT_LE(operator_norm(subtract(reconstruct(f), a)), 1e-10 * scale);
  EXPECT_LE(unitarity_defect(f.u), 1e-10);
  EXPECT_LE(unitarity_defect(f.v), 1e-10);
  for (std::size_t i = 0; i < f.sigma.size(); ++i) {
    EXPECT_GE(f.sigma[i], 0.0);
    if (i > 0) EXPECT_LE(f.sigma[i], f.sigma[i - 1]);
  }
}

}  // namespace

TEST(Svd, IdentityHasUnitSingularValues) {
  const auto f = svd(ComplexMatrix::identity(3));
  EXPECT_EQ(f.sigma, (std::vector<double>{1, 1, 1}));
}

TEST(Svd, RankOne) {
  const auto s = svd(ComplexMatrix::from_rows({{0, 2}, {0, 0}})).sigma;
  EXPECT_DOUBLE_EQ(s[0], 2.0);
  EXPECT_DOUBLE_EQ(s[1], 0.0);
}

TEST(Svd, RandomRectangularReconstructs) {
  std::mt19937_64 rng(8);
  expect_svd_invariants(random_matrix(8, 5, rng));
  expect_svd_invariants(random_matrix(5, 8, rng));
  expect_svd_invariants(random_matrix(1, 1, rng));
}

TEST(Svd, RealInputTakesRealPathAndStillReconstructs) {
  auto a = ComplexMatrix::from_rows({{1, 2, 0}, {0, 1, 2}, {3, 0, 1}, {1, 1, 1}});
  ASSERT_TRUE(a.is_real());
  expect_svd_invariants(a);
}

TEST(Svd, AgreesWithEigenOracle) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 25; ++t) {
    const auto a = random_matrix(1 + t % 9, 1 + (t * 5) % 11, rng);
    const auto ours = svd(a).sigma;
    const auto cheap = singular_values(a);
    const auto ref = oracle_singular_values(a);
    ASSERT_EQ(ours.size(), ref.size());
    EXPECT_LE(max_abs_diff(ours, ref), 1e-10 * std::max(1.0, ref[0]));
    EXPECT_LE(max_abs_diff(cheap, ref), 1e-10 * std::max(1.0, ref[0]));
  }
}

TEST(Svd, SingularValuesOfAdjointMatch) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_matrix(6, 6, rng);
    EXPECT_LE(max_abs_diff(singular_values(a), singular_values(adjoint(a))), 1e-10);
  }
}

TEST(Svd, NonFiniteInputRejected) {
  auto a = ComplexMatrix::identity(2);
  a(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW((void)svd(a), DimensionError);
  EXPECT_THROW((void)singular_values(a), DimensionError);
}

TEST(OperatorNorm, ScalingAndIdentity) {
  EXPECT_DOUBLE_EQ(operator_norm(ComplexMatrix::identity(5)), 1.0);
  EXPECT_DOUBLE_EQ(operator_norm(scale(ComplexMatrix::identity(5), 3.0)), 3.0);
}

TEST(OperatorNorm, TridiagonalShiftSumIsTwoCosPiOverFive) {
  const TruncationConfig trunc{4, 1};
  const auto t = add(build_shift(trunc, 1, false), build_shift(trunc, 1, true));
  const double expected = 2.0 * std::cos(std::numbers::pi / 5.0);
  EXPECT_NEAR(expected, (1.0 + std::sqrt(5.0)) / 2.0, 1e-15);
  EXPECT_NEAR(operator_norm(t), expected, 1e-12);

  // Dense eigen-oracle: eigenvalues of the tridiagonal Toeplitz matrix are 2cos(kπ/(N+1)).
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(foguel::testing::to_eigen(t));
  EXPECT_NEAR(es.eigenvalues().cwiseAbs().maxCoeff(), expected, 1e-12);
}

// Nonzero eigenvalues of AB and BA coincide as multisets.
TEST(ProductSpectrum, NonzeroEigenvaluesOfABAndBAAgree) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = static_cast<std::size_t>(dim(rng));
    const auto k = static_cast<std::size_t>(dim(rng));
    const auto a = foguel::testing::to_eigen(random_matrix(m, k, rng));
    const auto b = foguel::testing::to_eigen(random_matrix(k, m, rng));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ab(a * b, false);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ba(b * a, false);
    auto nonzero = [](const Eigen::VectorXcd& ev) {
      std::vector<Complex> out;
      for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i)) > 1e-8) out.push_back(ev(i));
      return out;
    };
    auto x = nonzero(ab.eigenvalues());
    auto y = nonzero(ba.eigenvalues());
    ASSERT_EQ(x.size(), y.size()) << "trial " << trial;
    // Multiset comparison by greedy nearest matching.
    for (const auto& z : x) {
      auto best = std::min_element(y.begin(), y.end(), [&](const Complex& p, const Complex& q) {
        return std::abs(p - z) < std::abs(q - z);
      });
      EXPECT_LE(std::abs(*best - z), 1e-8) << "trial " << trial;
      y.erase(best);
    }
  }
}
