#include <cmath>

#include <gtest/gtest.h>

#include "lelm/error.hpp"
#include "lelm/linalg.hpp"
#include "lelm/random.hpp"
#include "oracles.hpp"

using lelm::Matrix;

namespace {

Matrix random_matrix(lelm::Rng& rng, Eigen::Index r, Eigen::Index c, Eigen::Index rank) {
  Matrix a(r, rank), b(rank, c);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
  for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = rng.normal();
  return a * b;
}

void expect_penrose(const Matrix& a, const Matrix& p) {
  const double tol = 1e-8 * (1.0 + a.norm());
  EXPECT_LE((a * p * a - a).norm(), tol);
  EXPECT_LE((p * a * p - p).norm(), tol);
  EXPECT_LE(((a * p).transpose() - a * p).norm(), tol);
  EXPECT_LE(((p * a).transpose() - p * a).norm(), tol);
}

}  // namespace

TEST(Pinv, PenroseConditionsOnRandomShapes) {
  lelm::Rng rng(42);
  for (int t = 0; t < 60; ++t) {
    const auto r = static_cast<Eigen::Index>(1 + rng.below(30));
    const auto c = static_cast<Eigen::Index>(1 + rng.below(30));
    const auto full = std::min(r, c);
    const auto rank = t % 3 == 0 ? std::max<Eigen::Index>(1, full / 2) : full;
    const Matrix a = random_matrix(rng, r, c, rank);
    expect_penrose(a, lelm::linalg::pinv(a));
  }
}

TEST(Pinv, AgreesWithRankFactorOracle) {
  lelm::Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index r = 5 + t % 11, c = 3 + t % 7;
    const Eigen::Index rank = t % 2 ? std::min(r, c) : 2;
    const Matrix a = random_matrix(rng, r, c, rank);
    const Eigen::MatrixXd want = oracle::pinv_rank_factor(a);
    const Matrix got = lelm::linalg::pinv(a);
    EXPECT_LE((got - Matrix(want)).norm(), 1e-8 * (1 + want.norm())) << "trial " << t;
  }
}

TEST(Pinv, IdentityAndShapes) {
  Matrix i = Matrix::Identity(4, 4);
  EXPECT_LE((lelm::linalg::pinv(i) - i).norm(), 1e-15);
  Matrix z = Matrix::Zero(3, 5);
  const Matrix pz = lelm::linalg::pinv(z);
  EXPECT_EQ(pz.rows(), 5);
  EXPECT_EQ(pz.cols(), 3);
  EXPECT_EQ(pz.norm(), 0.0);
  Matrix e(0, 3);
  const Matrix pe = lelm::linalg::pinv(e);
  EXPECT_EQ(pe.rows(), 3);
  EXPECT_EQ(pe.cols(), 0);
}

TEST(Pinv, ScalarCase) {
  Matrix a(1, 1);
  a(0, 0) = 4.0;
  EXPECT_DOUBLE_EQ(lelm::linalg::pinv(a)(0, 0), 0.25);
}

TEST(Pinv, NonFiniteInputFails) {
  Matrix a = Matrix::Ones(2, 2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    lelm::linalg::pinv(a);
    FAIL();
  } catch (const lelm::Error& e) {
    EXPECT_EQ(e.code(), lelm::ErrorCode::SvdFailure);
  }
}

TEST(Pinv, ToleranceTruncatesSmallSingularValues) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1e-10;
  EXPECT_NEAR(lelm::linalg::pinv(a)(1, 1), 1e10, 1.0);
  EXPECT_EQ(lelm::linalg::pinv(a, 1e-6)(1, 1), 0.0);
}

TEST(LstsqMinNorm, SolvesConsistentSystemsAndChecksShapes) {
  lelm::Rng rng(9);
  const Matrix a = random_matrix(rng, 12, 5, 5);
  Matrix x(5, 2);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  const Matrix b = a * x;
  EXPECT_LE((lelm::linalg::lstsq_min_norm(a, b) - x).norm(), 1e-10);
  const Matrix wrong = Matrix::Zero(11, 2);
  EXPECT_THROW(lelm::linalg::lstsq_min_norm(a, wrong), lelm::Error);
}
