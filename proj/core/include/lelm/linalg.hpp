#pragma once

#include <optional>

#include <Eigen/Core>

namespace lelm {

/// Dense row-major matrix of doubles used throughout the library.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

namespace linalg {

/// Singular-value cutoff used when no explicit tolerance is given:
/// max(rows, cols) * machine epsilon * largest singular value.
double default_pinv_tolerance(Eigen::Index rows, Eigen::Index cols, double sigma_max);

/// Moore-Penrose pseudoinverse through a thin SVD. Singular values <= tol are
/// treated as zero. Throws SvdFailure on non-finite input or a failed
/// decomposition.
Matrix pinv(const Matrix& a, std::optional<double> tol = std::nullopt);

/// Minimum-Frobenius-norm least-squares solution X = pinv(A) * B.
Matrix lstsq_min_norm(const Matrix& a, const Matrix& b, std::optional<double> tol = std::nullopt);

bool all_finite(const Matrix& m);

}  // namespace linalg
}  // namespace lelm
