#include "lelm/linalg.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include <Eigen/SVD>

#include "lelm/error.hpp"

namespace lelm::linalg {

bool all_finite(const Matrix& m) { return m.allFinite(); }

double default_pinv_tolerance(Eigen::Index rows, Eigen::Index cols, double sigma_max) {
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() *
         sigma_max;
}

Matrix pinv(const Matrix& a, std::optional<double> tol) {
  if (a.size() == 0) {
    return Matrix::Zero(a.cols(), a.rows());
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::SvdFailure, "pseudoinverse input contains non-finite entries");
  }
  // Column-major copy: JacobiSVD's QR preconditioner is tuned for it.
  const Eigen::MatrixXd a_cm = a;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a_cm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorCode::SvdFailure, "SVD did not converge");
  }
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  const double cutoff = tol.value_or(default_pinv_tolerance(a.rows(), a.cols(), sigma_max));
  if (!(cutoff >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "pseudoinverse tolerance must be >= 0");
  }

  Eigen::VectorXd inv_sigma(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    inv_sigma(i) = sigma(i) > cutoff ? 1.0 / sigma(i) : 0.0;
  }
  Matrix p = svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().transpose();
  if (!p.allFinite()) {
    throw Error(ErrorCode::SvdFailure, "pseudoinverse produced non-finite entries");
  }
  return p;
}

Matrix lstsq_min_norm(const Matrix& a, const Matrix& b, std::optional<double> tol) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "lstsq: A has " + std::to_string(a.rows()) + " rows but B has " +
                    std::to_string(b.rows()));
  }
  return pinv(a, tol) * b;
}

}  // namespace lelm::linalg
