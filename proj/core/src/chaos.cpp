#include "lelm/chaos.hpp"

#include <cmath>
#include <sstream>

#include "lelm/error.hpp"

namespace lelm::chaos {

namespace {

std::string describe(const ChaosConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "z1=" << c.z1 << ", mu=" << c.mu;
  return os.str();
}

}  // namespace

void validate(const ChaosConfig& config) {
  if (!std::isfinite(config.z1) || !(config.z1 > 0.0 && config.z1 < 1.0)) {
    throw Error(ErrorCode::InvalidChaosParam, "z1 must lie in (0,1): " + describe(config));
  }
  if (!std::isfinite(config.mu) || !(config.mu > kChaoticMuLowerBound && config.mu <= 4.0)) {
    throw Error(ErrorCode::InvalidChaosParam,
                "mu must lie in (3.56995, 4]: " + describe(config));
  }
}

std::vector<double> logistic_sequence(const ChaosConfig& config, std::size_t n) {
  validate(config);
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "logistic sequence length must be >= 1");
  }
  std::vector<double> z(n);
  z[0] = config.z1;
  for (std::size_t k = 1; k < n; ++k) {
    // Evaluated as (mu * z) * (1 - z); the build disables FMA contraction.
    const double prev = z[k - 1];
    const double next = config.mu * prev * (1.0 - prev);
    if (!(next > 0.0 && next < 1.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "orbit left (0,1) at term " << (k + 1) << " (value " << next << ") for "
         << describe(config);
      throw Error(ErrorCode::InvalidChaosParam, os.str());
    }
    z[k] = next;
  }
  return z;
}

WeightMatrix::WeightMatrix(Matrix values, ChaosConfig config)
    : values_(std::move(values)), config_(config) {}

WeightMatrix WeightMatrix::build(const ChaosConfig& config, std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::InvalidArgument, "weight matrix needs K >= 1 and L >= 1");
  }
  const auto z = logistic_sequence(config, rows * cols);
  Matrix w(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = z[i * cols + j];
    }
  }
  return WeightMatrix(std::move(w), config);
}

}  // namespace lelm::chaos
