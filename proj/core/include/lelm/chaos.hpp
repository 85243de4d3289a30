#pragma once

#include <cstddef>
#include <vector>

#include "lelm/linalg.hpp"

namespace lelm::chaos {

/// Parameters of the logistic map z_k = mu * z_{k-1} * (1 - z_{k-1}).
/// Valid configs have 0 < z1 < 1 and 3.56995 < mu <= 4.
struct ChaosConfig {
  double z1 = 0.6;
  double mu = 3.9;

  friend bool operator==(const ChaosConfig&, const ChaosConfig&) = default;
};

inline constexpr double kChaoticMuLowerBound = 3.56995;

/// Throws InvalidChaosParam when either parameter is outside its interval.
void validate(const ChaosConfig& config);

/// First `n` terms of the orbit, starting with z1. Any term that leaves the
/// open interval (0,1) raises InvalidChaosParam; no clamping is applied.
std::vector<double> logistic_sequence(const ChaosConfig& config, std::size_t n);

/// Immutable K x L input-weight matrix filled from the logistic orbit.
class WeightMatrix {
 public:
  /// Entry (i, j) holds orbit term i*L + j (0-based), i.e. row-major over
  /// K rows and L columns. Consumes exactly K*L terms.
  static WeightMatrix build(const ChaosConfig& config, std::size_t rows, std::size_t cols);

  const Matrix& values() const noexcept { return values_; }
  const ChaosConfig& source_config() const noexcept { return config_; }
  std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }

 private:
  WeightMatrix(Matrix values, ChaosConfig config);

  Matrix values_;
  ChaosConfig config_;
};

inline WeightMatrix build_weight_matrix(const ChaosConfig& config, std::size_t rows,
                                        std::size_t cols) {
  return WeightMatrix::build(config, rows, cols);
}

}  // namespace lelm::chaos
