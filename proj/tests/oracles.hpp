#pragma once
// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into lelm numerics.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lelm/features.hpp"
#include "lelm/linalg.hpp"

namespace oracle {

/// Direct long-double evaluation of each feature formula. nullopt on a
/// zero denominator.
inline std::optional<double> feature(const std::vector<double>& x, lelm::features::FeatureId id,
                                     bool signed_mean = false) {
  using lelm::features::FeatureId;
  const long double n = static_cast<long double>(x.size());
  auto mean_of = [&](auto f) {
    long double s = 0;
    for (double v : x) s += f(static_cast<long double>(v));
    return s / n;
  };
  const long double mean = mean_of([](long double v) { return v; });
  const long double var =
      mean_of([&](long double v) { return (v - mean) * (v - mean); });
  const long double sd = std::sqrt(var);
  const long double avg_amp = mean_of([](long double v) { return std::fabs(v); });
  const long double rms = std::sqrt(mean_of([](long double v) { return v * v; }));
  long double mx = x[0], mn = x[0], peak = std::fabs(static_cast<long double>(x[0]));
  for (double v : x) {
    mx = std::max<long double>(mx, v);
    mn = std::min<long double>(mn, v);
    peak = std::max<long double>(peak, std::fabs(static_cast<long double>(v)));
  }
  const long double den = signed_mean ? mean : avg_amp;
  auto div = [](long double a, long double b) -> std::optional<double> {
    if (b == 0) return std::nullopt;
    return static_cast<double>(a / b);
  };
  switch (id) {
    case FeatureId::Mean: return static_cast<double>(mean);
    case FeatureId::StdDev: return static_cast<double>(sd);
    case FeatureId::Variance: return static_cast<double>(var);
    case FeatureId::PeakToPeak: return static_cast<double>(mx - mn);
    case FeatureId::SquareRootAmplitude: {
      const long double r = mean_of([](long double v) { return std::sqrt(std::fabs(v)); });
      return static_cast<double>(r * r);
    }
    case FeatureId::AverageAmplitude: return static_cast<double>(avg_amp);
    case FeatureId::MeanSquareAmplitude: return static_cast<double>(rms);
    case FeatureId::PeakValue: return static_cast<double>(peak);
    case FeatureId::WaveformIndex: return div(rms, avg_amp);
    case FeatureId::PeakIndex: return div(peak, rms);
    case FeatureId::ImpulsionIndex: return div(peak, den);
    case FeatureId::ClearanceFactor: return div(rms, den);
    case FeatureId::Skewness:
      return div(mean_of([&](long double v) { return std::pow(std::fabs(v) - mean, 3); }),
                 sd * sd * sd);
    case FeatureId::Kurtosis:
      return div(mean_of([&](long double v) { return std::pow(std::fabs(v) - mean, 4); }),
                 var * var);
  }
  return std::nullopt;
}

/// Exact rational orbit of the logistic map for rational z1 = p/q and
/// mu = a/b, evaluated in long double from integer numerators. Valid while
/// the integers fit (a handful of terms for short denominators).
inline std::vector<long double> logistic_exact(std::int64_t p, std::int64_t q, std::int64_t a,
                                               std::int64_t b, int n) {
  // z = num/den; z' = a*num*(den-num) / (b*den^2)
  std::vector<long double> out;
  __int128 num = p, den = q;
  for (int k = 0; k < n; ++k) {
    out.push_back(static_cast<long double>(num) / static_cast<long double>(den));
    const __int128 nn = a * num * (den - num);
    const __int128 dd = b * den * den;
    __int128 g = nn, h = dd;
    while (h != 0) {
      const __int128 t = g % h;
      g = h;
      h = t;
    }
    num = nn / g;
    den = dd / g;
  }
  return out;
}

/// Pseudoinverse through the normal equations on the column space found
/// by complete-pivot QR: A+ = C+ R+ for the rank factorisation A = C R.
inline Eigen::MatrixXd pinv_rank_factor(const Eigen::MatrixXd& a, double rel_tol = 1e-10) {
  Eigen::FullPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(rel_tol);
  const Eigen::Index r = qr.rank();
  if (r == 0) return Eigen::MatrixXd::Zero(a.cols(), a.rows());
  const Eigen::MatrixXd q = qr.matrixQ();
  const Eigen::MatrixXd c = q.leftCols(r);  // orthonormal basis of range(A)
  const Eigen::MatrixXd rr = c.transpose() * a;  // r x n, full row rank
  const Eigen::MatrixXd rrt = rr * rr.transpose();
  return rr.transpose() * rrt.ldlt().solve(c.transpose());
}

/// Pearson's r written out from its definition with long double sums.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

}  // namespace oracle
