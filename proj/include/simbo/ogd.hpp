#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace simbo {

struct OgdConfig {
  double h = 1.0 / 3.0;

  /// h = 2 / (lambda_min + lambda_max) minimizes the contraction factor.
  static OgdConfig optimal(double lambda_min, double lambda_max) {
    return OgdConfig{2.0 / (lambda_min + lambda_max)};
  }
};

inline Eigen::VectorXd ogd_step(const Eigen::VectorXd& x, const Eigen::VectorXd& grad, double h) {
  if (x.size() != grad.size()) throw std::invalid_argument("ogd_step: dimension mismatch");
  if (!(h > 0.0)) throw std::invalid_argument("ogd_step: step size must be positive");
  return x - h * grad;
}

/// max{|1 - h lambda_min|, |1 - h lambda_max|}; valid for 0 < h < 2 / lambda_max.
inline double contraction_factor(double h, double lambda_min, double lambda_max) {
  if (!(h > 0.0) || !(h < 2.0 / lambda_max))
    throw std::invalid_argument("contraction_factor: step size outside (0, 2/lambda_max)");
  return std::max(std::abs(1.0 - h * lambda_min), std::abs(1.0 - h * lambda_max));
}

}  // namespace simbo
