#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace simbo {

/// Exponentially weighted recursive least squares on the shared coefficient
/// vector d of an order-m recurrence x_k = -sum_i d_i x_{k-m+i}.
///
/// Each update consumes one vector observation y = x_k (n scalar equations)
/// against an m x n regressor, so the gain solves an n x n system.
/// The recursion is carried in information form (R = inverse of P) and in
/// extended precision. Lagged decisions of slowly varying signals make
/// Phi Phi' badly conditioned, and the subtraction in the textbook P update
/// then loses accuracy and definiteness; R+ = alpha R + Phi Phi' has no
/// subtraction, and P is recovered from R after each update.
using CovarianceMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

struct RlsState {
  Eigen::VectorXd d_hat;
  CovarianceMatrix P;
  double alpha = 0.95;
  double beta = 1e10;
  long updates = 0;
  /// Information matrix, the inverse of P. Derived from P when left empty.
  CovarianceMatrix R;

  Eigen::Index order() const { return d_hat.size(); }
};

/// l1 prediction error of the pre-update estimate.
struct Residual {
  double e = 0.0;
};

struct RlsUpdate {
  RlsState state;
  Residual residual;
  /// Set when the covariance lost positive definiteness and was reset to beta*I.
  bool covariance_reset = false;
};

inline RlsState rls_init(Eigen::Index m, double beta, double alpha) {
  if (m < 1) throw std::invalid_argument("rls_init: order must be at least 1");
  if (!(beta > 0.0)) throw std::invalid_argument("rls_init: beta must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("rls_init: forgetting factor must lie in (0, 1)");
  return RlsState{Eigen::VectorXd::Zero(m), static_cast<long double>(beta) * CovarianceMatrix::Identity(m, m),
                  alpha, beta, 0,
                  CovarianceMatrix::Identity(m, m) / static_cast<long double>(beta)};
}

/// m x n regressor from the m most recent decisions, most recent first.
///
/// Row i holds -x_{k-m+i}, pairing each past sample with the coefficient it
/// multiplies in the recurrence, so that Phi' d = x_k for an exact model.
inline Eigen::MatrixXd regressor(std::span<const Eigen::VectorXd> window, Eigen::Index m) {
  if (m < 1 || static_cast<Eigen::Index>(window.size()) < m)
    throw std::invalid_argument("regressor: window holds fewer than m decisions");
  const Eigen::Index n = window.front().size();
  Eigen::MatrixXd phi(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    // window[j] = x_{k-1-j}; x_{k-m+i} sits at j = m-1-i
    const auto& x = window[static_cast<std::size_t>(m - 1 - i)];
    if (x.size() != n) throw std::invalid_argument("regressor: inconsistent decision sizes");
    phi.row(i) = -x.transpose();
  }
  return phi;
}

/// ||y - Phi' d||_1
inline double prediction_error(const Eigen::VectorXd& y, const Eigen::MatrixXd& phi,
                               const Eigen::VectorXd& d) {
  return (y - phi.transpose() * d).lpNorm<1>();
}

inline RlsUpdate rls_update(const RlsState& state, const Eigen::VectorXd& y,
                            const Eigen::MatrixXd& phi) {
  const Eigen::Index m = state.order();
  if (phi.rows() != m || phi.cols() != y.size())
    throw std::invalid_argument("rls_update: regressor shape does not match state and observation");

  RlsUpdate out{state, Residual{}, false};
  const Eigen::VectorXd innovation = y - phi.transpose() * state.d_hat;
  out.residual.e = innovation.lpNorm<1>();

  using LMatrix = CovarianceMatrix;
  using LVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const LMatrix phi_l = phi.cast<long double>();
  const LVector innovation_l =
      y.cast<long double>() - phi_l.transpose() * state.d_hat.cast<long double>();

  // Information form: R+ = alpha R + Phi Phi', gain P+ Phi with P+ = inverse(R+).
  // Algebraically the covariance recursion, without its cancellation.
  const LMatrix R_prev = state.R.size() ? state.R : LMatrix(state.P.inverse());
  LMatrix R = static_cast<long double>(state.alpha) * R_prev + phi_l * phi_l.transpose();
  R = (0.5L * (R + R.transpose())).eval();
  const Eigen::LDLT<LMatrix> ldlt(R);
  const LVector step = ldlt.solve(phi_l * innovation_l);
  LMatrix P = ldlt.solve(LMatrix::Identity(m, m));
  P = (0.5L * (P + P.transpose())).eval();

  const Eigen::SelfAdjointEigenSolver<LMatrix> eig(P, Eigen::EigenvaluesOnly);
  if (ldlt.info() != Eigen::Success || !step.allFinite() || !P.allFinite() ||
      !(eig.eigenvalues().minCoeff() > 0.0L)) {
    P = static_cast<long double>(state.beta) * LMatrix::Identity(m, m);
    R = LMatrix::Identity(m, m) / static_cast<long double>(state.beta);
    out.covariance_reset = true;
  } else {
    out.state.d_hat = (state.d_hat.cast<long double>() + step).cast<double>();
  }
  out.state.P = std::move(P);
  out.state.R = std::move(R);
  ++out.state.updates;
  return out;
}

/// Persistency of excitation of order m over the first h_len samples.
///
/// Builds the depth-m Hankel matrix with one column per (shift, coordinate)
/// pair, i.e. the scalar Hankel matrices of all coordinates side by side, and
/// checks full row rank with a relative singular-value threshold of 1e-9.
inline bool pe_order(std::span<const Eigen::VectorXd> samples, Eigen::Index m, Eigen::Index h_len) {
  if (m < 1 || h_len < m) throw std::invalid_argument("pe_order: need h_len >= m >= 1");
  if (static_cast<Eigen::Index>(samples.size()) < h_len)
    throw std::invalid_argument("pe_order: fewer samples than the window length");
  const Eigen::Index n = samples.front().size();
  const Eigen::Index shifts = h_len - m + 1;
  Eigen::MatrixXd hankel(m, shifts * n);
  for (Eigen::Index j = 0; j < shifts; ++j)
    for (Eigen::Index i = 0; i < m; ++i)
      hankel.block(i, j * n, 1, n) = samples[static_cast<std::size_t>(j + i)].transpose();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(hankel);
  const auto& sv = svd.singularValues();
  if (sv.size() < m || !(sv(0) > 0.0)) return false;
  return sv(m - 1) > 1e-9 * sv(0);
}

inline bool pe_order(std::span<const double> samples, Eigen::Index m, Eigen::Index h_len) {
  std::vector<Eigen::VectorXd> as_vectors;
  as_vectors.reserve(samples.size());
  for (double s : samples) as_vectors.push_back(Eigen::VectorXd::Constant(1, s));
  return pe_order(std::span<const Eigen::VectorXd>(as_vectors), m, h_len);
}

}  // namespace simbo
