#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "simbo/problems.hpp"

namespace simbo {

/// Companion realization of an internal model: superdiagonal ones, last row -d.
struct Realization {
  Eigen::MatrixXd F;
  Eigen::VectorXd G;
  InternalModel d_used;

  Eigen::Index order() const { return F.rows(); }
};

inline Realization companion(const InternalModel& model) {
  const Eigen::Index m = model.order();
  if (m < 1) throw std::invalid_argument("companion: empty internal model");
  Realization r;
  r.F = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i + 1 < m; ++i) r.F(i, i + 1) = 1.0;
  r.F.row(m - 1) = -model.d.transpose();
  r.G = Eigen::VectorXd::Zero(m);
  r.G(m - 1) = 1.0;
  r.d_used = model;
  return r;
}

inline double spectral_radius(const Eigen::MatrixXd& M) {
  if (M.rows() == 1) return std::abs(M(0, 0));
  const Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// F + lambda G K, the closed loop seen along a Hessian eigendirection with eigenvalue lambda.
inline Eigen::MatrixXd closed_loop(const Realization& r, const Eigen::RowVectorXd& K, double lambda) {
  return r.F + lambda * r.G * K;
}

/// Largest spectral radius of F + lambda G K over a uniform lambda grid, endpoints included.
inline double verify_margin(const Realization& r, const Eigen::RowVectorXd& K, double lambda_min,
                            double lambda_max, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("verify_margin: need at least two grid points");
  if (K.size() != r.order()) throw std::invalid_argument("verify_margin: K has wrong length");
  double worst = 0.0;
  Eigen::MatrixXd M = r.F;
  for (int i = 0; i < grid_points; ++i) {
    const double lambda =
        lambda_min + (lambda_max - lambda_min) * static_cast<double>(i) / (grid_points - 1);
    M.row(r.order() - 1) = r.F.row(r.order() - 1) + lambda * K;
    worst = std::max(worst, spectral_radius(M));
  }
  return worst;
}

enum class TargetPlacement {
  /// Roots evenly spaced on the real segment [-r, r] (a single root at r when m = 1).
  RealSpread,
  /// Conjugate pairs r exp(+-i pi (2j+1) / 2m), plus a real root at r for odd m.
  ConjugatePairs,
};

struct SynthesisConfig {
  int grid_points = 101;
  double stability_margin = 0.02;
  std::vector<double> target_radius_schedule{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  TargetPlacement placement = TargetPlacement::ConjugatePairs;
  /// Polish the best placement candidate by minimizing the grid spectral radius
  /// directly over K. Without it the first candidate that verifies is returned.
  bool refine = true;
  int refine_grid_points = 41;
  int refine_max_iterations = 400;
};

/// Monic target polynomial (without the leading one) with all roots at radius r.
inline Eigen::VectorXd target_polynomial(Eigen::Index m, double r, TargetPlacement placement) {
  std::vector<std::complex<double>> roots;
  if (placement == TargetPlacement::RealSpread) {
    if (m == 1) {
      roots.emplace_back(r, 0.0);
    } else {
      for (Eigen::Index i = 0; i < m; ++i)
        roots.emplace_back(-r + 2.0 * r * static_cast<double>(i) / static_cast<double>(m - 1), 0.0);
    }
  } else {
    for (Eigen::Index j = 0; j < m / 2; ++j) {
      const double angle = std::numbers::pi * static_cast<double>(2 * j + 1) / static_cast<double>(2 * m);
      roots.push_back(std::polar(r, angle));
      roots.push_back(std::polar(r, -angle));
    }
    if (m % 2 == 1) roots.emplace_back(r, 0.0);
  }
  std::vector<std::complex<double>> poly{1.0};
  for (const auto& root : roots) {
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= root * poly[i];
    }
    poly = std::move(next);
  }
  Eigen::VectorXd t(m);
  for (Eigen::Index i = 0; i < m; ++i) t(i) = poly[static_cast<std::size_t>(i)].real();
  return t;
}

/// Control-based tracker: realization, feedback row and internal state.
///
/// The m*n internal state is stored as an n x m matrix W whose column j is the
/// j-th block of w, so the Kronecker actions reduce to (F x I) w = W F' and
/// (K x I) w = W K'.
struct Controller {
  Realization realization;
  Eigen::RowVectorXd K;
  Eigen::MatrixXd W;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double margin = 0.0;

  Eigen::Index order() const { return realization.order(); }

  /// Stacked state vector [w_0; ...; w_{m-1}].
  Eigen::VectorXd w() const { return Eigen::Map<const Eigen::VectorXd>(W.data(), W.size()); }

  Eigen::VectorXd output() const { return W * K.transpose(); }
};

namespace detail {

struct RefineContext {
  const Realization* realization;
  double lambda_min, lambda_max;
  int grid_points;
};

inline double refine_objective(const gsl_vector* v, void* params) {
  const auto* ctx = static_cast<const RefineContext*>(params);
  Eigen::RowVectorXd K(static_cast<Eigen::Index>(v->size));
  for (std::size_t i = 0; i < v->size; ++i) K(static_cast<Eigen::Index>(i)) = gsl_vector_get(v, i);
  return verify_margin(*ctx->realization, K, ctx->lambda_min, ctx->lambda_max, ctx->grid_points);
}

struct GslVectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct GslMinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* s) const { gsl_multimin_fminimizer_free(s); }
};

/// Nelder-Mead on the grid spectral radius, restarted from its own optimum.
inline Eigen::RowVectorXd refine_feedback(const Realization& r, Eigen::RowVectorXd K,
                                          double lambda_min, double lambda_max,
                                          const SynthesisConfig& cfg) {
  const auto m = static_cast<std::size_t>(K.size());
  RefineContext ctx{&r, lambda_min, lambda_max, cfg.refine_grid_points};
  gsl_multimin_function fn{&refine_objective, m, &ctx};
  std::unique_ptr<gsl_vector, GslVectorDeleter> x(gsl_vector_alloc(m));
  std::unique_ptr<gsl_vector, GslVectorDeleter> step(gsl_vector_alloc(m));
  std::unique_ptr<gsl_multimin_fminimizer, GslMinimizerDeleter> solver(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, m));

  gsl_error_handler_t* previous = gsl_set_error_handler_off();
  for (std::size_t i = 0; i < m; ++i) gsl_vector_set(x.get(), i, K(static_cast<Eigen::Index>(i)));
  double best = refine_objective(x.get(), &ctx);

  constexpr int kRestarts = 3;
  for (int restart = 0; restart < kRestarts; ++restart) {
    for (std::size_t i = 0; i < m; ++i) {
      gsl_vector_set(x.get(), i, K(static_cast<Eigen::Index>(i)));
      gsl_vector_set(step.get(), i, 0.05 * std::max(1.0, std::abs(K(static_cast<Eigen::Index>(i)))) / (1 + restart));
    }
    if (gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), step.get()) != GSL_SUCCESS) break;
    for (int it = 0; it < cfg.refine_max_iterations; ++it) {
      if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver.get()), 1e-9) == GSL_SUCCESS) break;
    }
    const double value = gsl_multimin_fminimizer_minimum(solver.get());
    if (!(value < best)) break;
    best = value;
    const gsl_vector* xmin = gsl_multimin_fminimizer_x(solver.get());
    for (std::size_t i = 0; i < m; ++i) K(static_cast<Eigen::Index>(i)) = gsl_vector_get(xmin, i);
  }
  gsl_set_error_handler(previous);
  return K;
}

}  // namespace detail

/// Robust feedback synthesis over the Hessian eigenvalue interval.
///
/// Nominal pole placement at the interval midpoint: with c = (d_hat - t) / lambda_nom
/// the closed loop at lambda has characteristic polynomial z^m + sum (d_i - lambda c_i) z^i,
/// which equals the target t at lambda_nom. Candidates are deadbeat (t = 0) followed by
/// targets at each radius in the schedule; every candidate is verified on the lambda grid.
/// Returns nullopt when nothing verifies below 1 - stability_margin.
inline std::optional<Controller> synthesize(const InternalModel& d_hat, double lambda_min,
                                            double lambda_max, const SynthesisConfig& cfg = {}) {
  if (!(lambda_min > 0.0) || lambda_min > lambda_max)
    throw std::invalid_argument("synthesize: invalid eigenvalue interval");
  if (d_hat.order() < 1) throw std::invalid_argument("synthesize: empty internal model");
  if (!d_hat.d.allFinite()) return std::nullopt;

  const Eigen::Index m = d_hat.order();
  const Realization r = companion(d_hat);
  const double lambda_nom = 0.5 * (lambda_min + lambda_max);
  const double threshold = 1.0 - cfg.stability_margin;

  auto feedback_for = [&](const Eigen::VectorXd& t) -> Eigen::RowVectorXd {
    return ((d_hat.d - t) / lambda_nom).transpose();
  };

  std::vector<Eigen::VectorXd> targets{Eigen::VectorXd::Zero(m)};
  for (double radius : cfg.target_radius_schedule)
    targets.push_back(target_polynomial(m, radius, cfg.placement));

  Eigen::RowVectorXd best_K;
  double best_margin = std::numeric_limits<double>::infinity();
  for (const auto& t : targets) {
    const Eigen::RowVectorXd K = feedback_for(t);
    const double margin = verify_margin(r, K, lambda_min, lambda_max, cfg.grid_points);
    if (!cfg.refine && margin < threshold) {
      best_K = K;
      best_margin = margin;
      break;
    }
    if (margin < best_margin) {
      best_margin = margin;
      best_K = K;
    }
  }

  if (cfg.refine && best_margin > 0.0 && std::isfinite(best_margin)) {
    const Eigen::RowVectorXd polished =
        detail::refine_feedback(r, best_K, lambda_min, lambda_max, cfg);
    const double margin = verify_margin(r, polished, lambda_min, lambda_max, cfg.grid_points);
    if (margin < best_margin) {
      best_margin = margin;
      best_K = polished;
    }
  }

  if (!(best_margin < threshold)) return std::nullopt;
  return Controller{r, best_K, Eigen::MatrixXd(), lambda_min, lambda_max, best_margin};
}

struct WarmStart {
  Eigen::MatrixXd W;
  /// K is the zero row, so no state reproduces a nonzero decision.
  bool degenerate = false;
};

/// Minimum-norm internal state with (K x I) w = x_current.
inline WarmStart warm_start(const Eigen::RowVectorXd& K, const Eigen::VectorXd& x_current) {
  const double kk = K.squaredNorm();
  if (kk == 0.0) return WarmStart{Eigen::MatrixXd::Zero(x_current.size(), K.size()), true};
  return WarmStart{x_current * K / kk, false};
}

/// Internal state consistent with the last m decisions and gradients.
///
/// Finds the state the new controller would hold now had it produced
/// decisions[0..m-1] (oldest first, the last one being x_k) while being fed
/// gradients[0..m-2]. Solved per coordinate against the observability matrix
/// [K; KF; ...; KF^{m-1}] in the minimum-norm least-squares sense, so
/// unobservable pairs degrade gracefully. Falls back to the minimum-norm
/// warm start when the history is too short.
inline WarmStart warm_start_bumpless(const Realization& r, const Eigen::RowVectorXd& K,
                                     std::span<const Eigen::VectorXd> decisions,
                                     std::span<const Eigen::VectorXd> gradients) {
  const Eigen::Index m = r.order();
  if (decisions.empty()) throw std::invalid_argument("warm_start_bumpless: no decisions");
  const Eigen::VectorXd& x_now = decisions.back();
  if (static_cast<Eigen::Index>(decisions.size()) < m ||
      static_cast<Eigen::Index>(gradients.size()) < m - 1 || K.squaredNorm() == 0.0)
    return warm_start(K, x_now);

  const Eigen::Index n = x_now.size();
  const auto first = decisions.size() - static_cast<std::size_t>(m);
  const auto first_grad = gradients.size() - static_cast<std::size_t>(m - 1);

  Eigen::MatrixXd O(m, m);
  Eigen::RowVectorXd row = K;
  for (Eigen::Index j = 0; j < m; ++j) {
    O.row(j) = row;
    row = row * r.F;
  }
  // Forced part of the outputs: sum_{i<j} K F^{j-1-i} G g_i
  Eigen::MatrixXd rhs(m, n);
  Eigen::MatrixXd forced = Eigen::MatrixXd::Zero(m, n);  // state contribution, column per coordinate
  for (Eigen::Index j = 0; j < m; ++j) {
    rhs.row(j) = decisions[first + static_cast<std::size_t>(j)].transpose() - K * forced;
    if (j + 1 < m) forced = r.F * forced + r.G * gradients[first_grad + static_cast<std::size_t>(j)].transpose();
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(O);
  const Eigen::MatrixXd w0 = cod.solve(rhs);  // m x n, state at the oldest decision
  Eigen::MatrixXd w = w0;
  for (Eigen::Index j = 0; j + 1 < m; ++j)
    w = r.F * w + r.G * gradients[first_grad + static_cast<std::size_t>(j)].transpose();
  return WarmStart{w.transpose(), false};
}

struct CbStep {
  Controller controller;
  Eigen::VectorXd x_next;
};

/// w+ = (F x I) w + (G x I) grad, x_next = (K x I) w+.
inline CbStep cb_step(const Controller& ctrl, const Eigen::VectorXd& grad) {
  if (ctrl.W.rows() != grad.size() || ctrl.W.cols() != ctrl.order())
    throw std::invalid_argument("cb_step: state and gradient dimensions disagree");
  CbStep out{ctrl, Eigen::VectorXd()};
  out.controller.W = ctrl.W * ctrl.realization.F.transpose();
  out.controller.W.col(ctrl.order() - 1) += grad;
  out.x_next = out.controller.output();
  return out;
}

}  // namespace simbo
