#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "simbo/imc.hpp"
#include "simbo/ogd.hpp"
#include "simbo/rls.hpp"

namespace simbo {

enum class Phase { Identify, Track };

inline std::string_view to_string(Phase p) { return p == Phase::Identify ? "identify" : "track"; }

enum class EventKind {
  EnterTrack,
  SynthesisInfeasible,
  Recompute,
  RecomputeInfeasible,
  ModelChange,
  CovarianceReset,
  DegenerateWarmStart,
};

inline std::string_view to_string(EventKind e) {
  switch (e) {
    case EventKind::EnterTrack: return "enter_track";
    case EventKind::SynthesisInfeasible: return "synthesis_infeasible";
    case EventKind::Recompute: return "recompute";
    case EventKind::RecomputeInfeasible: return "recompute_infeasible";
    case EventKind::ModelChange: return "model_change";
    case EventKind::CovarianceReset: return "covariance_reset";
    case EventKind::DegenerateWarmStart: return "degenerate_warm_start";
  }
  return "unknown";
}

struct Event {
  long k = 0;
  EventKind kind = EventKind::EnterTrack;
  double residual = 0.0;
  /// Phase in force after the event.
  Phase phase = Phase::Identify;
};

enum class WarmStartMode { MinNorm, Bumpless };

struct SupervisorConfig {
  Eigen::Index m = 2;
  double theta = 1e-9;
  int patience_t = 10;
  double change_C = 100.0;
  double change_floor = 1e-9;
  /// Steps after entering phase 1 before RLS consumes data; negative selects
  /// max(2m + 5, steps for the OGD transient to shrink by burn_in_tolerance).
  int burn_in = -1;
  double burn_in_tolerance = 1e-12;
  /// Decay the closed-loop transient must reach after a controller swap
  /// before RLS consumes samples again.
  double holdoff_tolerance = 1e-2;
  double rls_alpha = 0.5;
  double rls_beta = 1e10;
  double lambda_min = 1.0;
  double lambda_max = 5.0;
  OgdConfig ogd{1.0 / 3.0};
  SynthesisConfig imc{};
  WarmStartMode warm_start = WarmStartMode::Bumpless;

  void validate() const {
    if (m < 1) throw std::invalid_argument("supervisor: model order must be at least 1");
    if (!(theta > 0.0)) throw std::invalid_argument("supervisor: theta must be positive");
    if (!(change_C > 1.0)) throw std::invalid_argument("supervisor: change ratio C must exceed 1");
    if (patience_t < 1) throw std::invalid_argument("supervisor: patience must be at least 1");
    if (!(change_floor >= 0.0)) throw std::invalid_argument("supervisor: negative change floor");
    if (!(rls_alpha > 0.0 && rls_alpha < 1.0))
      throw std::invalid_argument("supervisor: forgetting factor must lie in (0, 1)");
    if (!(rls_beta > 0.0)) throw std::invalid_argument("supervisor: beta must be positive");
    if (!(burn_in_tolerance > 0.0 && burn_in_tolerance < 1.0))
      throw std::invalid_argument("supervisor: burn-in tolerance must lie in (0, 1)");
    if (!(holdoff_tolerance > 0.0 && holdoff_tolerance < 1.0))
      throw std::invalid_argument("supervisor: holdoff tolerance must lie in (0, 1)");
    contraction_factor(ogd.h, lambda_min, lambda_max);
  }

  /// Steps RLS sits out after a controller swap: at least m + 1, and long
  /// enough for closed-loop modes of the given spectral radius to shrink by
  /// holdoff_tolerance.
  long transient_holdoff(double spectral_radius) const {
    const long floor = static_cast<long>(m) + 1;
    if (!(spectral_radius > 0.0)) return floor;
    const double steps = std::ceil(std::log(holdoff_tolerance) / std::log(spectral_radius));
    return std::max(floor, static_cast<long>(steps));
  }

  int effective_burn_in() const {
    const int floor = static_cast<int>(2 * m + 5);
    if (burn_in >= 0) return burn_in;
    const double rho = contraction_factor(ogd.h, lambda_min, lambda_max);
    const int decay = static_cast<int>(std::ceil(std::log(burn_in_tolerance) / std::log(rho)));
    return std::max(floor, decay);
  }
};

struct SupervisorState {
  Phase phase = Phase::Identify;
  long k = 0;
  /// Current decision x_k.
  Eigen::VectorXd x;
  /// Previous decisions x_{k-1}, x_{k-2}, ... (at most m + 1).
  std::deque<Eigen::VectorXd> history;
  /// Previous gradients g_{k-1}, g_{k-2}, ... (at most m).
  std::deque<Eigen::VectorXd> gradients;
  RlsState rls;
  std::optional<Controller> controller;
  double best_residual = 0.0;
  long best_iter = 0;
  /// Model of the deployed controller; reference for change detection.
  Eigen::VectorXd d_ref;
  long phase_start = 0;
  /// First step whose sample RLS may consume / change detection may inspect.
  long rls_resume_at = 0;
  long change_resume_at = 0;
  std::optional<double> last_residual;
  std::optional<double> last_frozen_residual;
  std::vector<Event> events;
};

/// Phase 1 ends once the residual is at most theta after the burn-in.
inline bool check_phase1_exit(double e_k, double theta, long k, long burn_in) {
  return k >= burn_in && e_k <= theta;
}

inline bool check_recompute(double e_k, double e_best, long k, long k_best, long t) {
  return e_k <= e_best && k >= k_best + t;
}

/// res_k > C * max(res_{k-1}, floor), both residuals against the frozen model.
inline bool check_model_change(double res_k, double res_km1, double C, double floor) {
  return res_k > C * std::max(res_km1, floor);
}

inline SupervisorState simbo_init(const SupervisorConfig& cfg, Eigen::VectorXd x0) {
  cfg.validate();
  SupervisorState s;
  s.x = std::move(x0);
  s.rls = rls_init(cfg.m, cfg.rls_beta, cfg.rls_alpha);
  s.rls_resume_at = cfg.effective_burn_in();
  return s;
}

enum class DecisionSource { Ogd, ControlBased };

struct SimboStep {
  SupervisorState state;
  Eigen::VectorXd x_next;
  DecisionSource source = DecisionSource::Ogd;
};

namespace detail {

inline std::vector<Eigen::VectorXd> oldest_first(const std::deque<Eigen::VectorXd>& recent_first,
                                                 std::size_t count) {
  count = std::min(count, recent_first.size());
  return {recent_first.rbegin() + static_cast<std::ptrdiff_t>(recent_first.size() - count),
          recent_first.rend()};
}

inline Controller install_controller(const SupervisorConfig& cfg, const SupervisorState& s,
                                     Controller ctrl, bool& degenerate) {
  WarmStart ws;
  if (cfg.warm_start == WarmStartMode::Bumpless) {
    const auto m = static_cast<std::size_t>(cfg.m);
    std::vector<Eigen::VectorXd> decisions = oldest_first(s.history, m - 1);
    decisions.push_back(s.x);
    const std::vector<Eigen::VectorXd> grads = oldest_first(s.gradients, m - 1);
    ws = warm_start_bumpless(ctrl.realization, ctrl.K, decisions, grads);
  } else {
    ws = warm_start(ctrl.K, s.x);
  }
  degenerate = ws.degenerate;
  ctrl.W = std::move(ws.W);
  return ctrl;
}

}  // namespace detail

/// One SIMBO iteration: consume x_k, return x_{k+1}.
///
/// `oracle(k, x)` returns the gradient of f_k at x. In phase 1 decisions come
/// from OGD while RLS learns the recurrence of the decisions; once the
/// residual drops below theta a controller is synthesized from the estimate
/// and phase 2 runs the control-based update, recomputing the controller on
/// improved residuals (with patience) and falling back to phase 1 when the
/// frozen-model residual jumps by more than C.
template <class GradientOracle>
SimboStep simbo_step(SupervisorState s, const SupervisorConfig& cfg, GradientOracle&& oracle) {
  const long k = s.k;
  const Eigen::Index m = cfg.m;
  const Eigen::VectorXd grad = oracle(k, s.x);

  auto log = [&](EventKind kind, double residual) {
    s.events.push_back(Event{k, kind, residual, s.phase});
  };

  // Identification on sample x_k.
  std::optional<double> residual;
  Eigen::VectorXd d_certified;
  if (static_cast<Eigen::Index>(s.history.size()) >= m && k >= s.rls_resume_at) {
    const std::vector<Eigen::VectorXd> win(s.history.begin(), s.history.begin() + m);
    const Eigen::MatrixXd phi = regressor(win, m);
    d_certified = s.rls.d_hat;
    RlsUpdate upd = rls_update(s.rls, s.x, phi);
    residual = upd.residual.e;
    s.rls = std::move(upd.state);
    if (upd.covariance_reset) log(EventKind::CovarianceReset, *residual);
  }
  s.last_residual = residual;
  s.last_frozen_residual.reset();

  auto deploy = [&](Controller ctrl, EventKind kind) {
    bool degenerate = false;
    s.controller = detail::install_controller(cfg, s, std::move(ctrl), degenerate);
    s.d_ref = d_certified;
    s.rls_resume_at = k + cfg.transient_holdoff(s.controller->margin);
    s.change_resume_at = k + m + 1;
    log(kind, residual.value_or(0.0));
    if (degenerate) log(EventKind::DegenerateWarmStart, residual.value_or(0.0));
  };

  const long burn_in = cfg.effective_burn_in();
  bool entered_track = false;
  if (s.phase == Phase::Identify && residual &&
      check_phase1_exit(*residual, cfg.theta, k - s.phase_start, burn_in)) {
    if (auto ctrl = synthesize(InternalModel{d_certified}, cfg.lambda_min, cfg.lambda_max, cfg.imc)) {
      s.phase = Phase::Track;
      s.best_residual = *residual;
      s.best_iter = k;
      deploy(std::move(*ctrl), EventKind::EnterTrack);
      entered_track = true;
    } else {
      log(EventKind::SynthesisInfeasible, *residual);
    }
  }

  if (s.phase == Phase::Track && !entered_track) {
    if (k >= s.change_resume_at && static_cast<Eigen::Index>(s.history.size()) >= m + 1) {
      const std::vector<Eigen::VectorXd> now(s.history.begin(), s.history.begin() + m);
      const std::vector<Eigen::VectorXd> before(s.history.begin() + 1, s.history.begin() + m + 1);
      const double res_k = prediction_error(s.x, regressor(now, m), s.d_ref);
      const double res_km1 = prediction_error(s.history.front(), regressor(before, m), s.d_ref);
      s.last_frozen_residual = res_k;
      if (check_model_change(res_k, res_km1, cfg.change_C, cfg.change_floor)) {
        s.phase = Phase::Identify;
        s.phase_start = k;
        s.controller.reset();
        s.rls = rls_init(m, cfg.rls_beta, cfg.rls_alpha);
        s.rls_resume_at = k + burn_in;
        s.best_residual = 0.0;
        s.best_iter = k;
        log(EventKind::ModelChange, res_k);
      }
    }
    if (s.phase == Phase::Track && residual &&
        check_recompute(*residual, s.best_residual, k, s.best_iter, cfg.patience_t)) {
      if (auto ctrl = synthesize(InternalModel{d_certified}, cfg.lambda_min, cfg.lambda_max, cfg.imc)) {
        deploy(std::move(*ctrl), EventKind::Recompute);
      } else {
        log(EventKind::RecomputeInfeasible, *residual);
      }
      s.best_residual = *residual;
      s.best_iter = k;
    }
  }

  SimboStep out;
  if (s.phase == Phase::Track) {
    CbStep step = cb_step(*s.controller, grad);
    s.controller = std::move(step.controller);
    out.x_next = std::move(step.x_next);
    out.source = DecisionSource::ControlBased;
  } else {
    out.x_next = ogd_step(s.x, grad, cfg.ogd.h);
    out.source = DecisionSource::Ogd;
  }

  s.history.push_front(std::move(s.x));
  while (static_cast<Eigen::Index>(s.history.size()) > m + 1) s.history.pop_back();
  s.gradients.push_front(grad);
  while (static_cast<Eigen::Index>(s.gradients.size()) > m) s.gradients.pop_back();
  s.x = out.x_next;
  ++s.k;
  out.state = std::move(s);
  return out;
}

}  // namespace simbo
