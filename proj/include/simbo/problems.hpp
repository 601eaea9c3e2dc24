#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "simbo/random.hpp"

namespace simbo {

// ---------------------------------------------------------------------------
// Driving signals
// ---------------------------------------------------------------------------

struct Signal;

struct Sine {
  double omega0 = 1.0;
};

struct Ramp {
  Eigen::VectorXd b_bar;
};

struct SineRamp {
  double omega0 = 1.0;
  Eigen::VectorXd b_bar;
};

struct SineSquared {
  double omega1 = 10.0;
};

struct Constant {
  Eigen::VectorXd b_bar;
};

/// Piecewise signal: `first` for k < k_switch, `second` from k_switch on.
/// Both segments are evaluated at the absolute step index.
struct Switch {
  std::shared_ptr<const Signal> first;
  std::shared_ptr<const Signal> second;
  long k_switch = 0;
};

struct Signal {
  std::variant<Sine, Ramp, SineRamp, SineSquared, Switch, Constant> kind;
};

inline Signal make_switch(Signal first, Signal second, long k_switch) {
  return Signal{Switch{std::make_shared<const Signal>(std::move(first)),
                       std::make_shared<const Signal>(std::move(second)), k_switch}};
}

inline std::string signal_name(const Signal& s) {
  struct {
    std::string operator()(const Sine&) const { return "sine"; }
    std::string operator()(const Ramp&) const { return "ramp"; }
    std::string operator()(const SineRamp&) const { return "sine_ramp"; }
    std::string operator()(const SineSquared&) const { return "sine_squared"; }
    std::string operator()(const Constant&) const { return "constant"; }
    std::string operator()(const Switch& w) const {
      return signal_name(*w.first) + "->" + signal_name(*w.second);
    }
  } visitor;
  return std::visit(visitor, s.kind);
}

namespace detail {

inline void require_length(const Eigen::VectorXd& b_bar, Eigen::Index n) {
  if (b_bar.size() != n)
    throw std::invalid_argument("signal vector b_bar has length " +
                                std::to_string(b_bar.size()) + ", expected " +
                                std::to_string(n));
}

}  // namespace detail

/// Linear term b_k of the cost at step k.
inline Eigen::VectorXd signal_value(const Signal& signal, long k, double Ts, Eigen::Index n) {
  const double t = static_cast<double>(k) * Ts;
  struct Visitor {
    long k;
    double t, Ts;
    Eigen::Index n;
    Eigen::VectorXd operator()(const Sine& s) const {
      return Eigen::VectorXd::Constant(n, std::sin(s.omega0 * t));
    }
    Eigen::VectorXd operator()(const Ramp& s) const {
      detail::require_length(s.b_bar, n);
      return t * s.b_bar;
    }
    Eigen::VectorXd operator()(const SineRamp& s) const {
      detail::require_length(s.b_bar, n);
      return Eigen::VectorXd::Constant(n, std::sin(s.omega0 * t)) + t * s.b_bar;
    }
    Eigen::VectorXd operator()(const SineSquared& s) const {
      const double v = std::sin(s.omega1 * t);
      return Eigen::VectorXd::Constant(n, v * v);
    }
    Eigen::VectorXd operator()(const Constant& s) const {
      detail::require_length(s.b_bar, n);
      return s.b_bar;
    }
    Eigen::VectorXd operator()(const Switch& s) const {
      return signal_value(k < s.k_switch ? *s.first : *s.second, k, Ts, n);
    }
  };
  return std::visit(Visitor{k, t, Ts, n}, signal.kind);
}

// ---------------------------------------------------------------------------
// Internal models
// ---------------------------------------------------------------------------

/// Monic denominator B_D(z) = z^m + sum_i d_i z^i, stored as d_0..d_{m-1}.
struct InternalModel {
  Eigen::VectorXd d;

  Eigen::Index order() const { return d.size(); }

  /// Full coefficient vector, lowest degree first, including the leading 1.
  Eigen::VectorXd monic() const {
    Eigen::VectorXd p(d.size() + 1);
    p.head(d.size()) = d;
    p(d.size()) = 1.0;
    return p;
  }

  static InternalModel from_monic(const Eigen::VectorXd& p) {
    if (p.size() < 1 || p(p.size() - 1) != 1.0)
      throw std::invalid_argument("polynomial is not monic");
    return InternalModel{p.head(p.size() - 1)};
  }
};

/// Product of two polynomials given lowest degree first.
inline Eigen::VectorXd poly_multiply(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i + j) += a(i) * b(j);
  return out;
}

inline InternalModel model_product(const InternalModel& a, const InternalModel& b) {
  return InternalModel::from_monic(poly_multiply(a.monic(), b.monic()));
}

/// z^2 - 2 cos(theta) z + 1, the annihilator of any sinusoid at theta rad/sample.
inline InternalModel oscillator_model(double theta) {
  return InternalModel{Eigen::Vector2d(1.0, -2.0 * std::cos(theta))};
}

inline InternalModel integrator_model(int multiplicity) {
  Eigen::VectorXd p = Eigen::VectorXd::Ones(1);
  const Eigen::Vector2d root_one(-1.0, 1.0);
  for (int i = 0; i < multiplicity; ++i) p = poly_multiply(p, root_one);
  return InternalModel::from_monic(p);
}

/// Minimal monic annihilating polynomial of a non-switching signal.
inline InternalModel true_denominator(const Signal& signal, double Ts) {
  struct Visitor {
    double Ts;
    InternalModel operator()(const Sine& s) const { return oscillator_model(s.omega0 * Ts); }
    InternalModel operator()(const Ramp&) const { return integrator_model(2); }
    InternalModel operator()(const SineRamp& s) const {
      return model_product(oscillator_model(s.omega0 * Ts), integrator_model(2));
    }
    InternalModel operator()(const SineSquared& s) const {
      // sin^2(x) = (1 - cos 2x) / 2
      return model_product(integrator_model(1), oscillator_model(2.0 * s.omega1 * Ts));
    }
    InternalModel operator()(const Constant&) const { return integrator_model(1); }
    InternalModel operator()(const Switch&) const {
      throw std::invalid_argument("a switching signal has no single internal model");
    }
  };
  return std::visit(Visitor{Ts}, signal.kind);
}

// ---------------------------------------------------------------------------
// Problems
// ---------------------------------------------------------------------------

/// f_k(x) = 1/2 x'Ax + x'b_k with a fixed Hessian.
struct QuadraticProblem {
  Eigen::MatrixXd A;
  double lambda_min = 1.0;
  double lambda_max = 1.0;
  Signal signal;
  double Ts = 0.1;

  Eigen::Index dimension() const { return A.rows(); }
};

/// f_k(x) = 1/2 x'A_k x + x'b_bar with A_k = V (Lambda + sin(omega0 k Ts) diag(v)) V'.
struct TvHessianProblem {
  Eigen::MatrixXd V;
  Eigen::VectorXd Lambda;
  Eigen::VectorXd v;
  double omega0 = 1.0;
  double Ts = 0.1;
  Eigen::VectorXd b_bar;
  double lambda_min = 1.0;
  double lambda_max = 5.0;

  Eigen::Index dimension() const { return V.rows(); }
};

using Problem = std::variant<QuadraticProblem, TvHessianProblem>;

/// Random SPD Hessian with both spectrum endpoints present exactly.
inline QuadraticProblem make_quadratic(Eigen::Index n, double lambda_min, double lambda_max,
                                       std::uint64_t seed, Signal signal = Signal{Sine{}},
                                       double Ts = 0.1) {
  if (n < 1) throw std::invalid_argument("dimension must be at least 1");
  if (!(lambda_min > 0.0) || lambda_min > lambda_max)
    throw std::invalid_argument("eigenvalue bounds must satisfy 0 < lambda_min <= lambda_max");
  Rng rng(seed);
  Eigen::VectorXd spectrum(n);
  spectrum(0) = lambda_min;
  if (n > 1) spectrum(1) = lambda_max;
  for (Eigen::Index i = 2; i < n; ++i) spectrum(i) = rng.uniform(lambda_min, lambda_max);
  const Eigen::MatrixXd Q = rng.orthogonal(n);
  Eigen::MatrixXd A = Q * spectrum.asDiagonal() * Q.transpose();
  A = 0.5 * (A + A.transpose()).eval();
  return QuadraticProblem{std::move(A), lambda_min, lambda_max, std::move(signal), Ts};
}

/// Random linear-term direction with entries in [0.5, 1.5].
inline Eigen::VectorXd make_linear_term(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  return rng.uniform_vector(n, 0.5, 1.5);
}

/// Time-varying Hessian problem whose spectrum stays inside [1, 5].
inline TvHessianProblem make_tv_hessian(Eigen::Index n, double omega0, double Ts,
                                        std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("dimension must be at least 1");
  Rng rng(seed);
  TvHessianProblem p;
  p.V = rng.orthogonal(n);
  p.Lambda = rng.uniform_vector(n, 2.0, 4.0);
  p.v = rng.uniform_vector(n, -1.0, 1.0);
  p.omega0 = omega0;
  p.Ts = Ts;
  p.b_bar = make_linear_term(n, seed);
  p.lambda_min = 1.0;
  p.lambda_max = 5.0;
  return p;
}

inline Eigen::Index dimension(const Problem& problem) {
  return std::visit([](const auto& p) { return p.dimension(); }, problem);
}

inline double lambda_min(const Problem& problem) {
  return std::visit([](const auto& p) { return p.lambda_min; }, problem);
}

inline double lambda_max(const Problem& problem) {
  return std::visit([](const auto& p) { return p.lambda_max; }, problem);
}

inline Eigen::MatrixXd hessian(const QuadraticProblem& p, long) { return p.A; }

inline Eigen::MatrixXd hessian(const TvHessianProblem& p, long k) {
  const double s = std::sin(p.omega0 * static_cast<double>(k) * p.Ts);
  const Eigen::VectorXd spectrum = p.Lambda + s * p.v;
  return p.V * spectrum.asDiagonal() * p.V.transpose();
}

inline Eigen::MatrixXd hessian(const Problem& problem, long k) {
  return std::visit([k](const auto& p) { return hessian(p, k); }, problem);
}

inline Eigen::VectorXd linear_term(const QuadraticProblem& p, long k) {
  return signal_value(p.signal, k, p.Ts, p.dimension());
}

inline Eigen::VectorXd linear_term(const TvHessianProblem& p, long) { return p.b_bar; }

inline Eigen::VectorXd linear_term(const Problem& problem, long k) {
  return std::visit([k](const auto& p) { return linear_term(p, k); }, problem);
}

inline double cost(const Problem& problem, const Eigen::VectorXd& x, long k) {
  return 0.5 * x.dot(hessian(problem, k) * x) + x.dot(linear_term(problem, k));
}

inline Eigen::VectorXd gradient(const Problem& problem, const Eigen::VectorXd& x, long k) {
  if (x.size() != dimension(problem))
    throw std::invalid_argument("decision has length " + std::to_string(x.size()) +
                                ", problem dimension is " +
                                std::to_string(dimension(problem)));
  return hessian(problem, k) * x + linear_term(problem, k);
}

/// Stationary point of f_k, i.e. the solution of A_k x = -b_k.
inline Eigen::VectorXd minimizer(const Problem& problem, long k) {
  const Eigen::MatrixXd A = hessian(problem, k);
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("Hessian is not positive definite");
  return llt.solve(-linear_term(problem, k));
}

}  // namespace simbo
