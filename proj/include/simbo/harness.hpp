#pragma once

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "simbo/imc.hpp"
#include "simbo/ogd.hpp"
#include "simbo/problems.hpp"
#include "simbo/rls.hpp"
#include "simbo/supervisor.hpp"

namespace simbo {

/// Raised for malformed or inconsistent experiment configurations.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct SignalSpec {
  std::string kind = "sine";
  double omega0 = 1.0;
  double omega1 = 10.0;
  /// Explicit b_bar; drawn from the problem seed when absent.
  std::optional<std::vector<double>> b_bar;
  long k_switch = 0;
  std::shared_ptr<SignalSpec> first;
  std::shared_ptr<SignalSpec> second;
};

struct ProblemSpec {
  std::string type = "quadratic";  // "quadratic" | "tv_hessian"
  Eigen::Index n = 15;
  double lambda_min = 1.0;
  double lambda_max = 5.0;
  double Ts = 0.1;
  std::uint64_t seed = 0;
  SignalSpec signal{};
  double tv_omega0 = 1.0;
};

struct ExperimentConfig {
  std::string name = "experiment";
  ProblemSpec problem{};
  long horizon = 1000;
  std::vector<std::string> algorithms{"ogd", "control_based", "simbo"};

  std::optional<double> ogd_h;
  std::optional<Eigen::Index> m;
  double rls_alpha = 0.5;
  double rls_beta = 1e10;
  double theta = 1e-9;
  int patience_t = 10;
  double change_C = 100.0;
  double change_floor = 1e-9;
  int burn_in = -1;
  double burn_in_tolerance = 1e-12;
  double holdoff_tolerance = 1e-2;
  WarmStartMode warm_start = WarmStartMode::Bumpless;
  SynthesisConfig imc{};
  /// Internal model of the control-based baseline; derived from the signal when absent.
  std::optional<std::vector<double>> cb_model;

  std::string trace_path;
  std::string events_path;
  std::string format = "csv";
};

namespace detail {

inline std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

inline Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

template <class T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

inline SignalSpec parse_signal(const nlohmann::json& j) {
  SignalSpec s;
  if (!j.is_object()) throw ConfigError("problem.signal must be an object");
  read_opt(j, "kind", s.kind);
  read_opt(j, "omega0", s.omega0);
  read_opt(j, "omega1", s.omega1);
  read_opt(j, "k_switch", s.k_switch);
  if (j.contains("b_bar")) s.b_bar = j.at("b_bar").get<std::vector<double>>();
  if (s.kind == "switch") {
    if (!j.contains("first") || !j.contains("second"))
      throw ConfigError("switch signal needs 'first' and 'second'");
    s.first = std::make_shared<SignalSpec>(parse_signal(j.at("first")));
    s.second = std::make_shared<SignalSpec>(parse_signal(j.at("second")));
  }
  static const char* kinds[] = {"sine", "ramp", "sine_ramp", "sine_squared", "constant", "switch"};
  if (std::find(std::begin(kinds), std::end(kinds), s.kind) == std::end(kinds))
    throw ConfigError("unknown signal kind '" + s.kind + "'");
  return s;
}

inline nlohmann::json signal_to_json(const SignalSpec& s) {
  nlohmann::json j{{"kind", s.kind}};
  if (s.kind == "switch") {
    j["first"] = signal_to_json(*s.first);
    j["second"] = signal_to_json(*s.second);
    j["k_switch"] = s.k_switch;
    return j;
  }
  if (s.kind == "sine" || s.kind == "sine_ramp") j["omega0"] = s.omega0;
  if (s.kind == "sine_squared") j["omega1"] = s.omega1;
  if (s.b_bar) j["b_bar"] = *s.b_bar;
  return j;
}

inline std::string_view placement_name(TargetPlacement p) {
  return p == TargetPlacement::RealSpread ? "real_spread" : "conjugate_pairs";
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  using detail::read_opt;
  ExperimentConfig c;
  try {
    read_opt(j, "name", c.name);
    read_opt(j, "horizon", c.horizon);
    read_opt(j, "algorithms", c.algorithms);
    if (j.contains("problem")) {
      const auto& p = j.at("problem");
      read_opt(p, "type", c.problem.type);
      read_opt(p, "n", c.problem.n);
      read_opt(p, "lambda_min", c.problem.lambda_min);
      read_opt(p, "lambda_max", c.problem.lambda_max);
      read_opt(p, "Ts", c.problem.Ts);
      read_opt(p, "seed", c.problem.seed);
      read_opt(p, "tv_omega0", c.problem.tv_omega0);
      if (p.contains("signal")) c.problem.signal = detail::parse_signal(p.at("signal"));
    }
    if (j.contains("ogd") && j.at("ogd").contains("h")) c.ogd_h = j.at("ogd").at("h").get<double>();
    if (j.contains("rls")) {
      const auto& r = j.at("rls");
      if (r.contains("m")) c.m = r.at("m").get<Eigen::Index>();
      read_opt(r, "alpha", c.rls_alpha);
      read_opt(r, "beta", c.rls_beta);
    }
    if (j.contains("supervisor")) {
      const auto& s = j.at("supervisor");
      read_opt(s, "theta", c.theta);
      read_opt(s, "patience_t", c.patience_t);
      read_opt(s, "change_C", c.change_C);
      read_opt(s, "change_floor", c.change_floor);
      read_opt(s, "burn_in", c.burn_in);
      read_opt(s, "burn_in_tolerance", c.burn_in_tolerance);
      read_opt(s, "holdoff_tolerance", c.holdoff_tolerance);
      if (s.contains("warm_start")) {
        const auto mode = s.at("warm_start").get<std::string>();
        if (mode == "bumpless") c.warm_start = WarmStartMode::Bumpless;
        else if (mode == "min_norm") c.warm_start = WarmStartMode::MinNorm;
        else throw ConfigError("supervisor.warm_start must be 'bumpless' or 'min_norm'");
      }
    }
    if (j.contains("imc")) {
      const auto& i = j.at("imc");
      read_opt(i, "grid_points", c.imc.grid_points);
      read_opt(i, "stability_margin", c.imc.stability_margin);
      read_opt(i, "target_radius_schedule", c.imc.target_radius_schedule);
      read_opt(i, "refine", c.imc.refine);
      read_opt(i, "refine_grid_points", c.imc.refine_grid_points);
      read_opt(i, "refine_max_iterations", c.imc.refine_max_iterations);
      if (i.contains("placement")) {
        const auto p = i.at("placement").get<std::string>();
        if (p == "real_spread") c.imc.placement = TargetPlacement::RealSpread;
        else if (p == "conjugate_pairs") c.imc.placement = TargetPlacement::ConjugatePairs;
        else throw ConfigError("imc.placement must be 'real_spread' or 'conjugate_pairs'");
      }
    }
    if (j.contains("control_based") && j.at("control_based").contains("d"))
      c.cb_model = j.at("control_based").at("d").get<std::vector<double>>();
    if (j.contains("output")) {
      const auto& o = j.at("output");
      read_opt(o, "trace", c.trace_path);
      read_opt(o, "events", c.events_path);
      read_opt(o, "format", c.format);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad configuration value: ") + e.what());
  }
  if (c.horizon < 1) throw ConfigError("horizon must be at least 1");
  if (c.problem.n < 1) throw ConfigError("problem.n must be at least 1");
  if (c.problem.type != "quadratic" && c.problem.type != "tv_hessian")
    throw ConfigError("problem.type must be 'quadratic' or 'tv_hessian'");
  if (c.format != "csv" && c.format != "jsonl") throw ConfigError("output.format must be 'csv' or 'jsonl'");
  for (const auto& a : c.algorithms)
    if (a != "ogd" && a != "control_based" && a != "simbo")
      throw ConfigError("unknown algorithm '" + a + "'");
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["name"] = c.name;
  j["horizon"] = c.horizon;
  j["algorithms"] = c.algorithms;
  j["problem"] = {{"type", c.problem.type},       {"n", c.problem.n},
                  {"lambda_min", c.problem.lambda_min}, {"lambda_max", c.problem.lambda_max},
                  {"Ts", c.problem.Ts},           {"seed", c.problem.seed}};
  if (c.problem.type == "tv_hessian") j["problem"]["tv_omega0"] = c.problem.tv_omega0;
  else j["problem"]["signal"] = detail::signal_to_json(c.problem.signal);
  if (c.ogd_h) j["ogd"]["h"] = *c.ogd_h;
  if (c.m) j["rls"]["m"] = *c.m;
  j["rls"]["alpha"] = c.rls_alpha;
  j["rls"]["beta"] = c.rls_beta;
  j["supervisor"] = {{"theta", c.theta},
                     {"patience_t", c.patience_t},
                     {"change_C", c.change_C},
                     {"change_floor", c.change_floor},
                     {"burn_in", c.burn_in},
                     {"burn_in_tolerance", c.burn_in_tolerance},
                     {"holdoff_tolerance", c.holdoff_tolerance},
                     {"warm_start", c.warm_start == WarmStartMode::Bumpless ? "bumpless" : "min_norm"}};
  j["imc"] = {{"grid_points", c.imc.grid_points},
              {"stability_margin", c.imc.stability_margin},
              {"target_radius_schedule", c.imc.target_radius_schedule},
              {"placement", detail::placement_name(c.imc.placement)},
              {"refine", c.imc.refine},
              {"refine_grid_points", c.imc.refine_grid_points},
              {"refine_max_iterations", c.imc.refine_max_iterations}};
  if (c.cb_model) j["control_based"]["d"] = *c.cb_model;
  j["output"] = {{"trace", c.trace_path}, {"events", c.events_path}, {"format", c.format}};
  return j;
}

// ---------------------------------------------------------------------------
// Problem construction
// ---------------------------------------------------------------------------

inline Signal build_signal(const SignalSpec& s, Eigen::Index n, std::uint64_t seed) {
  auto b_bar = [&] {
    if (s.b_bar) {
      if (static_cast<Eigen::Index>(s.b_bar->size()) != n)
        throw ConfigError("signal b_bar length does not match problem.n");
      return detail::to_eigen(*s.b_bar);
    }
    return make_linear_term(n, seed);
  };
  if (s.kind == "sine") return Signal{Sine{s.omega0}};
  if (s.kind == "ramp") return Signal{Ramp{b_bar()}};
  if (s.kind == "sine_ramp") return Signal{SineRamp{s.omega0, b_bar()}};
  if (s.kind == "sine_squared") return Signal{SineSquared{s.omega1}};
  if (s.kind == "constant") return Signal{Constant{b_bar()}};
  if (s.kind == "switch")
    return make_switch(build_signal(*s.first, n, seed), build_signal(*s.second, n, seed), s.k_switch);
  throw ConfigError("unknown signal kind '" + s.kind + "'");
}

inline Problem build_problem(const ProblemSpec& p) {
  if (p.type == "tv_hessian") return make_tv_hessian(p.n, p.tv_omega0, p.Ts, p.seed);
  return make_quadratic(p.n, p.lambda_min, p.lambda_max, p.seed,
                        build_signal(p.signal, p.n, p.seed), p.Ts);
}

/// Internal model handed to the control-based baseline: the explicit one when
/// configured, the first segment's model for switching signals, and
/// constant-plus-oscillation at omega0 for the time-varying Hessian.
inline InternalModel baseline_model(const ExperimentConfig& c) {
  if (c.cb_model) return InternalModel{detail::to_eigen(*c.cb_model)};
  if (c.problem.type == "tv_hessian")
    return model_product(integrator_model(1), oscillator_model(c.problem.tv_omega0 * c.problem.Ts));
  const Signal s = build_signal(c.problem.signal, c.problem.n, c.problem.seed);
  if (const auto* sw = std::get_if<Switch>(&s.kind)) return true_denominator(*sw->first, c.problem.Ts);
  return true_denominator(s, c.problem.Ts);
}

/// Model order SIMBO identifies: configured, else the largest true order among segments.
inline Eigen::Index model_order(const ExperimentConfig& c) {
  if (c.m) return *c.m;
  if (c.problem.type == "tv_hessian") return baseline_model(c).order();
  const Signal s = build_signal(c.problem.signal, c.problem.n, c.problem.seed);
  if (const auto* sw = std::get_if<Switch>(&s.kind))
    return std::max(true_denominator(*sw->first, c.problem.Ts).order(),
                    true_denominator(*sw->second, c.problem.Ts).order());
  return true_denominator(s, c.problem.Ts).order();
}

inline double step_size(const ExperimentConfig& c) {
  return c.ogd_h.value_or(OgdConfig::optimal(c.problem.lambda_min, c.problem.lambda_max).h);
}

inline SupervisorConfig supervisor_config(const ExperimentConfig& c) {
  SupervisorConfig s;
  s.m = model_order(c);
  s.theta = c.theta;
  s.patience_t = c.patience_t;
  s.change_C = c.change_C;
  s.change_floor = c.change_floor;
  s.burn_in = c.burn_in;
  s.burn_in_tolerance = c.burn_in_tolerance;
  s.holdoff_tolerance = c.holdoff_tolerance;
  s.rls_alpha = c.rls_alpha;
  s.rls_beta = c.rls_beta;
  s.lambda_min = c.problem.lambda_min;
  s.lambda_max = c.problem.lambda_max;
  s.ogd = OgdConfig{step_size(c)};
  s.imc = c.imc;
  s.warm_start = c.warm_start;
  return s;
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

struct TraceRecord {
  long k = 0;
  std::string algorithm;
  double tracking_error = 0.0;
  std::optional<double> residual;
  std::string phase;
  std::string event;
};

struct ExperimentResult {
  std::vector<TraceRecord> records;
  std::vector<Event> simbo_events;
};

namespace detail {

inline std::string join_events(const std::vector<Event>& events, std::size_t from, long k) {
  std::string out;
  for (std::size_t i = from; i < events.size(); ++i) {
    if (events[i].k != k) continue;
    if (!out.empty()) out += ';';
    out += to_string(events[i].kind);
  }
  return out;
}

}  // namespace detail

/// Runs every selected algorithm on the same problem instance from x_0 = 0.
inline ExperimentResult run_experiment(const ExperimentConfig& c) {
  const Problem problem = build_problem(c.problem);
  const Eigen::Index n = dimension(problem);
  const double h = step_size(c);
  contraction_factor(h, c.problem.lambda_min, c.problem.lambda_max);

  std::vector<Eigen::VectorXd> optimum;
  optimum.reserve(static_cast<std::size_t>(c.horizon));
  for (long k = 0; k < c.horizon; ++k) optimum.push_back(minimizer(problem, k));
  auto oracle = [&problem](long k, const Eigen::VectorXd& x) { return gradient(problem, x, k); };

  ExperimentResult result;
  result.records.reserve(static_cast<std::size_t>(c.horizon) * c.algorithms.size());
  for (const auto& algorithm : c.algorithms) {
    if (algorithm == "ogd") {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      for (long k = 0; k < c.horizon; ++k) {
        result.records.push_back({k, algorithm, (x - optimum[static_cast<std::size_t>(k)]).norm(), {}, "", ""});
        x = ogd_step(x, oracle(k, x), h);
      }
    } else if (algorithm == "control_based") {
      auto ctrl = synthesize(baseline_model(c), c.problem.lambda_min, c.problem.lambda_max, c.imc);
      if (!ctrl) throw ConfigError("control-based baseline: controller synthesis is infeasible");
      ctrl->W = Eigen::MatrixXd::Zero(n, ctrl->order());
      Eigen::VectorXd x = ctrl->output();
      for (long k = 0; k < c.horizon; ++k) {
        result.records.push_back({k, algorithm, (x - optimum[static_cast<std::size_t>(k)]).norm(), {}, "", ""});
        CbStep step = cb_step(*ctrl, oracle(k, x));
        *ctrl = std::move(step.controller);
        x = std::move(step.x_next);
      }
    } else {
      const SupervisorConfig cfg = supervisor_config(c);
      SupervisorState state = simbo_init(cfg, Eigen::VectorXd::Zero(n));
      for (long k = 0; k < c.horizon; ++k) {
        const double err = (state.x - optimum[static_cast<std::size_t>(k)]).norm();
        const std::size_t before = state.events.size();
        SimboStep step = simbo_step(std::move(state), cfg, oracle);
        state = std::move(step.state);
        result.records.push_back({k, algorithm, err, state.last_residual,
                                  std::string(to_string(state.phase)),
                                  detail::join_events(state.events, before, k)});
      }
      result.simbo_events = state.events;
    }
  }
  return result;
}

inline std::vector<TraceRecord> records_for(const std::vector<TraceRecord>& records,
                                            const std::string& algorithm) {
  std::vector<TraceRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const TraceRecord& r) { return r.algorithm == algorithm; });
  return out;
}

/// Max tracking error over k >= K_total / 5, where K_total = 1 + largest k.
inline double asymptotic_error(const std::vector<TraceRecord>& trace) {
  if (trace.empty()) throw std::invalid_argument("asymptotic_error: empty trace");
  long k_total = 0;
  for (const auto& r : trace) k_total = std::max(k_total, r.k + 1);
  double worst = 0.0;
  for (const auto& r : trace)
    if (r.k >= k_total / 5) worst = std::max(worst, r.tracking_error);
  return worst;
}

/// Max tracking error over k in [k_from, k_to).
inline double window_error(const std::vector<TraceRecord>& trace, long k_from, long k_to) {
  double worst = 0.0;
  bool any = false;
  for (const auto& r : trace)
    if (r.k >= k_from && r.k < k_to) {
      worst = std::max(worst, r.tracking_error);
      any = true;
    }
  if (!any) throw std::invalid_argument("window_error: no records in window");
  return worst;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

}  // namespace detail

inline void emit(const std::vector<TraceRecord>& records, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    out << "k,algorithm,tracking_error,residual,phase,event\n";
    for (const auto& r : records) {
      out << r.k << ',' << r.algorithm << ',' << detail::format_real(r.tracking_error) << ','
          << (r.residual ? detail::format_real(*r.residual) : std::string()) << ',' << r.phase << ','
          << r.event << '\n';
    }
  } else if (format == "jsonl") {
    for (const auto& r : records) {
      nlohmann::json j{{"k", r.k}, {"algorithm", r.algorithm}, {"tracking_error", r.tracking_error}};
      j["residual"] = r.residual ? nlohmann::json(*r.residual) : nlohmann::json(nullptr);
      j["phase"] = r.phase;
      j["event"] = r.event;
      out << j.dump() << '\n';
    }
  } else {
    throw std::invalid_argument("emit: unknown format '" + format + "'");
  }
}

inline void emit(const std::vector<TraceRecord>& records, const std::string& format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  emit(records, format, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline void emit_events(const std::vector<Event>& events, std::ostream& out) {
  out << "k,event,residual,phase\n";
  for (const auto& e : events)
    out << e.k << ',' << to_string(e.kind) << ',' << detail::format_real(e.residual) << ','
        << to_string(e.phase) << '\n';
}

inline void emit_events(const std::vector<Event>& events, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  emit_events(events, out);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------
// Identification-only pipeline
// ---------------------------------------------------------------------------

struct IdentifyRecord {
  long k = 0;
  std::optional<double> residual;
  Eigen::VectorXd d_hat;
};

/// OGD on the configured problem with RLS fed exactly as in phase 1
/// (same burn-in), without ever switching phases.
inline std::vector<IdentifyRecord> identify_run(const ExperimentConfig& c, long steps) {
  const Problem problem = build_problem(c.problem);
  const SupervisorConfig cfg = supervisor_config(c);
  cfg.validate();
  const Eigen::Index m = cfg.m;
  const long burn_in = cfg.effective_burn_in();
  RlsState rls = rls_init(m, cfg.rls_beta, cfg.rls_alpha);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dimension(problem));
  std::deque<Eigen::VectorXd> history;
  std::vector<IdentifyRecord> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (long k = 0; k < steps; ++k) {
    IdentifyRecord rec{k, std::nullopt, rls.d_hat};
    if (static_cast<Eigen::Index>(history.size()) >= m && k >= burn_in) {
      const std::vector<Eigen::VectorXd> win(history.begin(), history.begin() + m);
      RlsUpdate upd = rls_update(rls, x, regressor(win, m));
      rec.residual = upd.residual.e;
      rls = std::move(upd.state);
      rec.d_hat = rls.d_hat;
    }
    out.push_back(std::move(rec));
    history.push_front(x);
    if (static_cast<Eigen::Index>(history.size()) > m) history.pop_back();
    x = ogd_step(x, gradient(problem, x, k), cfg.ogd.h);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

inline ExperimentConfig quadratic_preset(const std::string& name, SignalSpec signal, long horizon) {
  ExperimentConfig c;
  c.name = name;
  c.horizon = horizon;
  c.problem.signal = std::move(signal);
  return c;
}

inline SignalSpec signal_of(const std::string& kind) {
  SignalSpec s;
  s.kind = kind;
  return s;
}

inline SignalSpec switch_of(const std::string& first, const std::string& second, long k_switch) {
  SignalSpec s;
  s.kind = "switch";
  s.first = std::make_shared<SignalSpec>(signal_of(first));
  s.second = std::make_shared<SignalSpec>(signal_of(second));
  s.k_switch = k_switch;
  return s;
}

inline std::vector<std::string> suite_names() { return {"table1", "switching", "tv_hessian"}; }

/// Named experiment groups: "table1" (four stationary signals, 1000 steps),
/// "switching" (ramp->sine and sine->sine^2, 2000 steps, switch at 1000),
/// "tv_hessian" (time-varying Hessian, 1000 steps).
inline std::vector<ExperimentConfig> preset(const std::string& name) {
  if (name == "table1") {
    std::vector<ExperimentConfig> out;
    for (const char* kind : {"ramp", "sine", "sine_squared", "sine_ramp"})
      out.push_back(quadratic_preset(kind, signal_of(kind), 1000));
    return out;
  }
  if (name == "switching") {
    return {quadratic_preset("ramp_to_sine", switch_of("ramp", "sine", 1000), 2000),
            quadratic_preset("sine_to_sine_squared", switch_of("sine", "sine_squared", 1000), 2000)};
  }
  if (name == "tv_hessian") {
    ExperimentConfig c;
    c.name = "tv_hessian";
    c.problem.type = "tv_hessian";
    c.horizon = 1000;
    c.theta = 1e-1;
    return {c};
  }
  throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace simbo
