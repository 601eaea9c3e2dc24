// Command-line front end for the SIMBO experiment harness.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simbo/harness.hpp"

namespace {

constexpr const char* kConfigReference = R"(
Configuration file (JSON). Every key is optional; absent keys keep the default.

  name                              experiment label                       "experiment"
  horizon                           number of steps K_total                1000
  algorithms                        subset of ["ogd","control_based","simbo"]   all three
  problem.type                      "quadratic" | "tv_hessian"             "quadratic"
  problem.n                         dimension                              15
  problem.lambda_min                smallest Hessian eigenvalue            1
  problem.lambda_max                largest Hessian eigenvalue             5
  problem.Ts                        sampling interval                      0.1
  problem.seed                      seed for A, b_bar and the tv Hessian   0
  problem.tv_omega0                 Hessian oscillation frequency          1
  problem.signal.kind               sine | ramp | sine_ramp | sine_squared | constant | switch
  problem.signal.omega0             sine frequency                         1
  problem.signal.omega1             sine^2 frequency                       10
  problem.signal.b_bar              explicit linear term (length n)        drawn from seed
  problem.signal.first / second     segment signals of a switch
  problem.signal.k_switch           first step of the second segment
  ogd.h                             OGD step size                          2/(lambda_min+lambda_max)
  rls.m                             identified model order                 true order of the signal
  rls.alpha                         forgetting factor in (0,1)             0.5
  rls.beta                          initial covariance scale               1e10
  supervisor.theta                  phase-1 exit residual threshold        1e-9
  supervisor.patience_t             recompute patience                     10
  supervisor.change_C               model-change ratio                     100
  supervisor.change_floor           floor under the previous residual      1e-9
  supervisor.burn_in                steps before RLS starts, -1 = auto     -1
  supervisor.burn_in_tolerance      OGD transient decay for auto burn-in   1e-12
  supervisor.holdoff_tolerance      closed-loop decay before RLS resumes   1e-2
  supervisor.warm_start             "bumpless" | "min_norm"                "bumpless"
  imc.grid_points                   lambda grid for verification           101
  imc.stability_margin              required 1 - max spectral radius       0.02
  imc.target_radius_schedule        placement radii tried after deadbeat   [0.1, ..., 0.9]
  imc.placement                     "conjugate_pairs" | "real_spread"      "conjugate_pairs"
  imc.refine                        polish K by direct min-max search      true
  imc.refine_grid_points            lambda grid used while polishing       41
  imc.refine_max_iterations         simplex iterations per restart         400
  control_based.d                   baseline internal model coefficients   true model
  output.trace                      trace path ("" = stdout)               ""
  output.events                     SIMBO event log path                   ""
  output.format                     "csv" | "jsonl"                        "csv"
)";

void print_summary(const simbo::ExperimentConfig& c, const simbo::ExperimentResult& r, std::ostream& out) {
  for (const auto& algorithm : c.algorithms) {
    const auto trace = simbo::records_for(r.records, algorithm);
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %-14s asymptotic_error=%.6e", c.name.c_str(), algorithm.c_str(),
                  simbo::asymptotic_error(trace));
    out << line << '\n';
  }
  for (const auto& e : r.simbo_events)
    if (e.kind != simbo::EventKind::Recompute)
      out << "  event k=" << e.k << ' ' << simbo::to_string(e.kind) << '\n';
}

void write_outputs(const simbo::ExperimentConfig& c, const simbo::ExperimentResult& r) {
  if (c.trace_path.empty()) simbo::emit(r.records, c.format, std::cout);
  else simbo::emit(r.records, c.format, c.trace_path);
  if (!c.events_path.empty()) simbo::emit_events(r.simbo_events, c.events_path);
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, const std::string& trace,
            const std::string& format, const std::string& dump_config) {
  simbo::ExperimentConfig c = simbo::load_config(path);
  if (seed) c.problem.seed = *seed;
  if (!trace.empty()) c.trace_path = trace;
  if (!format.empty()) c.format = format;
  if (c.format != "csv" && c.format != "jsonl") throw simbo::ConfigError("format must be 'csv' or 'jsonl'");
  if (!dump_config.empty()) {
    std::ofstream out(dump_config);
    if (!out) throw std::runtime_error("cannot open '" + dump_config + "' for writing");
    out << simbo::to_json(c).dump(2) << '\n';
  }
  const auto result = simbo::run_experiment(c);
  write_outputs(c, result);
  print_summary(c, result, std::cerr);
  return 0;
}

int cmd_suite(const std::string& name, std::optional<std::uint64_t> seed, const std::string& out_dir,
              const std::string& format) {
  if (format != "csv" && format != "jsonl") throw simbo::ConfigError("format must be 'csv' or 'jsonl'");
  std::filesystem::create_directories(out_dir);
  const std::string ext = format == "csv" ? ".csv" : ".jsonl";
  for (auto c : simbo::preset(name)) {
    if (seed) c.problem.seed = *seed;
    c.format = format;
    c.trace_path = (std::filesystem::path(out_dir) / (c.name + ext)).string();
    c.events_path = (std::filesystem::path(out_dir) / (c.name + "_events.csv")).string();
    std::ofstream cfg((std::filesystem::path(out_dir) / (c.name + ".json")).string());
    if (!cfg) throw std::runtime_error("cannot write config into '" + out_dir + "'");
    cfg << simbo::to_json(c).dump(2) << '\n';
    const auto result = simbo::run_experiment(c);
    write_outputs(c, result);
    print_summary(c, result, std::cout);
  }
  return 0;
}

int cmd_identify(const std::string& config_path, const std::string& signal, long steps,
                 std::optional<std::uint64_t> seed, std::optional<long> m, std::optional<double> alpha,
                 std::optional<double> beta) {
  simbo::ExperimentConfig c = config_path.empty() ? simbo::ExperimentConfig{} : simbo::load_config(config_path);
  if (!signal.empty()) c.problem.signal = simbo::signal_of(signal);
  if (c.problem.signal.kind == "switch") throw simbo::ConfigError("identify needs a non-switching signal");
  if (seed) c.problem.seed = *seed;
  if (m) c.m = *m;
  if (alpha) c.rls_alpha = *alpha;
  if (beta) c.rls_beta = *beta;
  if (steps < 1) throw simbo::ConfigError("--steps must be at least 1");

  const auto records = simbo::identify_run(c, steps);
  const Eigen::Index order = records.front().d_hat.size();
  std::cout << "k,residual";
  for (Eigen::Index i = 0; i < order; ++i) std::cout << ",d_" << i;
  std::cout << '\n';
  char buf[40];
  for (const auto& r : records) {
    std::cout << r.k << ',';
    if (r.residual) {
      std::snprintf(buf, sizeof buf, "%.17e", *r.residual);
      std::cout << buf;
    }
    for (Eigen::Index i = 0; i < order; ++i) {
      std::snprintf(buf, sizeof buf, "%.17e", r.d_hat(i));
      std::cout << ',' << buf;
    }
    std::cout << '\n';
  }
  if (c.problem.type == "quadratic") {
    const auto truth = simbo::true_denominator(
        simbo::build_signal(c.problem.signal, c.problem.n, c.problem.seed), c.problem.Ts);
    if (truth.order() == order) {
      std::snprintf(buf, sizeof buf, "%.6e", (records.back().d_hat - truth.d).lpNorm<Eigen::Infinity>());
      std::cerr << "final |d_hat - d_true|_inf = " << buf << '\n';
    }
  }
  return 0;
}

int cmd_synth(const std::vector<double>& d, double lambda_min, double lambda_max, simbo::SynthesisConfig cfg,
              const std::string& placement, bool no_refine) {
  if (d.empty()) throw simbo::ConfigError("--d needs at least one coefficient");
  if (placement == "real_spread") cfg.placement = simbo::TargetPlacement::RealSpread;
  else if (placement != "conjugate_pairs") throw simbo::ConfigError("--placement must be conjugate_pairs or real_spread");
  cfg.refine = !no_refine;
  const simbo::InternalModel model{Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()))};
  const auto ctrl = simbo::synthesize(model, lambda_min, lambda_max, cfg);
  char buf[64];
  if (!ctrl) {
    std::cout << "status: infeasible\n";
    std::snprintf(buf, sizeof buf, "%.3f", 1.0 - cfg.stability_margin);
    std::cout << "no candidate reached max spectral radius below " << buf << " on [" << lambda_min << ", "
              << lambda_max << "]\n";
    return 0;
  }
  std::cout << "status: verified\nK:";
  for (Eigen::Index i = 0; i < ctrl->K.size(); ++i) {
    std::snprintf(buf, sizeof buf, " %.17e", ctrl->K(i));
    std::cout << buf;
  }
  std::snprintf(buf, sizeof buf, "%.6f", ctrl->margin);
  std::cout << "\nmax_spectral_radius: " << buf << " (grid " << cfg.grid_points << " points)\n";
  std::snprintf(buf, sizeof buf, "%.6f", 1.0 - ctrl->margin);
  std::cout << "stability_margin: " << buf << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIMBO: self-identifying internal-model-based online optimization"};
  app.footer(kConfigReference);
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string format;

  auto* run = app.add_subcommand("run", "Run one experiment from a JSON config file");
  std::string config_path;
  std::string trace_path;
  std::string dump_config;
  run->add_option("config", config_path, "Experiment config file")->required();
  run->add_option("--seed", seed, "Override problem.seed");
  run->add_option("--trace", trace_path, "Override output.trace");
  run->add_option("--format", format, "Override output.format (csv|jsonl)");
  run->add_option("--dump-config", dump_config, "Write the fully resolved config to this path");

  auto* suite = app.add_subcommand("suite", "Run a named preset group");
  std::string suite_name;
  std::string out_dir = "results";
  std::string suite_format = "csv";
  suite->add_option("name", suite_name, "table1 | switching | tv_hessian")
      ->required()
      ->check(CLI::IsMember(simbo::suite_names()));
  suite->add_option("--seed", seed, "Override problem.seed for every experiment");
  suite->add_option("--out-dir", out_dir, "Directory for traces, event logs and resolved configs")
      ->capture_default_str();
  suite->add_option("--format", suite_format, "csv | jsonl")->capture_default_str();

  auto* identify = app.add_subcommand("identify", "Run OGD with RLS only and print the d_hat trajectory");
  std::string id_config;
  std::string id_signal;
  long id_steps = 300;
  std::optional<long> id_m;
  std::optional<double> id_alpha;
  std::optional<double> id_beta;
  identify->add_option("--config", id_config, "Optional config file supplying the problem");
  identify->add_option("--signal", id_signal, "Signal kind, overrides the config")
      ->check(CLI::IsMember({"sine", "ramp", "sine_ramp", "sine_squared", "constant"}));
  identify->add_option("--steps", id_steps, "Number of steps")->capture_default_str();
  identify->add_option("--seed", seed, "Override problem.seed");
  identify->add_option("--m", id_m, "Model order (default: true order)");
  identify->add_option("--alpha", id_alpha, "Forgetting factor");
  identify->add_option("--beta", id_beta, "Initial covariance scale");

  auto* synth = app.add_subcommand("synth", "Synthesize a feedback row for a model and report its margin");
  std::vector<double> synth_d;
  double lambda_min = 1.0;
  double lambda_max = 5.0;
  simbo::SynthesisConfig synth_cfg;
  std::string placement = "conjugate_pairs";
  bool no_refine = false;
  synth->add_option("--d", synth_d, "Model coefficients d_0 ... d_{m-1}")->required()->allow_extra_args();
  synth->add_option("--lambda-min", lambda_min, "Interval lower end")->capture_default_str();
  synth->add_option("--lambda-max", lambda_max, "Interval upper end")->capture_default_str();
  synth->add_option("--grid-points", synth_cfg.grid_points, "Verification grid size")->capture_default_str();
  synth->add_option("--stability-margin", synth_cfg.stability_margin, "Required margin")->capture_default_str();
  synth->add_option("--placement", placement, "conjugate_pairs | real_spread")->capture_default_str();
  synth->add_flag("--no-refine", no_refine, "Return the first placement candidate that verifies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) return cmd_run(config_path, seed, trace_path, format, dump_config);
    if (*suite) return cmd_suite(suite_name, seed, out_dir, suite_format);
    if (*identify) return cmd_identify(id_config, id_signal, id_steps, seed, id_m, id_alpha, id_beta);
    if (*synth) return cmd_synth(synth_d, lambda_min, lambda_max, synth_cfg, placement, no_refine);
  } catch (const simbo::ConfigError& e) {
    std::cerr << "simbo: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "simbo: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
