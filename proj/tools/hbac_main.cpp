// Command-line front end: simulate cooling runs, evaluate closed-form
// limits, execute verification suites, and sweep the closed forms over
// parameter grids. Artifacts are deterministic: identical flags (and
// seed) produce byte-identical output from the same build.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hbac/hbac.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_artifact(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw UsageError("cannot open output path: " + out_path);
  os << content;
  if (!os) throw UsageError("cannot write output path: " + out_path);
}

hbac::ResetDistribution<double> resolve_reset(const std::vector<double>& reset_probs,
                                              int tensor_qubits, double epsilon,
                                              bool epsilon_set) {
  if (!reset_probs.empty()) {
    return hbac::ResetDistribution<double>(reset_probs);
  }
  if (!epsilon_set) {
    throw UsageError("specify --epsilon or --reset-probs");
  }
  if (tensor_qubits > 1) {
    std::vector<hbac::ResetDistribution<double>> parts(
        tensor_qubits, hbac::make_thermal_reset(epsilon));
    return hbac::make_tensor_reset(parts);
  }
  return hbac::make_thermal_reset(epsilon);
}

hbac::DiagonalState<double> resolve_initial(const std::string& init, int n,
                                            const hbac::ResetDistribution<double>& reset) {
  if (init.empty() || init == "maximally-mixed") {
    return hbac::maximally_mixed(n, reset);
  }
  if (init.rfind("thermal:", 0) == 0) {
    const double eps_c = std::stod(init.substr(8));
    return hbac::thermal_product_state(n, eps_c, reset);
  }
  std::ifstream is(init);
  if (!is) throw UsageError("cannot open initial-state file: " + init);
  hbac::json doc;
  try {
    is >> doc;
  } catch (const hbac::json::exception& e) {
    throw UsageError("cannot parse initial-state file: " + std::string(e.what()));
  }
  std::vector<double> probs;
  if (doc.is_array()) {
    probs = doc.get<std::vector<double>>();
  } else if (doc.is_object() && doc.contains("probs")) {
    probs = doc.at("probs").get<std::vector<double>>();
  } else {
    throw UsageError("initial-state file must be a JSON array or {\"probs\": [...]}");
  }
  return hbac::DiagonalState<double>(n, reset.dim(), std::move(probs));
}

int cmd_simulate(int n, const std::vector<double>& reset_probs, int tensor_qubits,
                 double epsilon, bool epsilon_set, const std::string& init,
                 long max_iters, double tol, int window, const std::string& record,
                 const std::string& metric, const std::string& out,
                 const std::string& format) {
  hbac::RunConfig<double> config(
      n, resolve_reset(reset_probs, tensor_qubits, epsilon, epsilon_set));
  config.initial = resolve_initial(init, n, config.reset);
  config.max_iterations = max_iters;
  config.convergence_tol = tol;
  config.convergence_window = window;
  config.record_mode =
      record == "full" ? hbac::RecordMode::full_snapshots : hbac::RecordMode::summary_only;
  config.metric = metric == "full-state" ? hbac::ConvergenceMetric::full_state
                                         : hbac::ConvergenceMetric::p0_delta;

  const hbac::Trajectory<double> traj = hbac::run(config);
  const hbac::TrajectorySummary s = hbac::summarize(traj);

  std::string content;
  if (format == "csv") {
    std::ostringstream os;
    hbac::write_trajectory_csv(os, traj);
    content = os.str();
  } else {
    content = hbac::trajectory_to_json(traj).dump(2) + "\n";
  }
  write_artifact(out, content);

  std::cerr << (s.converged ? "converged" : "did not converge") << " after " << s.iterations
            << " iterations; final p0=" << hbac::format_full(s.final_p0)
            << " (asymptotic " << hbac::format_full(s.asymptotic_p0)
            << ", max entry gap " << hbac::format_full(s.max_gap_to_asymptotic) << ")\n";
  return s.converged ? kExitOk : kExitNonConvergence;
}

int cmd_asymptote(int n, const std::vector<double>& reset_probs, int tensor_qubits,
                  double epsilon, bool epsilon_set, double delta, double delta_total,
                  double delta_ratio, double t_bath, const std::string& out,
                  const std::string& format) {
  const hbac::AsymptoticPrediction pred =
      hbac::predict(n, resolve_reset(reset_probs, tensor_qubits, epsilon, epsilon_set));

  std::optional<hbac::TemperatureSpec> temp;
  const bool has_pair = delta > 0.0 && delta_total > 0.0;
  const bool has_ratio = delta_ratio > 0.0;
  const bool any_temp_flag =
      delta > 0.0 || delta_total > 0.0 || delta_ratio > 0.0 || t_bath > 0.0;
  if (any_temp_flag) {
    if (!(t_bath > 0.0)) {
      throw UsageError("temperature flags need --t-bath");
    }
    if (has_pair) {
      temp = hbac::TemperatureSpec{delta, delta_total, t_bath};
    } else if (has_ratio) {
      temp = hbac::TemperatureSpec{delta_ratio, 1.0, t_bath};
    } else {
      throw UsageError("--t-bath needs --delta and --delta-total, or --delta-ratio");
    }
  }

  std::string content;
  if (format == "csv") {
    std::ostringstream os;
    hbac::write_prediction_csv(os, pred, temp);
    content = os.str();
  } else {
    content = hbac::prediction_to_json(pred, temp).dump(2) + "\n";
  }
  write_artifact(out, content);

  std::cerr << "p0_infinity=" << hbac::format_full(pred.p0_infinity)
            << " qubit1_polarization_limit="
            << hbac::format_full(pred.qubit1_polarization_limit) << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite, long trials, std::uint64_t seed,
               const std::string& out, const std::string& format) {
  if (format != "json") {
    throw UsageError("verification reports are JSON only");
  }
  if (trials < 1) throw UsageError("--trials must be >= 1");

  std::vector<std::pair<std::string, hbac::VerificationSuite>> selected;
  const std::vector<std::pair<std::string, hbac::VerificationSuite>> all = {
      {"maxdist", hbac::VerificationSuite::max_distance},
      {"monotone", hbac::VerificationSuite::monotone},
      {"steady", hbac::VerificationSuite::steady},
      {"recurrence", hbac::VerificationSuite::recurrence},
      {"oracle", hbac::VerificationSuite::oracle},
  };
  if (suite == "all") {
    selected = all;
  } else {
    for (const auto& entry : all) {
      if (entry.first == suite) selected.push_back(entry);
    }
    if (selected.empty()) {
      throw UsageError("unknown suite: " + suite +
                       " (expected maxdist|monotone|steady|recurrence|oracle|all)");
    }
  }

  hbac::json reports = hbac::json::array();
  bool all_passed = true;
  for (const auto& [name, which] : selected) {
    const hbac::VerificationReport report = hbac::run_suite(which, trials, seed);
    all_passed = all_passed && report.passed();
    hbac::json rj = hbac::report_to_json(report);
    rj["suite"] = name;
    std::cerr << "suite " << name << ": trials=" << report.trials
              << " failures=" << report.failures << "\n";
    reports.push_back(std::move(rj));
  }
  const hbac::json doc{{"metadata",
                        {{"backend", hbac::backend_traits<double>::name},
                         {"build", hbac::build_id()},
                         {"seed", seed},
                         {"trials", trials}}},
                       {"data", std::move(reports)}};
  write_artifact(out, doc.dump(2) + "\n");
  return all_passed ? kExitOk : kExitVerificationFailure;
}

std::vector<double> parse_epsilon_range(const std::string& range) {
  // lo:hi:step, endpoints inclusive up to rounding of the step count.
  double lo = 0.0, hi = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream is(range);
  if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0) ||
      hi < lo) {
    throw UsageError("--epsilon-range expects lo:hi:step with step > 0 and hi >= lo");
  }
  std::vector<double> values;
  const long count = static_cast<long>((hi - lo) / step + 0.5);
  for (long i = 0; i <= count; ++i) values.push_back(lo + static_cast<double>(i) * step);
  return values;
}

int cmd_sweep(const std::vector<int>& n_values, const std::vector<double>& epsilon_values,
              const std::string& epsilon_range, const std::vector<double>& gap_ratios,
              const std::string& out, const std::string& format) {
  hbac::SweepSpec spec;
  spec.n_values = n_values;
  spec.epsilon_values = epsilon_values;
  if (!epsilon_range.empty()) {
    if (!epsilon_values.empty()) {
      throw UsageError("--epsilon-values and --epsilon-range are mutually exclusive");
    }
    spec.epsilon_values = parse_epsilon_range(epsilon_range);
  }
  spec.gap_ratios = gap_ratios;
  if (spec.n_values.empty()) throw UsageError("--n-values must be non-empty");
  if (spec.epsilon_values.empty()) {
    throw UsageError("specify --epsilon-values or --epsilon-range");
  }

  const std::vector<hbac::SweepRow> rows = hbac::compute_sweep(spec);
  std::string content;
  if (format == "csv") {
    std::ostringstream os;
    hbac::write_sweep_csv(os, spec, rows);
    content = os.str();
  } else {
    content = hbac::sweep_to_json(spec, rows).dump(2) + "\n";
  }
  write_artifact(out, content);
  std::cerr << "sweep: " << rows.size() << " rows\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat-bath cooling: simulation, closed-form limits, verification"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Iterate sort+reset and record the trajectory");
  int sim_n = 1;
  std::vector<double> sim_reset;
  int sim_tensor = 1;
  double sim_eps = 0.0;
  std::string sim_init, sim_record = "summary", sim_metric = "p0", sim_out, sim_format = "json";
  long sim_max_iters = hbac::kDefaultMaxIterations;
  double sim_tol = hbac::kDefaultConvergenceTol;
  int sim_window = hbac::kDefaultConvergenceWindow;
  sim->add_option("--n", sim_n, "Number of computation qubits")->required();
  auto* sim_eps_opt = sim->add_option("--epsilon", sim_eps, "Thermal reset polarization");
  sim->add_option("--reset-probs", sim_reset,
                  "Explicit reset distribution (overrides --epsilon)")
      ->delimiter(',');
  sim->add_option("--tensor-qubits", sim_tensor,
                  "Compose the reset from this many thermal qubits at --epsilon");
  sim->add_option("--init", sim_init,
                  "Initial state: maximally-mixed (default), thermal:<eps>, or a JSON file");
  sim->add_option("--max-iters", sim_max_iters, "Iteration budget");
  sim->add_option("--tol", sim_tol, "Convergence tolerance");
  sim->add_option("--window", sim_window, "Consecutive below-tolerance iterations required");
  sim->add_option("--record", sim_record, "Recording mode: summary|full")
      ->check(CLI::IsMember({"summary", "full"}));
  sim->add_option("--metric", sim_metric, "Convergence metric: p0|full-state")
      ->check(CLI::IsMember({"p0", "full-state"}));
  sim->add_option("--out", sim_out, "Output path (stdout when absent)");
  sim->add_option("--format", sim_format, "Artifact format")
      ->check(CLI::IsMember({"csv", "json"}));

  // asymptote
  auto* asym = app.add_subcommand("asymptote", "Closed-form cooling limits");
  int asym_n = 1;
  std::vector<double> asym_reset;
  int asym_tensor = 1;
  double asym_eps = 0.0;
  double asym_delta = 0.0, asym_delta_total = 0.0, asym_delta_ratio = 0.0, asym_t_bath = 0.0;
  std::string asym_out, asym_format = "json";
  asym->add_option("--n", asym_n, "Number of computation qubits")->required();
  auto* asym_eps_opt = asym->add_option("--epsilon", asym_eps, "Thermal reset polarization");
  asym->add_option("--reset-probs", asym_reset,
                   "Explicit reset distribution (overrides --epsilon)")
      ->delimiter(',');
  asym->add_option("--tensor-qubits", asym_tensor,
                   "Compose the reset from this many thermal qubits at --epsilon");
  asym->add_option("--delta", asym_delta, "Energy gap of the cooled qubit");
  asym->add_option("--delta-total", asym_delta_total, "Gap setting the bath polarization");
  asym->add_option("--delta-ratio", asym_delta_ratio, "delta/delta_total directly");
  asym->add_option("--t-bath", asym_t_bath, "Bath temperature");
  asym->add_option("--out", asym_out, "Output path (stdout when absent)");
  asym->add_option("--format", asym_format, "Artifact format")
      ->check(CLI::IsMember({"csv", "json"}));

  // verify
  auto* ver = app.add_subcommand("verify", "Randomized invariant suites");
  std::string ver_suite;
  long ver_trials = 100;
  std::uint64_t ver_seed = 42;
  std::string ver_out, ver_format = "json";
  ver->add_option("--suite", ver_suite,
                  "maxdist|monotone|steady|recurrence|oracle|all")
      ->required();
  ver->add_option("--trials", ver_trials, "Trials per suite");
  ver->add_option("--seed", ver_seed, "Suite seed");
  ver->add_option("--out", ver_out, "Output path (stdout when absent)");
  ver->add_option("--format", ver_format, "Artifact format (json)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Closed-form limits over a parameter grid");
  std::vector<int> sweep_n;
  std::vector<double> sweep_eps, sweep_ratios{1.0};
  std::string sweep_range, sweep_out, sweep_format = "csv";
  sweep->add_option("--n-values", sweep_n, "Qubit counts")->delimiter(',')->required();
  sweep->add_option("--epsilon-values", sweep_eps, "Polarization grid")->delimiter(',');
  sweep->add_option("--epsilon-range", sweep_range, "Polarization grid as lo:hi:step");
  sweep->add_option("--gap-ratios", sweep_ratios, "delta/delta_total ratios")->delimiter(',');
  sweep->add_option("--out", sweep_out, "Output path (stdout when absent)");
  sweep->add_option("--format", sweep_format, "Artifact format")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim->parsed()) {
      return cmd_simulate(sim_n, sim_reset, sim_tensor, sim_eps, sim_eps_opt->count() > 0,
                          sim_init, sim_max_iters, sim_tol, sim_window, sim_record,
                          sim_metric, sim_out, sim_format);
    }
    if (asym->parsed()) {
      return cmd_asymptote(asym_n, asym_reset, asym_tensor, asym_eps,
                           asym_eps_opt->count() > 0, asym_delta, asym_delta_total,
                           asym_delta_ratio, asym_t_bath, asym_out, asym_format);
    }
    if (ver->parsed()) {
      return cmd_verify(ver_suite, ver_trials, ver_seed, ver_out, ver_format);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_n, sweep_eps, sweep_range, sweep_ratios, sweep_out, sweep_format);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hbac::invalid_parameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
