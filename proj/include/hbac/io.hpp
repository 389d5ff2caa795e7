#pragma once

#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <future>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hbac/asymptotics.hpp"
#include "hbac/backend.hpp"
#include "hbac/engine.hpp"
#include "hbac/verification.hpp"

namespace hbac {

using json = nlohmann::json;

// Identifier of the source tree the binary was built from, stamped in by
// the build system; artifacts carry it so results stay attributable.
inline const char* build_id() {
#ifdef HBAC_BUILD_ID
  return HBAC_BUILD_ID;
#else
  return "unknown";
#endif
}

// 17 significant digits: enough to reproduce any double exactly.
inline std::string format_full(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline json json_finite(double x) {
  // JSON has no inf/nan literals; encode them as strings rather than the
  // default null so importers can restore the value.
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline double double_from_json(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return v.get<double>();
}

namespace detail {

inline const char* record_mode_name(RecordMode mode) {
  return mode == RecordMode::full_snapshots ? "full" : "summary";
}

inline const char* metric_name(ConvergenceMetric metric) {
  return metric == ConvergenceMetric::p0_delta ? "p0-delta" : "full-state";
}

inline std::string join_full(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += format_full(xs[i]);
  }
  return out;
}

}  // namespace detail

// Derived figures for a finished run: where it ended and how far that is
// from the closed-form limit for the same reset.
struct TrajectorySummary {
  bool converged = false;
  long iterations = 0;
  double final_p0 = 0.0;
  double qubit1_polarization = 0.0;
  std::vector<double> final_marginal;
  double asymptotic_p0 = 0.0;
  double max_gap_to_asymptotic = 0.0;
  double qubit1_polarization_limit = 0.0;
};

inline TrajectorySummary summarize(const Trajectory<double>& traj) {
  TrajectorySummary s;
  s.converged = traj.converged;
  s.iterations = traj.iterations();
  const ComputationMarginal<double> marginal = computation_marginal(traj.final_state);
  s.final_marginal = marginal.probs();
  s.final_p0 = marginal[0];
  s.qubit1_polarization = detail::qubit1_polarization_of(marginal.probs());
  s.asymptotic_p0 = asymptotic_p0(traj.config.n, traj.config.reset);
  const ComputationMarginal<double> limit = asymptotic_state(traj.config.n, traj.config.reset);
  double gap = 0.0;
  for (std::size_t i = 0; i < limit.size(); ++i) {
    gap = std::max(gap, std::abs(marginal[i] - limit[i]));
  }
  s.max_gap_to_asymptotic = gap;
  s.qubit1_polarization_limit = qubit1_polarization_limit(traj.config.n, traj.config.reset);
  return s;
}

inline json trajectory_metadata(const Trajectory<double>& traj) {
  const RunConfig<double>& c = traj.config;
  return json{{"backend", backend_traits<double>::name},
              {"build", build_id()},
              {"n", c.n},
              {"reset_dim", c.reset.dim()},
              {"reset", c.reset.probs()},
              {"epsilon_eff", c.reset.effective_polarization()},
              {"max_iterations", c.max_iterations},
              {"convergence_tol", c.convergence_tol},
              {"convergence_window", c.convergence_window},
              {"record_mode", detail::record_mode_name(c.record_mode)},
              {"convergence_metric", detail::metric_name(c.metric)}};
}

inline json trajectory_to_json(const Trajectory<double>& traj) {
  json data = json::array();
  for (const IterationRecord<double>& rec : traj.records) {
    json row{{"t", rec.t},
             {"p0", rec.p0},
             {"delta_p0", rec.delta_p0},
             {"max_distance", json_finite(rec.max_distance)},
             {"qubit1_polarization", json_finite(rec.qubit1_polarization)}};
    if (rec.post_sort) row["post_sort"] = rec.post_sort->probs();
    if (rec.post_reset) row["post_reset"] = rec.post_reset->probs();
    data.push_back(std::move(row));
  }
  const TrajectorySummary s = summarize(traj);
  return json{{"metadata", trajectory_metadata(traj)},
              {"data", std::move(data)},
              {"summary",
               {{"converged", s.converged},
                {"iterations", s.iterations},
                {"final_p0", s.final_p0},
                {"qubit1_polarization", json_finite(s.qubit1_polarization)},
                {"final_marginal", s.final_marginal},
                {"asymptotic_p0", s.asymptotic_p0},
                {"max_gap_to_asymptotic", s.max_gap_to_asymptotic},
                {"qubit1_polarization_limit", s.qubit1_polarization_limit}}}};
}

// Inverse of trajectory_to_json for the summary block; per-iteration data
// rides along in the document but is not needed to resume reporting.
inline TrajectorySummary summary_from_json(const json& doc) {
  const json& s = doc.at("summary");
  TrajectorySummary out;
  out.converged = s.at("converged").get<bool>();
  out.iterations = s.at("iterations").get<long>();
  out.final_p0 = s.at("final_p0").get<double>();
  out.qubit1_polarization = double_from_json(s.at("qubit1_polarization"));
  out.final_marginal = s.at("final_marginal").get<std::vector<double>>();
  out.asymptotic_p0 = s.at("asymptotic_p0").get<double>();
  out.max_gap_to_asymptotic = s.at("max_gap_to_asymptotic").get<double>();
  out.qubit1_polarization_limit = s.at("qubit1_polarization_limit").get<double>();
  return out;
}

// CSV: `#`-prefixed metadata comments, one header row, one row per
// iteration, every value at full precision. Snapshots never go to CSV;
// request JSON for those.
inline void write_trajectory_csv(std::ostream& os, const Trajectory<double>& traj) {
  const RunConfig<double>& c = traj.config;
  const TrajectorySummary s = summarize(traj);
  os << "# trajectory\n";
  os << "# backend=" << backend_traits<double>::name << " build=" << build_id() << "\n";
  os << "# n=" << c.n << " reset_dim=" << c.reset.dim()
     << " reset=" << detail::join_full(c.reset.probs()) << "\n";
  os << "# epsilon_eff=" << format_full(c.reset.effective_polarization())
     << " convergence_tol=" << format_full(c.convergence_tol)
     << " convergence_window=" << c.convergence_window
     << " max_iterations=" << c.max_iterations
     << " record_mode=" << detail::record_mode_name(c.record_mode)
     << " convergence_metric=" << detail::metric_name(c.metric) << "\n";
  os << "# converged=" << (s.converged ? "true" : "false")
     << " iterations=" << s.iterations
     << " final_p0=" << format_full(s.final_p0)
     << " asymptotic_p0=" << format_full(s.asymptotic_p0)
     << " max_gap_to_asymptotic=" << format_full(s.max_gap_to_asymptotic) << "\n";
  os << "t,p0,delta_p0,max_distance,qubit1_polarization\n";
  for (const IterationRecord<double>& rec : traj.records) {
    os << rec.t << "," << format_full(rec.p0) << "," << format_full(rec.delta_p0) << ","
       << format_full(rec.max_distance) << "," << format_full(rec.qubit1_polarization) << "\n";
  }
}

inline json prediction_to_json(const AsymptoticPrediction& pred,
                               const std::optional<TemperatureSpec>& temp = std::nullopt) {
  json out{{"metadata",
            {{"backend", backend_traits<double>::name}, {"build", build_id()}}},
           {"data",
            {{"n", pred.n},
             {"reset_dim", pred.reset.dim()},
             {"reset", pred.reset.probs()},
             {"epsilon_eff", pred.reset.effective_polarization()},
             {"p_infinity", pred.p_infinity.probs()},
             {"p0_infinity", pred.p0_infinity},
             {"qubit1_polarization_limit", pred.qubit1_polarization_limit},
             {"lambda1_limit", pred.lambda1_limit},
             {"per_qubit_polarizations", pred.per_qubit_polarizations}}}};
  if (pred.schulman_bound) out["data"]["schulman_bound"] = *pred.schulman_bound;
  if (temp) {
    out["data"]["effective_temperature"] = effective_temperature(pred.n, *temp);
    out["data"]["temperature_spec"] = {
        {"delta", temp->delta}, {"delta_total", temp->delta_total}, {"t_bath", temp->t_bath}};
  }
  return out;
}

// CSV form: scalar figures as metadata comments, then the asymptotic
// marginal as an index-value table.
inline void write_prediction_csv(std::ostream& os, const AsymptoticPrediction& pred,
                                 const std::optional<TemperatureSpec>& temp = std::nullopt) {
  os << "# asymptotic prediction\n";
  os << "# backend=" << backend_traits<double>::name << " build=" << build_id() << "\n";
  os << "# n=" << pred.n << " reset_dim=" << pred.reset.dim()
     << " reset=" << detail::join_full(pred.reset.probs()) << "\n";
  os << "# epsilon_eff=" << format_full(pred.reset.effective_polarization())
     << " p0_infinity=" << format_full(pred.p0_infinity)
     << " qubit1_polarization_limit=" << format_full(pred.qubit1_polarization_limit)
     << " lambda1_limit=" << format_full(pred.lambda1_limit);
  if (pred.schulman_bound) os << " schulman_bound=" << format_full(*pred.schulman_bound);
  if (temp) {
    os << " effective_temperature=" << format_full(effective_temperature(pred.n, *temp));
  }
  os << "\n";
  os << "# per_qubit_polarizations=" << detail::join_full(pred.per_qubit_polarizations) << "\n";
  os << "i,p_infinity\n";
  for (std::size_t i = 0; i < pred.p_infinity.size(); ++i) {
    os << i << "," << format_full(pred.p_infinity[i]) << "\n";
  }
}

inline json report_to_json(const VerificationReport& report) {
  json witnesses = json::array();
  for (const Witness& w : report.witnesses) {
    witnesses.push_back({{"context", w.context},
                         {"iteration", w.iteration},
                         {"index", w.index},
                         {"observed", json_finite(w.observed)},
                         {"bound", json_finite(w.bound)}});
  }
  return json{{"invariant", report.invariant},
              {"trials", report.trials},
              {"failures", report.failures},
              {"tolerance", report.tolerance},
              {"passed", report.passed()},
              {"witnesses", std::move(witnesses)}};
}

// --- closed-form parameter sweeps -------------------------------------

struct SweepSpec {
  std::vector<int> n_values;
  std::vector<double> epsilon_values;
  // delta/delta_total ratios for the effective-temperature columns,
  // reported as T_eff/T_bath.
  std::vector<double> gap_ratios;
};

struct SweepRow {
  int n = 0;
  double epsilon = 0.0;
  double p0_infinity = 0.0;
  double lambda1_limit = 0.0;
  double schulman_bound = 0.0;
  double polarization_limit = 0.0;
  std::vector<double> t_eff_over_tb;
};

namespace detail {

inline SweepRow sweep_row(int n, double epsilon, const std::vector<double>& gap_ratios) {
  SweepRow row;
  row.n = n;
  row.epsilon = epsilon;
  const ResetDistribution<double> reset = make_thermal_reset(epsilon);
  row.p0_infinity = asymptotic_p0(n, reset);
  row.lambda1_limit = reset[0] * row.p0_infinity;
  row.schulman_bound = schulman_upper_bound(n, epsilon);
  row.polarization_limit = qubit1_polarization_limit(n, reset);
  row.t_eff_over_tb.reserve(gap_ratios.size());
  for (double ratio : gap_ratios) {
    row.t_eff_over_tb.push_back(ratio * std::ldexp(1.0, 1 - n));
  }
  return row;
}

}  // namespace detail

// Evaluates the closed forms over the full n x epsilon grid. Grid cells
// are independent; large grids are chunked across threads, and rows are
// emitted in grid order (n-major) regardless of scheduling.
inline std::vector<SweepRow> compute_sweep(const SweepSpec& spec) {
  if (spec.n_values.empty() || spec.epsilon_values.empty()) {
    throw invalid_parameter("compute_sweep: n and epsilon grids must be non-empty");
  }
  for (int n : spec.n_values) {
    if (n < 1 || n > 30) throw invalid_parameter("compute_sweep: qubit count must be in [1, 30]");
  }
  for (double ratio : spec.gap_ratios) {
    if (!(ratio > 0.0)) throw invalid_parameter("compute_sweep: gap ratios must be > 0");
  }
  const std::size_t total = spec.n_values.size() * spec.epsilon_values.size();
  std::vector<SweepRow> rows(total);
  const auto fill = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const int n = spec.n_values[idx / spec.epsilon_values.size()];
      const double epsilon = spec.epsilon_values[idx % spec.epsilon_values.size()];
      rows[idx] = detail::sweep_row(n, epsilon, spec.gap_ratios);
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), 8);
  if (total < 64 || workers < 2) {
    fill(0, total);
    return rows;
  }
  const std::size_t chunk = (total + workers - 1) / workers;
  std::vector<std::future<void>> futures;
  for (std::size_t lo = 0; lo < total; lo += chunk) {
    const std::size_t hi = std::min(lo + chunk, total);
    futures.push_back(std::async(std::launch::async, fill, lo, hi));
  }
  for (std::future<void>& f : futures) f.get();
  return rows;
}

inline std::string gap_ratio_label(double ratio) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", ratio);
  return buf;
}

inline void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                            const std::vector<SweepRow>& rows) {
  os << "# closed-form sweep\n";
  os << "# backend=" << backend_traits<double>::name << " build=" << build_id() << "\n";
  os << "n,epsilon,p0_infinity,lambda1_limit,schulman_bound,polarization_limit";
  for (double ratio : spec.gap_ratios) {
    os << ",t_eff_over_tb_" << gap_ratio_label(ratio);
  }
  os << "\n";
  for (const SweepRow& row : rows) {
    os << row.n << "," << format_full(row.epsilon) << "," << format_full(row.p0_infinity) << ","
       << format_full(row.lambda1_limit) << "," << format_full(row.schulman_bound) << ","
       << format_full(row.polarization_limit);
    for (double t : row.t_eff_over_tb) os << "," << format_full(t);
    os << "\n";
  }
}

inline json sweep_to_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  json data = json::array();
  for (const SweepRow& row : rows) {
    json t_eff = json::object();
    for (std::size_t i = 0; i < spec.gap_ratios.size(); ++i) {
      t_eff[gap_ratio_label(spec.gap_ratios[i])] = row.t_eff_over_tb[i];
    }
    data.push_back({{"n", row.n},
                    {"epsilon", row.epsilon},
                    {"p0_infinity", row.p0_infinity},
                    {"lambda1_limit", row.lambda1_limit},
                    {"schulman_bound", row.schulman_bound},
                    {"polarization_limit", row.polarization_limit},
                    {"t_eff_over_tb", std::move(t_eff)}});
  }
  return json{{"metadata",
               {{"backend", backend_traits<double>::name},
                {"build", build_id()},
                {"gap_ratios", spec.gap_ratios}}},
              {"data", std::move(data)}};
}

}  // namespace hbac
