// Acceptance gate: ten end-to-end checks of the cooling engine against
// closed forms, exact-rational oracles and randomized invariants. One
// PASS/FAIL line per criterion; exit status 0 only when all ten pass.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "hbac/hbac.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

int failures = 0;

void report(int idx, bool pass, const std::string& text) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", idx, text.c_str());
  if (!pass) ++failures;
}

template <class Body>
void guarded(int idx, Body&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(idx, false, std::string("unexpected exception: ") + e.what());
  }
}

struct GridResult {
  int n = 0;
  double epsilon = 0.0;
  bool converged = false;
  long iterations = 0;
  double marginal_gap = 0.0;      // worst |final - closed form| entry
  double polarization = 0.0;      // measured qubit-1 polarization
  double polarization_err = 0.0;  // |measured - 2^(n-1) eps|
  long monotone_failures = 0;
};

hbac::RunConfig<double> grid_config(int n, hbac::ResetDistribution<double> reset) {
  hbac::RunConfig<double> config(n, std::move(reset));
  config.metric = hbac::ConvergenceMetric::full_state;
  // The polarization checks need the tiny lower-half mass (down to
  // ~1e-14 at n=6, eps=0.5) converged in relative terms, which a loose
  // absolute tolerance cannot certify: it can trip while that mass still
  // carries an order-one relative excess. 1e-15 sits an order above the
  // rounding-drift floor (~1e-16 per iteration), and the long window
  // buys the deep tail extra drain time: its relative excess falls by
  // ~0.12 nats per iteration in the worst grid cell, so 60 sustained
  // iterations shrink whatever excess remains at the first trip by
  // another ~e^-6 before the stop fires.
  config.convergence_tol = 1e-15;
  config.convergence_window = 60;
  config.max_iterations = 500000;
  return config;
}

}  // namespace

int main() {
  const std::vector<int> grid_n = {1, 2, 3, 4, 5, 6};
  const std::vector<double> grid_eps = {0.01, 0.05, 0.1, 0.2, 0.5};

  std::vector<GridResult> grid;
  double grid_seconds = 0.0;
  bool grid_done = false;

  // 1: from the maximally mixed start the simulation converges and the
  // final computation marginal matches the closed-form limit entrywise.
  guarded(1, [&] {
    const auto start = Clock::now();
    for (int n : grid_n) {
      for (double eps : grid_eps) {
        auto config = grid_config(n, hbac::make_thermal_reset(eps));
        const auto traj = hbac::run(config);
        const auto final_marginal = hbac::computation_marginal(traj.final_state);
        const auto limit = hbac::asymptotic_state(n, config.reset);
        GridResult r;
        r.n = n;
        r.epsilon = eps;
        r.converged = traj.converged;
        r.iterations = traj.iterations();
        for (std::size_t i = 0; i < limit.size(); ++i) {
          r.marginal_gap = std::max(r.marginal_gap,
                                    std::abs(final_marginal[i] - limit[i]));
        }
        r.polarization = hbac::qubit_polarization(traj.final_state, 1);
        r.polarization_err = std::abs(r.polarization - std::ldexp(eps, n - 1));
        r.monotone_failures = hbac::check_p0_monotone(traj).failures;
        grid.push_back(r);
      }
    }
    grid_seconds = seconds_since(start);
    grid_done = true;

    int unconverged = 0;
    double worst_gap = 0.0;
    const GridResult* worst = nullptr;
    for (const GridResult& r : grid) {
      if (!r.converged) ++unconverged;
      if (r.marginal_gap >= worst_gap) {
        worst_gap = r.marginal_gap;
        worst = &r;
      }
    }
    const bool pass = unconverged == 0 && worst_gap <= 1e-8 && grid_seconds < 30.0;
    std::string text = "simulated limits match the closed-form marginal within 1e-8 on the 30-point grid (worst entry gap " +
                       num(worst_gap);
    if (worst) text += " at n=" + std::to_string(worst->n) + ", eps=" + num(worst->epsilon);
    text += "; " + num(grid_seconds) + " s)";
    if (unconverged > 0) {
      text += "; " + std::to_string(unconverged) + " runs did not converge";
    }
    report(1, pass, text);
  });

  // 2: the same runs reach qubit-1 polarization 2^(n-1)*eps.
  guarded(2, [&] {
    if (!grid_done) {
      report(2, false, "grid runs unavailable");
      return;
    }
    double worst_err = 0.0;
    const GridResult* worst = nullptr;
    double spot_value = 0.0;
    for (const GridResult& r : grid) {
      if (r.polarization_err >= worst_err) {
        worst_err = r.polarization_err;
        worst = &r;
      }
      if (r.n == 3 && r.epsilon == 0.1) spot_value = r.polarization;
    }
    const bool pass = worst_err <= 1e-6;
    std::string text = "final qubit-1 polarization equals 2^(n-1)*eps within 1e-6 on the grid (worst deviation " +
                       num(worst_err);
    if (worst) text += " at n=" + std::to_string(worst->n) + ", eps=" + num(worst->epsilon);
    text += "; n=3, eps=0.1 gives " + num(spot_value) + ")";
    report(2, pass, text);
  });

  // 3: randomized trajectories never push a pairwise distance past
  // max(initial distance, reset log-ratio).
  guarded(3, [&] {
    const auto start = Clock::now();
    const auto suite = hbac::run_max_distance_suite(1000, 42);
    const double secs = seconds_since(start);
    const bool pass = suite.failures == 0 && secs < 120.0;
    std::string text = "1000 seeded random trajectories keep every distance within max(d_initial, log(a1/ak)) + 1e-9 (" +
                       std::to_string(suite.failures) + " violations, " + num(secs) + " s)";
    if (!suite.witnesses.empty()) {
      text += "; first witness: " + suite.witnesses.front().context;
    }
    report(3, pass, text);
  });

  // 4: p0 is non-decreasing across the grid trajectories and the same
  // 1000 randomized trials.
  guarded(4, [&] {
    long grid_violations = 0;
    for (const GridResult& r : grid) grid_violations += r.monotone_failures;
    const auto suite = hbac::run_monotone_suite(1000, 42);
    const bool pass = grid_done && grid_violations == 0 && suite.failures == 0;
    report(4, pass,
           "p0 never decreases across the 30 grid runs and the 1000 randomized trials (" +
               std::to_string(grid_violations + suite.failures) + " violations)");
  });

  // 5: only the top/bottom reset ratio matters: a 2-level and a 3-level
  // reset with equal a1/ak cool to the same computation marginal.
  guarded(5, [&] {
    double worst_gap = 0.0;
    int unconverged = 0;
    for (int n = 1; n <= 4; ++n) {
      for (double eps : {0.1, 0.3}) {
        const double bottom = std::exp(-2.0 * eps);
        auto config2 = grid_config(n, hbac::make_thermal_reset(eps));
        auto config3 = grid_config(
            n, hbac::ResetDistribution<double>::normalized(
                   {1.0, (2.0 + bottom) / 3.0, bottom}));
        const auto traj2 = hbac::run(config2);
        const auto traj3 = hbac::run(config3);
        if (!traj2.converged || !traj3.converged) {
          ++unconverged;
          continue;
        }
        const auto m2 = hbac::computation_marginal(traj2.final_state);
        const auto m3 = hbac::computation_marginal(traj3.final_state);
        for (std::size_t i = 0; i < m2.size(); ++i) {
          worst_gap = std::max(worst_gap, std::abs(m2[i] - m3[i]));
        }
      }
    }
    const bool pass = unconverged == 0 && worst_gap <= 1e-8;
    std::string text = "2-level and 3-level resets with equal a1/ak reach the same marginal within 1e-8 (worst entry gap " +
                       num(worst_gap) + ")";
    if (unconverged > 0) text += "; " + std::to_string(unconverged) + " pairs did not converge";
    report(5, pass, text);
  });

  // 6: a reset composed of two thermal qubits doubles the effective
  // polarization, so qubit 1 reaches 2^(n-1)*2*eps.
  guarded(6, [&] {
    double worst_err = 0.0;
    int unconverged = 0;
    for (int n = 1; n <= 4; ++n) {
      for (double eps : {0.1, 0.3}) {
        const std::vector<hbac::ResetDistribution<double>> parts(
            2, hbac::make_thermal_reset(eps));
        auto config = grid_config(n, hbac::make_tensor_reset(parts));
        const auto traj = hbac::run(config);
        if (!traj.converged) {
          ++unconverged;
          continue;
        }
        const double pol = hbac::qubit_polarization(traj.final_state, 1);
        worst_err = std::max(worst_err, std::abs(pol - std::ldexp(2.0 * eps, n - 1)));
      }
    }
    const bool pass = unconverged == 0 && worst_err <= 1e-6;
    std::string text = "a 2-qubit thermal reset yields qubit-1 polarization 2^(n-1)*2*eps within 1e-6 (worst deviation " +
                       num(worst_err) + ")";
    if (unconverged > 0) text += "; " + std::to_string(unconverged) + " runs did not converge";
    report(6, pass, text);
  });

  // 7: a1*p0_infinity stays below e^(2^n eps)/2^n for n=2 over the whole
  // sweep, with a monotonically widening gap.
  guarded(7, [&] {
    bool dominated = true;
    bool monotone = true;
    double first_gap = 0.0, last_gap = 0.0, prev_gap = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double eps = static_cast<double>(i) / 100.0;
      const auto reset = hbac::make_thermal_reset(eps);
      const double lambda1 = reset[0] * hbac::asymptotic_p0(2, reset);
      const double bound = hbac::schulman_upper_bound(2, eps);
      const double gap = bound - lambda1;
      if (!(lambda1 <= bound)) dominated = false;
      if (i == 0) {
        first_gap = gap;
      } else if (gap < prev_gap - 1e-12) {
        monotone = false;
      }
      prev_gap = gap;
      last_gap = gap;
    }
    const bool widening = last_gap > first_gap;
    report(7, dominated && monotone && widening,
           "largest-eigenvalue limit stays below e^(2^n eps)/2^n over eps in [0,1] step 0.01, gap widening monotonically from " +
               num(first_gap) + " to " + num(last_gap));
  });

  // 8: the float64 lane tracks the exact-rational lane, and the n=1
  // rational run lands exactly on {9/25, 6/25, 6/25, 4/25} at t=2.
  guarded(8, [&] {
    const hbac::ResetDistribution<hbac::Rational> reset(
        {hbac::Rational(3, 5), hbac::Rational(2, 5)});
    long oracle_failures = 0;
    for (int n = 1; n <= 4; ++n) {
      oracle_failures += hbac::rational_oracle_compare(n, reset, 1000).failures;
    }
    hbac::RunConfig<hbac::Rational> config(1, reset);
    const auto traj = hbac::run(config);
    const std::vector<hbac::Rational> expected = {
        hbac::Rational(9, 25), hbac::Rational(6, 25), hbac::Rational(6, 25),
        hbac::Rational(4, 25)};
    const bool exact = traj.converged && traj.iterations() == 2 &&
                       traj.final_state.probs() == expected;
    const bool pass = oracle_failures == 0 && exact;
    std::string text = "float64 agrees with the exact-rational lane within 1e-10 over 1000 iterations for n=1..4 (" +
                       std::to_string(oracle_failures) + " deviations)";
    text += exact ? "; the n=1 run is exactly {9/25, 6/25, 6/25, 4/25} at t=2"
                  : "; the n=1 run missed the exact fixed point at t=2";
    report(8, pass, text);
  });

  // 9: a sorted product state with every distance at or past saturation
  // is exactly invariant yet differs from the maximally-mixed limit.
  guarded(9, [&] {
    const hbac::ResetDistribution<hbac::Rational> reset(
        {hbac::Rational(3, 5), hbac::Rational(2, 5)});
    const hbac::DiagonalState<hbac::Rational> state(
        1, 2,
        {hbac::Rational(9, 20), hbac::Rational(3, 10), hbac::Rational(3, 20),
         hbac::Rational(1, 10)});
    const bool stationary = hbac::is_fixed_point(state, reset);
    const bool invariant = hbac::ppa_iteration(state, reset) == state;
    const auto marginal = hbac::computation_marginal(state);
    const auto mm_limit = hbac::asymptotic_state(1, reset);
    const bool distinct = !(marginal.probs() == mm_limit.probs());
    report(9, stationary && invariant && distinct,
           std::string("{9/20, 3/10, 3/20, 1/10} is exactly invariant under one iteration ") +
               (invariant ? "(confirmed)" : "(it moved)") +
               " and its marginal {3/4, 1/4} differs from the maximally-mixed limit {3/5, 2/5}: the steady state is not unique");
  });

  // 10: block-structure prediction matches the simulated limit on
  // randomized sorted starts whose distances straddle the saturation
  // threshold.
  guarded(10, [&] {
    double worst_gap = 0.0;
    int worst_trial = -1;
    int unconverged = 0;
    for (int trial = 0; trial < 100; ++trial) {
      hbac::SeededRng rng(hbac::detail::mix_seed(1042, static_cast<std::uint64_t>(trial)));
      const int n = static_cast<int>(rng.integer(1, 5));
      const std::size_t k = rng.integer(2, 4);
      const double log_ratio = rng.uniform(0.1, 1.5);
      const auto reset = hbac::random_reset(rng, k, log_ratio);
      const auto marginal = hbac::random_straddling_marginal(rng, n, log_ratio);
      const auto predicted = hbac::block_predict(marginal, reset);

      hbac::RunConfig<double> config(n, reset);
      config.initial = hbac::tensor_with_reset(marginal, reset);
      config.metric = hbac::ConvergenceMetric::full_state;
      config.convergence_tol = 1e-14;
      config.convergence_window = 20;
      config.max_iterations = 300000;
      const auto traj = hbac::run(config);
      if (!traj.converged) {
        ++unconverged;
        continue;
      }
      const auto final_marginal = hbac::computation_marginal(traj.final_state);
      for (std::size_t i = 0; i < final_marginal.size(); ++i) {
        const double gap = std::abs(final_marginal[i] - predicted.predicted_marginal[i]);
        if (gap >= worst_gap) {
          worst_gap = gap;
          worst_trial = trial;
        }
      }
    }
    const bool pass = unconverged == 0 && worst_gap <= 1e-6;
    std::string text = "block prediction matches the simulated limit within 1e-6 on 100 randomized straddling starts (worst entry gap " +
                       num(worst_gap) + " at trial " + std::to_string(worst_trial) + ")";
    if (unconverged > 0) text += "; " + std::to_string(unconverged) + " runs did not converge";
    report(10, pass, text);
  });

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
