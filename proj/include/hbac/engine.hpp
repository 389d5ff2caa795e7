#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "hbac/backend.hpp"
#include "hbac/reset.hpp"
#include "hbac/state.hpp"

namespace hbac {

inline constexpr long kDefaultMaxIterations = 1'000'000;
inline constexpr double kDefaultConvergenceTol = 1e-12;
inline constexpr int kDefaultConvergenceWindow = 10;

enum class RecordMode { summary_only, full_snapshots };

// Stopping metric for run().
//
// p0_delta (default): p0 never decreases under the iteration, so a small
// relative change in p0 sustained over a window is a cheap progress
// signal. It is sound for starts that cool as a single block (maximally
// mixed, thermal products) but can fire early on initial states whose
// leading entries are already saturated: p0 then freezes while later
// entries keep evolving.
//
// full_state: watches max_i |Delta p_i| over the whole joint diagonal
// instead. One extra O(N) pass per iteration; use it whenever entrywise
// convergence of the final state matters.
enum class ConvergenceMetric { p0_delta, full_state };

// Sorts the joint diagonal into non-increasing order. The permutation is
// value-driven and recomputed from the current entries on every call; ties
// keep their original relative order (stable), which pins down the result
// bit-for-bit for reproducibility.
template <class T>
DiagonalState<T> sort_step(const DiagonalState<T>& state) {
  std::vector<T> probs = state.probs();
  std::stable_sort(probs.begin(), probs.end(), std::greater<T>());
  return DiagonalState<T>::unchecked(state.num_qubits(), state.reset_dim(), std::move(probs));
}

// Discards the reset system and re-equilibrates it against the bath:
// state -> computation_marginal(state) (x) reset. Leaves the computation
// marginal untouched and conserves total probability up to rounding.
template <class T>
DiagonalState<T> reset_step(const DiagonalState<T>& state, const ResetDistribution<T>& reset) {
  if (state.reset_dim() != reset.dim()) {
    throw invalid_parameter("reset_step: state and reset dimensions differ");
  }
  return tensor_with_reset(computation_marginal(state), reset);
}

// One full cooling round: sort, then reset.
template <class T>
DiagonalState<T> ppa_iteration(const DiagonalState<T>& state, const ResetDistribution<T>& reset) {
  return reset_step(sort_step(state), reset);
}

// A state is stationary iff it is of product form marginal (x) reset with
// the marginal steep enough that sorting cannot move mass across the
// reset boundary: p_i * a_k >= p_{i+1} * a_1 for all i. Comparisons use
// the backend slack (exact for the rational backend).
template <class T>
bool is_fixed_point(const DiagonalState<T>& state, const ResetDistribution<T>& reset) {
  if (state.reset_dim() != reset.dim()) {
    throw invalid_parameter("is_fixed_point: state and reset dimensions differ");
  }
  const T slack = backend_traits<T>::fixed_point_slack();
  const std::size_t k = reset.dim();
  const ComputationMarginal<T> marginal = computation_marginal(state);
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    for (std::size_t m = 0; m < k; ++m) {
      const T expect = T(marginal[i] * reset[m]);
      if (abs_value(T(state[i * k + m] - expect)) > slack) return false;
    }
  }
  for (std::size_t i = 0; i + 1 < marginal.size(); ++i) {
    const T lhs = T(marginal[i] * reset[k - 1]);
    const T rhs = T(marginal[i + 1] * reset[0]);
    if (lhs < T(rhs - slack)) return false;
  }
  return true;
}

template <class T>
struct RunConfig {
  RunConfig(int n_, ResetDistribution<T> reset_) : n(n_), reset(std::move(reset_)) {}

  int n;
  ResetDistribution<T> reset;
  // Defaults to maximally_mixed(n, reset) when absent.
  std::optional<DiagonalState<T>> initial;
  long max_iterations = kDefaultMaxIterations;
  double convergence_tol = kDefaultConvergenceTol;
  int convergence_window = kDefaultConvergenceWindow;
  RecordMode record_mode = RecordMode::summary_only;
  ConvergenceMetric metric = ConvergenceMetric::p0_delta;
};

// Per-iteration observables. Snapshots are present only in
// RecordMode::full_snapshots. Scalar metrics are reported as double in
// both backends; exact comparisons should use the states themselves.
template <class T>
struct IterationRecord {
  long t = 0;
  std::optional<DiagonalState<T>> post_sort;
  std::optional<DiagonalState<T>> post_reset;
  double p0 = 0.0;
  double delta_p0 = 0.0;
  double max_distance = 0.0;
  double qubit1_polarization = 0.0;
};

template <class T>
struct Trajectory {
  RunConfig<T> config;
  DiagonalState<T> initial_state;
  std::vector<IterationRecord<T>> records;
  bool converged = false;
  DiagonalState<T> final_state;

  long iterations() const { return static_cast<long>(records.size()); }
};

namespace detail {

// Largest log(p_i/p_{i+1}) of a marginal, +inf past a zero entry. Never
// throws: trajectory records must stay total even for degenerate states.
template <class T>
double max_distance_of(const std::vector<T>& marginal) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < marginal.size(); ++i) {
    double d;
    if (!(marginal[i + 1] > T(0))) {
      d = std::numeric_limits<double>::infinity();
    } else {
      d = std::log(to_double(T(marginal[i] / marginal[i + 1])));
    }
    best = std::max(best, d);
  }
  return best;
}

// Qubit-1 polarization straight from the marginal halves. Deliberately a
// different code path from qubit_polarization (which walks the joint
// diagonal): the two are cross-checked in the test suite.
template <class T>
double qubit1_polarization_of(const std::vector<T>& marginal) {
  T lower(0), upper(0);
  const std::size_t half = marginal.size() / 2;
  for (std::size_t i = 0; i < half; ++i) lower += marginal[i];
  for (std::size_t i = half; i < marginal.size(); ++i) upper += marginal[i];
  if (!(upper > T(0))) return std::numeric_limits<double>::infinity();
  if (!(lower > T(0))) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log(to_double(T(lower / upper)));
}

}  // namespace detail

// Iterates sort+reset from the configured initial state until convergence
// or the iteration budget runs out.
//
// Two convergence routes, checked in this order each iteration:
//   1. Exact fixed point: the post-reset state equals the previous state
//      entry-for-entry (bitwise for float64, exact for rational). This
//      short-circuits immediately regardless of tolerance settings.
//   2. Tolerance window: the configured metric stays below convergence_tol
//      for convergence_window consecutive iterations. The p0 criterion is
//      relative: |Delta p0| <= tol * max(p0, 1e-300); the full-state
//      criterion is absolute on max_i |Delta p_i|.
template <class T>
Trajectory<T> run(const RunConfig<T>& config) {
  if (config.max_iterations < 1) {
    throw invalid_parameter("run: max_iterations must be >= 1");
  }
  if (!(config.convergence_tol > 0.0)) {
    throw invalid_parameter("run: convergence_tol must be > 0");
  }
  if (config.convergence_window < 1) {
    throw invalid_parameter("run: convergence_window must be >= 1");
  }
  DiagonalState<T> initial = config.initial
                                 ? *config.initial
                                 : maximally_mixed(config.n, config.reset);
  if (initial.num_qubits() != config.n || initial.reset_dim() != config.reset.dim()) {
    throw invalid_parameter("run: initial state inconsistent with n and reset");
  }

  const std::size_t k = config.reset.dim();
  const std::size_t m_size = initial.marginal_size();
  const bool full = config.record_mode == RecordMode::full_snapshots;

  std::vector<T> cur = initial.probs();   // state entering the iteration
  std::vector<T> work(cur.size());        // sorted copy
  std::vector<T> next(cur.size());        // post-reset
  std::vector<T> marg(m_size);

  // p0 of the initial marginal, for the t=1 delta.
  T p0_prev(0);
  for (std::size_t m = 0; m < k; ++m) p0_prev += cur[m];

  Trajectory<T> out{config, initial, {}, false, initial};
  int streak = 0;

  for (long t = 1; t <= config.max_iterations; ++t) {
    work = cur;
    std::stable_sort(work.begin(), work.end(), std::greater<T>());
    for (std::size_t i = 0; i < m_size; ++i) {
      T acc(0);
      for (std::size_t m = 0; m < k; ++m) acc += work[i * k + m];
      marg[i] = acc;
    }
    for (std::size_t i = 0; i < m_size; ++i) {
      for (std::size_t m = 0; m < k; ++m) next[i * k + m] = T(marg[i] * config.reset[m]);
    }

    IterationRecord<T> rec;
    rec.t = t;
    const T delta = T(marg[0] - p0_prev);
    rec.p0 = to_double(marg[0]);
    rec.delta_p0 = to_double(delta);
    rec.max_distance = detail::max_distance_of(marg);
    rec.qubit1_polarization = detail::qubit1_polarization_of(marg);
    if (full) {
      rec.post_sort = DiagonalState<T>::unchecked(config.n, k, work);
      rec.post_reset = DiagonalState<T>::unchecked(config.n, k, next);
    }

    const bool stationary = (next == cur);
    bool below_tol;
    if (config.metric == ConvergenceMetric::p0_delta) {
      below_tol = to_double(abs_value(delta)) <=
                  config.convergence_tol * std::max(rec.p0, 1e-300);
    } else {
      double worst = 0.0;
      for (std::size_t i = 0; i < next.size(); ++i) {
        worst = std::max(worst, std::abs(to_double(T(next[i] - cur[i]))));
      }
      below_tol = worst <= config.convergence_tol;
    }

    out.records.push_back(std::move(rec));
    cur.swap(next);
    p0_prev = marg[0];

    if (stationary) {
      out.converged = true;
      break;
    }
    streak = below_tol ? streak + 1 : 0;
    if (streak >= config.convergence_window) {
      out.converged = true;
      break;
    }
  }

  out.final_state = DiagonalState<T>::unchecked(config.n, k, std::move(cur));
  return out;
}

}  // namespace hbac
