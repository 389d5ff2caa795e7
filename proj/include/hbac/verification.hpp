#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hbac/asymptotics.hpp"
#include "hbac/backend.hpp"
#include "hbac/engine.hpp"
#include "hbac/reset.hpp"
#include "hbac/state.hpp"

namespace hbac {

struct Witness {
  std::string context;
  long iteration = -1;
  long index = -1;
  double observed = 0.0;
  double bound = 0.0;
};

// Outcome of one invariant check or a merged batch of them. Merging adds
// trial and failure counts and keeps the first few witnesses; the merge
// is associative, so batches may be checked in any grouping.
struct VerificationReport {
  std::string invariant;
  long trials = 0;
  long failures = 0;
  double tolerance = 0.0;
  std::vector<Witness> witnesses;

  static constexpr std::size_t witness_cap = 10;

  bool passed() const { return failures == 0; }

  void add_failure(Witness w) {
    ++failures;
    if (witnesses.size() < witness_cap) witnesses.push_back(std::move(w));
  }

  void prefix_context(const std::string& prefix) {
    for (Witness& w : witnesses) w.context = prefix + w.context;
  }

  void merge(const VerificationReport& other) {
    trials += other.trials;
    failures += other.failures;
    for (const Witness& w : other.witnesses) {
      if (witnesses.size() >= witness_cap) break;
      witnesses.push_back(w);
    }
  }
};

// Sort-step mass transfer between two post-reset product-state entries.
// Entry (i, level_i) receives mass from (j, level_j) when the later entry
// outgrew it: p_i a_{level_i} < p_j a_{level_j} with i < j. Each
// unordered pair is reported once, oriented canonically with i < j, so
// the kind is always from_below; from_above is the same event seen from
// the other entry and is never emitted separately.
enum class CrossingKind { from_below, from_above };

template <class T>
struct CrossingEvent {
  CrossingKind kind = CrossingKind::from_below;
  std::size_t i = 0;        // marginal index of the overtaken entry
  std::size_t j = 0;        // marginal index of the overtaking entry (j > i)
  std::size_t level_i = 0;  // reset level of the overtaken entry (0-based)
  std::size_t level_j = 0;  // reset level of the overtaking entry
  T value_i{};              // p_i * a_{level_i}
  T value_j{};              // p_j * a_{level_j}
};

// Enumerates the crossings the next sort step will resolve in a
// post-reset state. Requires a product-form state with a non-increasing
// marginal (the only states a reset step produces). Ties are not
// crossings. The list is empty iff the state is already sorted, i.e. a
// fixed point of the sort step.
template <class T>
std::vector<CrossingEvent<T>> classify_crossings(const DiagonalState<T>& state,
                                                 const ResetDistribution<T>& reset) {
  if (state.reset_dim() != reset.dim()) {
    throw invalid_parameter("classify_crossings: state and reset dimensions differ");
  }
  const T slack = backend_traits<T>::fixed_point_slack();
  const std::size_t k = reset.dim();
  const ComputationMarginal<T> marginal = computation_marginal(state);
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    for (std::size_t m = 0; m < k; ++m) {
      const T expect = T(marginal[i] * reset[m]);
      if (abs_value(T(state[i * k + m] - expect)) > slack) {
        throw invalid_parameter("classify_crossings: state is not marginal (x) reset");
      }
    }
  }
  for (std::size_t i = 0; i + 1 < marginal.size(); ++i) {
    if (marginal[i] < marginal[i + 1]) {
      throw invalid_parameter("classify_crossings: marginal must be non-increasing");
    }
  }

  // With a sorted marginal, p_i a_{m_i} < p_j a_{m_j} for i < j forces
  // m_i > m_j, so only those level pairs are scanned.
  std::vector<CrossingEvent<T>> events;
  for (std::size_t i = 0; i + 1 < marginal.size(); ++i) {
    for (std::size_t j = i + 1; j < marginal.size(); ++j) {
      for (std::size_t mi = 1; mi < k; ++mi) {
        for (std::size_t mj = 0; mj < mi; ++mj) {
          const T vi = T(marginal[i] * reset[mi]);
          const T vj = T(marginal[j] * reset[mj]);
          if (vi < vj) {
            events.push_back(CrossingEvent<T>{CrossingKind::from_below, i, j, mi, mj, vi, vj});
          }
        }
      }
    }
  }
  return events;
}

namespace detail {

template <class T>
const DiagonalState<T>& snapshot_or_throw(const IterationRecord<T>& rec) {
  if (!rec.post_reset) {
    throw precondition_error("check requires a trajectory recorded with full snapshots");
  }
  return *rec.post_reset;
}

}  // namespace detail

// No pairwise distance ever exceeds max(d_i at t=0, L) where
// L = log(a_1/a_k): distances grow toward saturation but never
// overshoot. Checked per index at every recorded iteration, float64 slack
// 1e-9 (exact for the rational backend). Needs full snapshots.
template <class T>
VerificationReport check_max_distance(const Trajectory<T>& traj) {
  VerificationReport report;
  report.invariant = "max-distance";
  report.tolerance = backend_traits<T>::exact ? 0.0 : 1e-9;
  report.trials = 1;

  const ComputationMarginal<T> initial = computation_marginal(traj.initial_state);
  const std::size_t m_size = initial.size();

  if constexpr (backend_traits<T>::exact) {
    // Compare ratios exactly: d_t <= bound  <=>  p_i/p_{i+1} <= r_bound.
    const T r_reset = T(traj.config.reset[0] / traj.config.reset[traj.config.reset.dim() - 1]);
    std::vector<std::optional<T>> r_bound(m_size - 1);  // nullopt = unbounded
    for (std::size_t i = 0; i + 1 < m_size; ++i) {
      if (!(initial[i + 1] > T(0))) {
        r_bound[i] = std::nullopt;
        continue;
      }
      const T r0 = T(initial[i] / initial[i + 1]);
      r_bound[i] = r0 > r_reset ? r0 : r_reset;
    }
    for (const IterationRecord<T>& rec : traj.records) {
      const ComputationMarginal<T> m = computation_marginal(detail::snapshot_or_throw(rec));
      for (std::size_t i = 0; i + 1 < m_size; ++i) {
        if (!r_bound[i]) continue;
        if (!(m[i + 1] > T(0))) {
          report.add_failure(Witness{"distance diverged", rec.t, static_cast<long>(i),
                                     std::numeric_limits<double>::infinity(),
                                     std::log(to_double(*r_bound[i]))});
          continue;
        }
        const T r = T(m[i] / m[i + 1]);
        if (r > *r_bound[i]) {
          report.add_failure(Witness{"", rec.t, static_cast<long>(i),
                                     std::log(to_double(r)), std::log(to_double(*r_bound[i]))});
        }
      }
    }
  } else {
    const double L = traj.config.reset.log_ratio();
    std::vector<double> bound(m_size - 1);
    for (std::size_t i = 0; i + 1 < m_size; ++i) {
      double d0;
      if (!(initial[i + 1] > T(0))) {
        d0 = std::numeric_limits<double>::infinity();
      } else {
        d0 = std::log(to_double(T(initial[i] / initial[i + 1])));
      }
      bound[i] = std::max(d0, L);
    }
    for (const IterationRecord<T>& rec : traj.records) {
      const ComputationMarginal<T> m = computation_marginal(detail::snapshot_or_throw(rec));
      for (std::size_t i = 0; i + 1 < m_size; ++i) {
        double d;
        if (!(m[i + 1] > T(0))) {
          d = std::numeric_limits<double>::infinity();
        } else {
          d = std::log(to_double(T(m[i] / m[i + 1])));
        }
        if (d > bound[i] + 1e-9) {
          report.add_failure(Witness{"", rec.t, static_cast<long>(i), d, bound[i]});
        }
      }
    }
  }
  return report;
}

// p0 never decreases along a trajectory (slack 1e-14 on the recorded
// doubles). Works from the per-iteration scalars, so summary-only
// trajectories qualify.
template <class T>
VerificationReport check_p0_monotone(const Trajectory<T>& traj) {
  VerificationReport report;
  report.invariant = "p0-monotone";
  report.tolerance = 1e-14;
  report.trials = 1;

  const ComputationMarginal<T> initial = computation_marginal(traj.initial_state);
  double prev = to_double(initial[0]);
  for (const IterationRecord<T>& rec : traj.records) {
    if (rec.p0 < prev - 1e-14) {
      report.add_failure(Witness{"", rec.t, 0, rec.p0, prev});
    }
    prev = rec.p0;
  }
  return report;
}

// A state satisfying the stationarity condition must be left exactly
// invariant by one iteration (within backend slack); a state violating it
// must change. Either direction failing is reported.
template <class T>
VerificationReport check_steady_invariance(const DiagonalState<T>& state,
                                           const ResetDistribution<T>& reset) {
  VerificationReport report;
  report.invariant = "steady-state-invariance";
  report.tolerance = to_double(backend_traits<T>::fixed_point_slack());
  report.trials = 1;

  const bool expect_invariant = is_fixed_point(state, reset);
  const DiagonalState<T> next = ppa_iteration(state, reset);
  const T slack = backend_traits<T>::fixed_point_slack();
  std::optional<std::size_t> first_changed;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (abs_value(T(next[i] - state[i])) > slack) {
      first_changed = i;
      break;
    }
  }
  if (expect_invariant && first_changed) {
    report.add_failure(Witness{"stationary state moved", 1,
                               static_cast<long>(*first_changed),
                               to_double(next[*first_changed]),
                               to_double(state[*first_changed])});
  }
  if (!expect_invariant && !first_changed) {
    report.add_failure(Witness{"non-stationary state did not move", 1, -1, 0.0, 0.0});
  }
  return report;
}

// For a two-level reset, the per-iteration gain obeys
// p0(t+1) - p0(t) -> p1(t) a_1 - p0(t) a_2 as the leading distance
// saturates. The residual must drop below 1e-8 by the final iteration of
// a converged run; the final quarter is scanned and the worst residual in
// it is reported as a witness if the final one fails. Applies to
// trajectories whose leading distance actually saturates (starts with
// d_i <= L); a trajectory frozen short of saturation keeps a permanent
// residual, which this check will faithfully flag.
template <class T>
VerificationReport check_delta_p0_recurrence(const Trajectory<T>& traj) {
  if (traj.config.reset.dim() != 2) {
    throw invalid_parameter("recurrence check requires a two-level reset");
  }
  if (!traj.converged) {
    throw precondition_error("recurrence check requires a converged trajectory");
  }
  VerificationReport report;
  report.invariant = "delta-p0-recurrence";
  report.tolerance = 1e-8;
  report.trials = 1;

  const double a1 = to_double(traj.config.reset[0]);
  const double a2 = to_double(traj.config.reset[1]);

  // p0/p1 series including the initial state at position 0.
  const long total = traj.iterations();
  std::vector<double> p0s(total + 1), p1s(total + 1);
  {
    const ComputationMarginal<T> m0 = computation_marginal(traj.initial_state);
    p0s[0] = to_double(m0[0]);
    p1s[0] = to_double(m0[1]);
  }
  for (long t = 1; t <= total; ++t) {
    const ComputationMarginal<T> m =
        computation_marginal(detail::snapshot_or_throw(traj.records[t - 1]));
    p0s[t] = to_double(m[0]);
    p1s[t] = to_double(m[1]);
  }

  const long quarter_start = total - total / 4;
  double worst = 0.0;
  long worst_t = quarter_start;
  for (long t = quarter_start; t < total; ++t) {
    const double residual = std::abs((p0s[t + 1] - p0s[t]) - (p1s[t] * a1 - p0s[t] * a2));
    if (residual > worst) {
      worst = residual;
      worst_t = t;
    }
  }
  const double final_residual =
      total > 0 ? std::abs((p0s[total] - p0s[total - 1]) -
                           (p1s[total - 1] * a1 - p0s[total - 1] * a2))
                : 0.0;
  if (final_residual > 1e-8) {
    report.add_failure(Witness{"final residual", total, -1, final_residual, 1e-8});
    if (worst > final_residual) {
      report.add_failure(Witness{"worst residual in final quarter", worst_t, -1, worst, 1e-8});
    }
  }
  return report;
}

// Runs the float64 and exact lanes side by side from the same start and
// compares every joint entry at every iteration against 1e-10. Both lanes
// share one code path (the engine is generic), so this cross-checks
// rounding, not logic; the logic cross-check is the closed forms.
inline VerificationReport rational_oracle_compare(
    int n, const ResetDistribution<Rational>& reset, long iterations,
    const std::optional<DiagonalState<Rational>>& initial = std::nullopt) {
  if (n < 1 || n > 8) {
    throw invalid_parameter("rational_oracle_compare: supports n in [1, 8]");
  }
  if (iterations < 1 || iterations > 10000) {
    throw invalid_parameter("rational_oracle_compare: supports at most 10000 iterations");
  }

  VerificationReport report;
  report.invariant = "float-vs-rational";
  report.tolerance = 1e-10;
  report.trials = 1;

  std::vector<double> reset_f;
  reset_f.reserve(reset.dim());
  for (const Rational& a : reset.probs()) reset_f.push_back(to_double(a));
  const ResetDistribution<double> resetd(std::move(reset_f));

  DiagonalState<Rational> r = initial ? *initial : maximally_mixed(n, reset);
  if (r.num_qubits() != n || r.reset_dim() != reset.dim()) {
    throw invalid_parameter("rational_oracle_compare: initial state inconsistent with n and reset");
  }
  std::vector<double> init_f;
  init_f.reserve(r.size());
  for (const Rational& x : r.probs()) init_f.push_back(to_double(x));
  DiagonalState<double> f(n, reset.dim(), std::move(init_f));

  for (long t = 1; t <= iterations; ++t) {
    DiagonalState<Rational> r_next = ppa_iteration(r, reset);
    DiagonalState<double> f_next = ppa_iteration(f, resetd);
    for (std::size_t i = 0; i < r_next.size(); ++i) {
      const double dev = std::abs(to_double(r_next[i]) - f_next[i]);
      if (dev > 1e-10) {
        report.add_failure(Witness{"", t, static_cast<long>(i), dev, 1e-10});
      }
    }
    // Once both lanes are exactly stationary nothing can change again.
    const bool done = (r_next == r) && (f_next == f);
    r = std::move(r_next);
    f = std::move(f_next);
    if (done) break;
  }
  return report;
}

// --- deterministic randomized suites ---------------------------------

// Deterministic generator with hand-rolled variate transforms, so the
// same seed yields the same trial sequence on every platform (the raw
// mt19937_64 stream is standardized; distribution adapters are not).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Strictly positive: u = 0 is rejected, u < 1 always holds.
  double exponential() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return -std::log(u);
  }

  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
    return lo + gen_() % (hi - lo + 1);
  }

 private:
  std::mt19937_64 gen_;
};

namespace detail {

// Distinct per-trial seeds from one suite seed, so trials stay
// independent of execution order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

// Random k-level reset with a prescribed a_1/a_k ratio: endpoints
// {1, e^-log_ratio}, interior levels uniform in between, normalized.
inline ResetDistribution<double> random_reset(SeededRng& rng, std::size_t k, double log_ratio) {
  std::vector<double> levels;
  levels.reserve(k);
  levels.push_back(1.0);
  const double floor_level = std::exp(-log_ratio);
  for (std::size_t m = 0; m + 2 < k; ++m) {
    levels.push_back(rng.uniform(floor_level, 1.0));
  }
  levels.push_back(floor_level);
  std::sort(levels.begin(), levels.end(), std::greater<double>());
  return ResetDistribution<double>::normalized(std::move(levels));
}

// Random sorted positive marginal: 2^n exponential variates, sorted
// non-increasing, normalized.
inline ComputationMarginal<double> random_sorted_marginal(SeededRng& rng, int n) {
  std::vector<double> p(std::size_t{1} << n);
  double sum = 0.0;
  for (double& x : p) {
    x = rng.exponential();
    sum += x;
  }
  std::sort(p.begin(), p.end(), std::greater<double>());
  for (double& x : p) x /= sum;
  return ComputationMarginal<double>(std::move(p));
}

// Caps every pairwise distance at d_max by raising entries to the
// geometric floor of their predecessor, then renormalizing. Distances
// come out as min(original, d_max); order is preserved.
inline ComputationMarginal<double> clamp_distances(const ComputationMarginal<double>& marginal,
                                                   double d_max) {
  if (!(d_max > 0.0)) throw invalid_parameter("clamp_distances: d_max must be > 0");
  std::vector<double> p = marginal.probs();
  const double floor_ratio = std::exp(-d_max);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    p[i + 1] = std::max(p[i + 1], p[i] * floor_ratio);
  }
  double sum = 0.0;
  for (double x : p) sum += x;
  for (double& x : p) x /= sum;
  return ComputationMarginal<double>(std::move(p));
}

// Random sorted marginal whose distances are drawn uniformly from
// [0, 2*log_ratio], so roughly half the boundaries exceed the reset's
// saturation distance: the interesting regime for block structure.
inline ComputationMarginal<double> random_straddling_marginal(SeededRng& rng, int n,
                                                              double log_ratio) {
  std::vector<double> p(std::size_t{1} << n);
  p[0] = 1.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    p[i + 1] = p[i] * std::exp(-rng.uniform(0.0, 2.0 * log_ratio));
  }
  double sum = 0.0;
  for (double x : p) sum += x;
  for (double& x : p) x /= sum;
  return ComputationMarginal<double>(std::move(p));
}

namespace detail {

struct RandomTrial {
  int n;
  ResetDistribution<double> reset;
  DiagonalState<double> initial;
};

// Shared trial generator for the trajectory-invariant suites:
// n in [1,6], k in [2,4], log-ratio in [0.05, 2], random sorted start,
// distance-clamped to within saturation on half the trials.
inline RandomTrial random_trajectory_trial(SeededRng& rng) {
  const int n = static_cast<int>(rng.integer(1, 6));
  const std::size_t k = rng.integer(2, 4);
  const double log_ratio = rng.uniform(0.05, 2.0);
  ResetDistribution<double> reset = random_reset(rng, k, log_ratio);
  ComputationMarginal<double> marginal = random_sorted_marginal(rng, n);
  if (rng.uniform() < 0.5) {
    marginal = clamp_distances(marginal, log_ratio * rng.uniform(0.2, 1.0));
  }
  DiagonalState<double> initial = tensor_with_reset(marginal, reset);
  return RandomTrial{n, std::move(reset), std::move(initial)};
}

}  // namespace detail

inline VerificationReport run_max_distance_suite(long trials, std::uint64_t seed) {
  VerificationReport total;
  total.invariant = "max-distance";
  total.tolerance = 1e-9;
  for (long trial = 0; trial < trials; ++trial) {
    SeededRng rng(detail::mix_seed(seed, static_cast<std::uint64_t>(trial)));
    detail::RandomTrial t = detail::random_trajectory_trial(rng);
    RunConfig<double> config(t.n, t.reset);
    config.initial = std::move(t.initial);
    config.max_iterations = 1500;
    config.record_mode = RecordMode::full_snapshots;
    VerificationReport r = check_max_distance(run(config));
    r.prefix_context("trial " + std::to_string(trial) + ": ");
    total.merge(r);
  }
  return total;
}

inline VerificationReport run_monotone_suite(long trials, std::uint64_t seed) {
  VerificationReport total;
  total.invariant = "p0-monotone";
  total.tolerance = 1e-14;
  for (long trial = 0; trial < trials; ++trial) {
    SeededRng rng(detail::mix_seed(seed, static_cast<std::uint64_t>(trial)));
    detail::RandomTrial t = detail::random_trajectory_trial(rng);
    RunConfig<double> config(t.n, t.reset);
    config.initial = std::move(t.initial);
    config.max_iterations = 3000;
    VerificationReport r = check_p0_monotone(run(config));
    r.prefix_context("trial " + std::to_string(trial) + ": ");
    total.merge(r);
  }
  return total;
}

inline VerificationReport run_steady_suite(long trials, std::uint64_t seed) {
  VerificationReport total;
  total.invariant = "steady-state-invariance";
  total.tolerance = backend_traits<double>::fixed_point_slack();
  for (long trial = 0; trial < trials; ++trial) {
    SeededRng rng(detail::mix_seed(seed, static_cast<std::uint64_t>(trial)));
    const int n = static_cast<int>(rng.integer(1, 5));
    const std::size_t k = rng.integer(2, 4);
    const double log_ratio = rng.uniform(0.1, 2.0);
    ResetDistribution<double> reset = random_reset(rng, k, log_ratio);
    ComputationMarginal<double> marginal = [&] {
      if (rng.uniform() < 0.5) {
        // Steep marginal: every distance >= L, so the state is stationary.
        std::vector<double> p(std::size_t{1} << n);
        p[0] = 1.0;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
          p[i + 1] = p[i] * std::exp(-(log_ratio + rng.uniform(0.0, 1.0)));
        }
        double sum = 0.0;
        for (double x : p) sum += x;
        for (double& x : p) x /= sum;
        return ComputationMarginal<double>(std::move(p));
      }
      return random_sorted_marginal(rng, n);
    }();
    VerificationReport r = check_steady_invariance(tensor_with_reset(marginal, reset), reset);
    r.prefix_context("trial " + std::to_string(trial) + ": ");
    total.merge(r);
  }
  return total;
}

inline VerificationReport run_recurrence_suite(long trials, std::uint64_t seed) {
  VerificationReport total;
  total.invariant = "delta-p0-recurrence";
  total.tolerance = 1e-8;
  for (long trial = 0; trial < trials; ++trial) {
    SeededRng rng(detail::mix_seed(seed, static_cast<std::uint64_t>(trial)));
    const int n = static_cast<int>(rng.integer(1, 4));
    const double epsilon = rng.uniform(0.05, 1.0);
    ResetDistribution<double> reset = make_thermal_reset(epsilon);
    RunConfig<double> config(n, reset);
    if (rng.uniform() < 0.5) {
      // Start within saturation so the leading distance actually saturates.
      ComputationMarginal<double> marginal =
          clamp_distances(random_sorted_marginal(rng, n),
                          reset.log_ratio() * rng.uniform(0.2, 0.9));
      config.initial = tensor_with_reset(marginal, reset);
    }
    config.max_iterations = 50000;
    config.record_mode = RecordMode::full_snapshots;
    Trajectory<double> traj = run(config);
    VerificationReport r = check_delta_p0_recurrence(traj);
    r.prefix_context("trial " + std::to_string(trial) + ": ");
    total.merge(r);
  }
  return total;
}

inline VerificationReport run_oracle_suite(long trials, std::uint64_t seed) {
  VerificationReport total;
  total.invariant = "float-vs-rational";
  total.tolerance = 1e-10;
  for (long trial = 0; trial < trials; ++trial) {
    SeededRng rng(detail::mix_seed(seed, static_cast<std::uint64_t>(trial)));
    const int n = static_cast<int>(rng.integer(1, 4));
    const std::uint64_t denom = rng.integer(3, 9);
    const std::uint64_t num = rng.integer(denom / 2 + 1, denom - 1);
    const ResetDistribution<Rational> reset(
        {Rational(num, denom), Rational(denom - num, denom)});
    const long iterations = static_cast<long>(rng.integer(50, 400));
    VerificationReport r = rational_oracle_compare(n, reset, iterations);
    r.prefix_context("trial " + std::to_string(trial) + ": ");
    total.merge(r);
  }
  return total;
}

enum class VerificationSuite { max_distance, monotone, steady, recurrence, oracle };

inline VerificationReport run_suite(VerificationSuite suite, long trials, std::uint64_t seed) {
  switch (suite) {
    case VerificationSuite::max_distance:
      return run_max_distance_suite(trials, seed);
    case VerificationSuite::monotone:
      return run_monotone_suite(trials, seed);
    case VerificationSuite::steady:
      return run_steady_suite(trials, seed);
    case VerificationSuite::recurrence:
      return run_recurrence_suite(trials, seed);
    case VerificationSuite::oracle:
      return run_oracle_suite(trials, seed);
  }
  throw invalid_parameter("run_suite: unknown suite");
}

}  // namespace hbac
