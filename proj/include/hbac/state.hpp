#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hbac/backend.hpp"
#include "hbac/reset.hpp"

namespace hbac {

namespace detail {

inline std::string format_sum(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace detail

// Checks the invariants of a joint diagonal: length 2^n * reset_dim,
// non-negative entries, unit sum (within the backend tolerance). Returns
// the first violation found, or nullopt when the data is a valid state.
template <class T>
std::optional<std::string> validate_state(int n, std::size_t reset_dim,
                                          const std::vector<T>& probs) {
  if (n < 1 || n > 30) return "qubit count must be in [1, 30]";
  if (reset_dim < 2) return "reset dimension must be >= 2";
  const std::size_t expected = (std::size_t{1} << n) * reset_dim;
  if (probs.size() != expected) {
    return "length violation: expected " + std::to_string(expected) +
           " entries, got " + std::to_string(probs.size());
  }
  T sum(0);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < T(0)) {
      return "entry " + std::to_string(i) + " is negative";
    }
    sum += probs[i];
  }
  const T drift = abs_value(T(sum - T(1)));
  if (drift > backend_traits<T>::sum_tolerance()) {
    return "normalization violation: entries sum to " +
           detail::format_sum(to_double(sum));
  }
  return std::nullopt;
}

// Diagonal of the joint density matrix of n computation qubits and one
// k-level reset system. Entry i*k + m holds computation basis index i
// (qubit 1 is the most significant bit of i) with the reset system at
// level m. Off-diagonal elements play no role in the dynamics and are
// not represented.
template <class T>
class DiagonalState {
 public:
  DiagonalState(int n, std::size_t reset_dim, std::vector<T> probs)
      : n_(n), reset_dim_(reset_dim), probs_(std::move(probs)) {
    if (auto violation = validate_state(n_, reset_dim_, probs_)) {
      throw invalid_parameter("diagonal state: " + *violation);
    }
  }

  // Skips invariant validation. Reserved for the iteration core and other
  // producers whose outputs satisfy the invariants by construction; going
  // through here with unchecked user data voids every downstream contract.
  static DiagonalState unchecked(int n, std::size_t reset_dim, std::vector<T> probs) {
    DiagonalState s;
    s.n_ = n;
    s.reset_dim_ = reset_dim;
    s.probs_ = std::move(probs);
    return s;
  }

  int num_qubits() const { return n_; }
  std::size_t reset_dim() const { return reset_dim_; }
  std::size_t size() const { return probs_.size(); }
  std::size_t marginal_size() const { return probs_.size() / reset_dim_; }
  const std::vector<T>& probs() const { return probs_; }
  const T& operator[](std::size_t idx) const { return probs_[idx]; }

  bool operator==(const DiagonalState&) const = default;

 private:
  DiagonalState() = default;

  int n_ = 0;
  std::size_t reset_dim_ = 0;
  std::vector<T> probs_;
};

// Distribution over the 2^n computation basis states, obtained by tracing
// out the reset system. Kept as its own type so operations that require a
// reduced state cannot silently receive a joint one.
template <class T>
class ComputationMarginal {
 public:
  explicit ComputationMarginal(std::vector<T> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2 || (probs_.size() & (probs_.size() - 1)) != 0) {
      throw invalid_parameter("computation marginal length must be a power of two >= 2");
    }
    T sum(0);
    for (const T& p : probs_) {
      if (p < T(0)) throw invalid_parameter("computation marginal entries must be >= 0");
      sum += p;
    }
    const T drift = abs_value(T(sum - T(1)));
    if (drift > backend_traits<T>::sum_tolerance()) {
      throw invalid_parameter("computation marginal must sum to 1");
    }
  }

  // See DiagonalState::unchecked.
  static ComputationMarginal unchecked(std::vector<T> probs) {
    ComputationMarginal m;
    m.probs_ = std::move(probs);
    return m;
  }

  int num_qubits() const {
    int n = 0;
    for (std::size_t s = probs_.size(); s > 1; s >>= 1) ++n;
    return n;
  }
  std::size_t size() const { return probs_.size(); }
  const std::vector<T>& probs() const { return probs_; }
  const T& operator[](std::size_t idx) const { return probs_[idx]; }

  bool operator==(const ComputationMarginal&) const = default;

 private:
  ComputationMarginal() = default;

  std::vector<T> probs_;
};

// Uniform joint state 1/(2^n k) everywhere: the zero-information start.
template <class T>
DiagonalState<T> maximally_mixed(int n, const ResetDistribution<T>& reset) {
  if (n < 1 || n > 30) throw invalid_parameter("maximally_mixed: qubit count must be in [1, 30]");
  const std::size_t size = (std::size_t{1} << n) * reset.dim();
  // Uniform over computation indices, tensored with the reset equilibrium,
  // would also be a natural start; the fully uniform joint is what a
  // freshly traced-out register looks like and sorts to the same orbit
  // after one iteration.
  std::vector<T> probs(size);
  const T unif = T(T(1) / T(static_cast<unsigned long long>(std::size_t{1} << n)));
  const std::size_t k = reset.dim();
  for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
    for (std::size_t m = 0; m < k; ++m) probs[i * k + m] = T(unif * reset[m]);
  }
  return DiagonalState<T>::unchecked(n, k, std::move(probs));
}

// n computation qubits independently thermalized at polarization epsilon,
// tensored with the reset equilibrium.
inline DiagonalState<double> thermal_product_state(int n, double epsilon,
                                                   const ResetDistribution<double>& reset) {
  if (n < 1 || n > 30) throw invalid_parameter("thermal_product_state: qubit count must be in [1, 30]");
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw invalid_parameter("thermal_product_state: polarization must be finite and >= 0");
  }
  const std::size_t m_size = std::size_t{1} << n;
  const double z = std::exp(epsilon) + std::exp(-epsilon);
  std::vector<double> joint(m_size * reset.dim());
  for (std::size_t i = 0; i < m_size; ++i) {
    const int ones = std::popcount(i);
    const double w = std::exp(epsilon * (n - 2 * ones)) / std::pow(z, n);
    for (std::size_t m = 0; m < reset.dim(); ++m) {
      joint[i * reset.dim() + m] = w * reset[m];
    }
  }
  return DiagonalState<double>(n, reset.dim(), std::move(joint));
}

// Traces out the reset system: p_i = sum_m state[i*k + m].
template <class T>
ComputationMarginal<T> computation_marginal(const DiagonalState<T>& state) {
  const std::size_t k = state.reset_dim();
  std::vector<T> p(state.marginal_size(), T(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t m = 0; m < k; ++m) p[i] += state[i * k + m];
  }
  return ComputationMarginal<T>::unchecked(std::move(p));
}

// Product state marginal (x) reset: the form every reset step produces.
template <class T>
DiagonalState<T> tensor_with_reset(const ComputationMarginal<T>& marginal,
                                   const ResetDistribution<T>& reset) {
  const std::size_t k = reset.dim();
  std::vector<T> joint(marginal.size() * k);
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    for (std::size_t m = 0; m < k; ++m) joint[i * k + m] = T(marginal[i] * reset[m]);
  }
  return DiagonalState<T>::unchecked(marginal.num_qubits(), k, std::move(joint));
}

// Polarization of computation qubit `qubit` (1-indexed, qubit 1 is the
// most significant): eps_j = log(P[bit j = 0] / P[bit j = 1]) / 2, summed
// over the joint diagonal directly. Diverges (throws) when either
// single-qubit marginal probability is zero.
template <class T>
double qubit_polarization(const DiagonalState<T>& state, int qubit) {
  if (qubit < 1 || qubit > state.num_qubits()) {
    throw invalid_parameter("qubit_polarization: qubit index out of range");
  }
  const int shift = state.num_qubits() - qubit;
  const std::size_t k = state.reset_dim();
  T p_zero(0), p_one(0);
  for (std::size_t idx = 0; idx < state.size(); ++idx) {
    const std::size_t comp = idx / k;
    if ((comp >> shift) & std::size_t{1}) {
      p_one += state[idx];
    } else {
      p_zero += state[idx];
    }
  }
  if (!(p_zero > T(0)) || !(p_one > T(0))) {
    throw singular_polarization("qubit_polarization: a qubit marginal probability is zero");
  }
  return 0.5 * std::log(to_double(T(p_zero / p_one)));
}

// Pairwise distances d_i = log(p_i / p_{i+1}) between consecutive marginal
// entries. Requires strictly positive entries.
template <class T>
std::vector<double> pairwise_distances(const ComputationMarginal<T>& marginal) {
  std::vector<double> d;
  d.reserve(marginal.size() - 1);
  for (std::size_t i = 0; i + 1 < marginal.size(); ++i) {
    if (!(marginal[i] > T(0)) || !(marginal[i + 1] > T(0))) {
      throw singular_distance("pairwise_distances: marginal entries must be > 0");
    }
    d.push_back(std::log(to_double(T(marginal[i] / marginal[i + 1]))));
  }
  return d;
}

}  // namespace hbac
